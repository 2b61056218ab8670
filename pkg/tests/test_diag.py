from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from portfix import diag
from portfix.diag import (
    TYPE1,
    TYPE2,
    OTHER,
    Diagnostic,
    RawDiagnostic,
    RefCheckBackend,
    classify,
    format_for_llm,
    get_nonexist_identifier_errs,
    CARET_LINE_RE,
    parse_json_diagnostics,
    suggest_identifier,
)
from portfix.errors import BackendFailure, FormatError
from portfix.index import apply_patch, index_texts


def patched_diags(case):
    idx = apply_patch(case.tgt_index, case.ported_function)
    fn = idx.function(case.ported_function.name, case.ported_function.file)
    return idx, fn, diag.compile(idx, RefCheckBackend(), fn)


def test_scriptinfo_diagnostics(scriptinfo_case):
    idx, fn, diags = patched_diags(scriptinfo_case)
    scoped = diag.in_scope(diags)
    got = [(d.kind, d.subject_identifier) for d in scoped]
    assert got == [
        (TYPE2, "dict_find"),
        (TYPE1, "tv_get_number_chk"),
        (TYPE2, "e_invalid_value_for_argument_str_str"),
    ]
    assert "implicit declaration of function 'dict_find'" in scoped[0].message
    assert scoped[1].message == "passing argument 2 of 'tv_get_number_chk' from incompatible pointer type"
    assert scoped[1].notes[0] == "expected 'bool * const' but argument is of type 'int *'"
    # ordered by (file, line, column)
    keys = [(d.file, d.line, d.column) for d in diags]
    assert keys == sorted(keys)


def test_clean_workspace(scriptinfo_case):
    idx = apply_patch(scriptinfo_case.tgt_index, scriptinfo_case.ground_truth)
    fn = idx.function("f_getscriptinfo")
    assert diag.in_scope(diag.compile(idx, RefCheckBackend(), fn)) == []


def test_nonexist_filter(scriptinfo_case):
    _, _, diags = patched_diags(scriptinfo_case)
    errs = get_nonexist_identifier_errs(diag.in_scope(diags))
    assert [d.subject_identifier for d in errs] == ["dict_find", "e_invalid_value_for_argument_str_str"]
    assert get_nonexist_identifier_errs([d for d in diags if d.kind == TYPE1]) == []


def test_nonexist_dedup_first_wins():
    a = Diagnostic("f.c", 3, 1, "'x' undeclared", kind=TYPE2, subject_identifier="x")
    b = Diagnostic("f.c", 9, 1, "'x' undeclared", kind=TYPE2, subject_identifier="x")
    assert get_nonexist_identifier_errs([a, b]) == [a]


def test_classification_rules(mini_texts):
    idx = index_texts(mini_texts)

    def kind(msg):
        return classify(RawDiagnostic("use.c", 5, 1, msg), idx)

    d = kind("implicit declaration of function 'dict_find'")
    assert (d.kind, d.subject_identifier) == (TYPE2, "dict_find")
    assert kind("'e_gone' undeclared (first use in this function)").kind == TYPE2
    assert kind("passing argument 2 of 'get_value' from incompatible pointer type").kind == TYPE1
    assert kind("too many arguments to function 'get_value'").kind == TYPE1
    # an "undeclared" identifier that is defined is not Type-2
    assert kind("'LIMIT' undeclared").kind == OTHER
    # Type-1 requires the subject to exist
    assert kind("too few arguments to function 'ghost'").kind == OTHER
    assert kind("expected ';' before '}' token").kind == OTHER
    assert classify(RawDiagnostic(None, None, None, "linker trouble"), idx).kind == OTHER


def test_classification_soundness_on_suite(suite):
    for case in suite[:12]:
        idx, _, diags = patched_diags(case)
        for d in diags:
            if d.kind == TYPE2:
                assert not idx.definitions.get(d.subject_identifier)
            elif d.kind == TYPE1:
                assert idx.definitions.get(d.subject_identifier)


def test_suggestion_rule(mini_texts):
    idx = index_texts(mini_texts)
    assert suggest_identifier("get_valu", idx, True) == "get_value"
    assert suggest_identifier("fetch_value", idx, True) is None
    assert suggest_identifier("LIMT", idx, False) == "LIMIT"  # exactly 0.8
    assert suggest_identifier("LIM", idx, False) is None  # 0.6
    assert suggest_identifier("LIMITS", idx, False) == "LIMIT"
    # a call is never pointed at an object-like identifier
    assert suggest_identifier("LIMITS", idx, True) is None


def test_fixit_in_message(mini_texts):
    texts = dict(mini_texts)
    texts["use.c"] = texts["use.c"].replace("get_value(", "get_valu(")
    idx = index_texts(texts)
    diags = diag.compile(idx, RefCheckBackend(), idx.function("total"))
    d = next(d for d in diags if d.kind == TYPE2)
    assert d.fixit == "get_value"
    assert "did you mean 'get_value'" in d.message


def test_arity_mismatch(mini_texts):
    texts = dict(mini_texts)
    texts["use.c"] = texts["use.c"].replace("get_value(&items[i], &error)", "get_value(&items[i])")
    idx = index_texts(texts)
    diags = diag.in_scope(diag.compile(idx, RefCheckBackend(), idx.function("total")))
    assert [(d.kind, d.message) for d in diags] == [(TYPE1, "too few arguments to function 'get_value'")]
    assert diags[0].notes[0].startswith("'get_value' declared here:")


def test_out_of_scope_flagged(mini_texts):
    texts = dict(mini_texts)
    texts["api.c"] = texts["api.c"].replace("return strdup(base);", "return missing_fn(base);")
    idx = index_texts(texts)
    diags = diag.compile(idx, RefCheckBackend(), idx.function("get_value"))
    assert diags and all(d.out_of_scope for d in diags)
    assert diag.in_scope(diags) == []


def test_compile_deterministic(scriptinfo_case):
    assert patched_diags(scriptinfo_case)[2] == patched_diags(scriptinfo_case)[2]


def test_format_pointer_mismatch(scriptinfo_case):
    idx, fn, diags = patched_diags(scriptinfo_case)
    d = next(d for d in diags if d.kind == TYPE1)
    f = format_for_llm(d, fn, idx)
    assert f.buggy_line_text == idx.file(fn.file).line_text(d.line)
    assert "tv_get_number_chk(" in f.buggy_line_text
    assert f.buggy_token == "error"
    assert f.explanation.split("\n") == [d.message, *d.notes]


def test_format_single_token_line():
    idx = index_texts({"a.c": "void f(void)\n{\n  frob;\n}\n"})
    fn = idx.function("f")
    d = Diagnostic("a.c", 3, 1, "'frob' undeclared", kind=TYPE2, subject_identifier="frob")
    f = format_for_llm(d, fn, idx)
    assert f.buggy_token == "frob"


def test_format_notes_order():
    idx = index_texts({"a.c": "void f(void)\n{\n  g(1);\n}\n"})
    d = Diagnostic("a.c", 3, 3, "msg", notes=("first", "second"))
    assert format_for_llm(d, idx.function("f"), idx).explanation == "msg\nfirst\nsecond"


def test_format_errors():
    idx = index_texts({"a.c": "void f(void)\n{\n}\n"})
    fn = idx.function("f")
    with pytest.raises(FormatError):
        format_for_llm(Diagnostic("b.c", 1, 1, "x"), fn, idx)
    with pytest.raises(FormatError):
        format_for_llm(Diagnostic("a.c", 99, 1, "x"), fn, idx)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["  ^", "^~~~", "    ^~~ ", "x = y;", "call(a, b);", "|"]), min_size=1, max_size=6))
def test_format_never_emits_caret_lines(lines):
    body = "\n".join("  " + ln for ln in lines)
    text = "void f(void)\n{\n" + body + "\n}\n"
    idx = index_texts({"a.c": text})
    fn = idx.function("f")
    for line in range(3, 3 + len(lines)):
        f = format_for_llm(Diagnostic("a.c", line, 3, "msg\n  ^~~"), fn, idx)
        assert not CARET_LINE_RE.search(f.explanation)
        assert f.explanation == "msg"


GCC_JSON = [
    {
        "kind": "error",
        "message": "implicit declaration of function 'dict_find'; did you mean 'tv_dict_find'?",
        "locations": [{"caret": {"file": "/work/src/a.c", "line": 4, "column": 7}}],
        "fixits": [{"string": "tv_dict_find"}],
        "children": [{"kind": "note", "message": "declared here"}],
        "option": "-Wimplicit-function-declaration",
    },
    {"kind": "warning", "message": "unused variable 'x'", "locations": []},
    {"kind": "warning", "message": "passing argument 1 of 'f' from incompatible pointer type", "locations": [
        {"caret": {"file": "a.c", "line": 2, "column": 3}}]},
    {"kind": "error", "message": "no location"},
]


def test_parse_json_diagnostics():
    raws = parse_json_diagnostics(GCC_JSON, "/work")
    assert [(r.file, r.line, r.column) for r in raws] == [("src/a.c", 4, 7), ("a.c", 2, 3), (None, None, None)]
    assert raws[0].fixit == "tv_dict_find" and raws[0].notes == ("declared here",)
    assert parse_json_diagnostics({"not": "a list"}) == []


def test_external_backend_failure(mini_texts):
    idx = index_texts(mini_texts)
    bad = diag.ExternalBackend(command="definitely-not-a-compiler-xyz {file}")
    with pytest.raises(BackendFailure):
        bad.check(idx, "use.c")
    noisy = diag.ExternalBackend(command="sh -c 'echo garbage >&2; exit 1' {file}")
    with pytest.raises(BackendFailure):
        noisy.check(idx, "use.c")
