from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from portfix import diag
from portfix.diag import CARET_LINE_RE, FormattedDiagnostic, RefCheckBackend
from portfix.errors import OracleError, ParseFailure, PromptConstructionError
from portfix.fix import (
    MAX_EDIT_RATIO,
    PLACEHOLDER_RE,
    RADIUS,
    ModelEquivalenceOracle,
    build_diagnostics_prompt,
    build_equivalence_prompt,
    build_usage_pair_prompt,
    line_diff,
    parse_candidate_answer,
    parse_refined_function,
    validate_edit,
)
from portfix.index import FunctionRecord, apply_patch, index_texts
from portfix.match import MatcherConfig, UsagePair, collect_usage_pairs, similarity
from portfix.models import ReplayBackend, prompt_digest


class First:
    def choose(self, source, candidates):
        return 0


def alloc_usage_pairs(case):
    return collect_usage_pairs(
        "ALLOC_ONE", case.src_index, case.tgt_index, MatcherConfig(), First(), exclude_names=("ff_create_visited",)
    )


def check_rendered(text):
    assert text.strip()
    assert not PLACEHOLDER_RE.search(text)
    assert not CARET_LINE_RE.search(text)


def test_usage_pair_prompt_structure(alloc_case):
    pairs = alloc_usage_pairs(alloc_case)
    env = build_usage_pair_prompt(alloc_case.ported_function, "ALLOC_ONE", pairs)
    t = env.text
    check_rendered(t)
    assert env.kind == "usage_pairs" and env.expected_form == "function_block"
    s1, s2, s3 = (t.index(h) for h in ("# Section 1", "# Section 2", "# Section 3"))
    assert s1 < s2 < s3
    src_pos = t.index(pairs[0].source_function.text.rstrip())
    tgt_pos = t.index(pairs[0].target_function.text.rstrip())
    assert s1 < src_pos < tgt_pos < s2
    assert s2 < t.index(alloc_case.ported_function.text.rstrip()) < s3
    assert "`ALLOC_ONE`" in t[s2:s3]
    assert env.digest == prompt_digest(t)


def test_usage_pair_prompt_identical_pair_and_order(alloc_case):
    fn = alloc_case.src_index.function("ff_create_stack_element")
    same = UsagePair("ALLOC_ONE", fn, fn, similarity(fn, fn), 2 * len(fn.token_cache.body))
    env = build_usage_pair_prompt(alloc_case.ported_function, "ALLOC_ONE", [same])
    assert env.text.count(fn.text.rstrip()) == 2
    others = [f for f in alloc_case.src_index.all_functions()][:3]
    pairs = [UsagePair("X", f, f, similarity(f, f), k) for k, f in enumerate(others)]
    t = build_usage_pair_prompt(alloc_case.ported_function, "X", pairs).text
    positions = [t.index(f"## Example {k}") for k in (1, 2, 3)]
    assert positions == sorted(positions)
    assert [t.index(f.text.rstrip()) for f in others] == sorted(t.index(f.text.rstrip()) for f in others)


def test_prompt_construction_errors(alloc_case):
    with pytest.raises(PromptConstructionError):
        build_usage_pair_prompt(alloc_case.ported_function, "ALLOC_ONE", [])
    with pytest.raises(PromptConstructionError):
        build_diagnostics_prompt(alloc_case.ported_function, [])
    with pytest.raises(PromptConstructionError):
        build_equivalence_prompt(alloc_case.ported_function, [])


def test_diagnostics_prompt_shape(scriptinfo_case):
    idx = apply_patch(scriptinfo_case.tgt_index, scriptinfo_case.ported_function)
    fn = idx.function("f_getscriptinfo")
    diags = diag.in_scope(diag.compile(idx, RefCheckBackend(), fn))
    formatted = [diag.format_for_llm(d, fn, idx) for d in diags]
    env = build_diagnostics_prompt(fn, formatted)
    t = env.text
    check_rendered(t)
    assert t.count("## Error ") == len(formatted) == 3
    assert t.index("## Error 3") < t.index("# Function") < t.index("# Instructions")
    for f in formatted:
        assert f"Buggy line: {f.buggy_line_text.strip()}" in t
        assert f"Buggy token: {f.buggy_token}" in t
    assert fn.text.rstrip() in t
    assert "entire corrected function" in t


def test_diagnostics_prompt_two_on_one_line(scriptinfo_case):
    fn = scriptinfo_case.ported_function
    a = FormattedDiagnostic("x = f(a, b);", "a", "first")
    b = FormattedDiagnostic("x = f(a, b);", "b", "second")
    t = build_diagnostics_prompt(fn, [a, b]).text
    assert t.count("Buggy line: x = f(a, b);") == 2
    single = build_diagnostics_prompt(fn, [a]).text
    assert single.count("## Error ") == 1


@settings(max_examples=80, deadline=None)
@given(
    st.text(st.characters(blacklist_categories=("Cs",)), max_size=40),
    st.text(st.characters(blacklist_categories=("Cs",)), max_size=40),
)
def test_prompts_have_no_residue(line, explanation):
    fn = FunctionRecord.from_text("int f(int x)\n{\n  return x;\n}\n", "a.c")
    d = diag.format_for_llm(diag.Diagnostic("a.c", 3, 3, explanation or "msg"), fn, index_texts({"a.c": fn.text}))
    env = build_diagnostics_prompt(fn, [d, FormattedDiagnostic(line, "x", "m")])
    assert not PLACEHOLDER_RE.search(env.text.replace(line, ""))
    assert not CARET_LINE_RE.search(env.text.replace(line, ""))
    eq = build_equivalence_prompt(fn, [fn, fn])
    check_rendered(eq.text)


def test_parse_refined_function(scriptinfo_case):
    orig = scriptinfo_case.ported_function
    truth = scriptinfo_case.ground_truth.text
    rec = parse_refined_function(f"Here you go:\n```c\n{truth}```\nDone.", orig)
    assert rec.text.strip() == truth.strip()
    assert rec.span[0] == orig.span[0] and rec.start_line == orig.start_line and rec.file == orig.file
    warnings = []
    rec2 = parse_refined_function(f"```c\n{truth}```\n```c\nint other(void)\n{{\n}}\n```", orig, warnings)
    assert rec2.text == rec.text and warnings


@pytest.mark.parametrize(
    "response",
    [
        "I cannot help with that.",
        "```c\nint unrelated_helper(void)\n{\n  return 0;\n}\n```",
        "```c\nint a(void)\n{\n}\nint b(void)\n{\n}\n```",
        "```c\nnot c at all {{{\n```",
    ],
)
def test_parse_failures(scriptinfo_case, response):
    with pytest.raises(ParseFailure):
        parse_refined_function(response, scriptinfo_case.ported_function)


def test_candidate_answers():
    assert parse_candidate_answer("2", 3) == 1
    assert parse_candidate_answer("Candidate 1 is equivalent.", 3) == 0
    assert parse_candidate_answer("None", 3) is None
    for bad in ("", "maybe", "7"):
        with pytest.raises(OracleError):
            parse_candidate_answer(bad, 3)


def test_equivalence_oracle_retry(alloc_case):
    src = alloc_case.src_index.function("ff_create_stack_element")
    cands = [alloc_case.tgt_index.function("ff_create_stack_element")]
    prompt = build_equivalence_prompt(src, cands).text
    from portfix.fix import ANSWER_REMINDER

    backend = ReplayBackend(records=[
        {"digest": prompt_digest(prompt), "response": "hmm"},
        {"digest": prompt_digest(prompt + ANSWER_REMINDER), "response": "1"},
    ])
    assert ModelEquivalenceOracle(backend).choose(src, cands) == 0
    both_bad = ReplayBackend(records=[
        {"digest": prompt_digest(prompt), "response": "hmm"},
        {"digest": prompt_digest(prompt + ANSWER_REMINDER), "response": "still unsure"},
    ])
    with pytest.raises(OracleError):
        ModelEquivalenceOracle(both_bad).choose(src, cands)


def error_lines(case):
    idx = apply_patch(case.tgt_index, case.ported_function)
    fn = idx.function(case.ported_function.name, case.ported_function.file)
    return idx, fn, {d.line for d in diag.in_scope(diag.compile(idx, RefCheckBackend(), fn))}


def test_validate_ground_truth_accepted(scriptinfo_case):
    idx, fn, lines = error_lines(scriptinfo_case)
    truth = parse_refined_function(f"```c\n{scriptinfo_case.ground_truth.text}```", fn)
    v = validate_edit(fn, truth, lines, scriptinfo_case.tgt_index)
    assert v.accepted, v.reasons
    assert v.reasons == ()
    assert v.diff_summary["changed_lines"] <= MAX_EDIT_RATIO * v.diff_summary["original_lines"]


def test_validate_rejects_unknown_identifier(scriptinfo_case):
    idx, fn, lines = error_lines(scriptinfo_case)
    bad_text = fn.text.replace("rettv->v_type = VAR_NUMBER;", "rettv->v_type = VAR_NUMBER;\n  frobnicate_unknown();")
    bad = parse_refined_function(f"```c\n{bad_text}```", fn)
    v = validate_edit(fn, bad, lines, scriptinfo_case.tgt_index)
    assert not v.accepted
    assert "new_undefined_identifier" in v.reasons and "frobnicate_unknown" in v.undefined


def test_validate_rejects_excessive(scriptinfo_case):
    idx, fn, lines = error_lines(scriptinfo_case)
    body = "\n".join(f"  rettv->vval.v_number = {k};" for k in range(30))
    bad = parse_refined_function(f"```c\n{fn.declaration.strip()}\n{{\n{body}\n}}\n```", fn)
    v = validate_edit(fn, bad, lines, scriptinfo_case.tgt_index)
    assert "excessive_edit" in v.reasons


def test_validate_rejects_unrelated(scriptinfo_case):
    idx, fn, lines = error_lines(scriptinfo_case)
    bad_text = fn.text.replace("rettv->vval.v_number = sid + filterpat;", "rettv->vval.v_number = sid - filterpat;")
    bad = parse_refined_function(f"```c\n{bad_text}```", fn)
    far = {fn.start_line + 15}  # a bare `return;`, no shared identifiers
    v = validate_edit(fn, bad, far, scriptinfo_case.tgt_index)
    assert v.reasons == ("unrelated_edit",)
    near_line = fn.start_line + fn.text.split("\n").index("  rettv->vval.v_number = sid + filterpat;")
    assert validate_edit(fn, bad, {near_line - RADIUS}, scriptinfo_case.tgt_index).accepted
    assert not validate_edit(fn, bad, {near_line - RADIUS - 1}, scriptinfo_case.tgt_index).accepted


def test_validate_shared_identifier_escape(scriptinfo_case):
    """A declaration edit far from the call is allowed if it shares an identifier."""
    idx, fn, lines = error_lines(scriptinfo_case)
    text = fn.text.replace("int filterpat = false;", "bool filterpat = false;")
    text = text.replace("rettv->vval.v_number = sid + filterpat;", "rettv->vval.v_number = sid + (int)filterpat;")
    ref = parse_refined_function(f"```c\n{text}```", fn)
    last = fn.start_line + fn.text.split("\n").index("  rettv->vval.v_number = sid + filterpat;")
    assert validate_edit(fn, ref, {last}, scriptinfo_case.tgt_index).accepted


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["  x++;", "  y = x;", "  g(x);", "  return;"]), min_size=1, max_size=8),
       st.sets(st.integers(1, 20), max_size=3))
def test_validate_identity_always_accepted(lines, errs):
    text = "void f(int x, int y)\n{\n" + "\n".join(lines) + "\n}\n"
    idx = index_texts({"a.c": text + "void g(int v)\n{\n}\n"})
    fn = idx.function("f")
    v = validate_edit(fn, fn, errs, idx)
    assert v.accepted and v.diff_summary["changed_lines"] == 0


def test_line_diff_counts():
    count, changes = line_diff("a\nb\nc\n", "a\nB\nc\nd\n")
    assert count == 2
    assert [(a, o, n) for a, o, n in changes][0][0] == 1
