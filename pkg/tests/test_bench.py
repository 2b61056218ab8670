from __future__ import annotations

import filecmp
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from portfix import diag
from portfix.bench.baselines import cs_baseline, cs_plus_baseline
from portfix.bench.dataset import (
    CASSETTE,
    MANIFEST,
    SUITE_PATH,
    load_case,
    load_suite,
    manifest_of,
    save_case,
    write_suite,
)
from portfix.bench.evaluate import CS, CS_PLUS, FULL, evaluate, run_strategy, score_case
from portfix.bench.faults import (
    DROP_CAST,
    KINDS,
    PARAM_TYPE,
    RENAME,
    STRUCTURAL,
    FaultSpec,
    InjectedFault,
    PortingCase,
    aligned,
    inject,
)
from portfix.bench.generate import generate_case, perturb
from portfix.bench.golden import SCRIPTINFO_SRC
from portfix.bench.simulate import SimulatedModel
from portfix.diag import TYPE1, TYPE2, RefCheckBackend
from portfix.errors import DatasetError, InvalidFaultSpec
from portfix.index import FunctionRecord, apply_patch, index_texts
from portfix.lexer import normalized_tokens


@pytest.fixture(scope="module")
def base():
    return index_texts(SCRIPTINFO_SRC, root="<src>")


def scoped(case, fn=None):
    fn = fn or case.ported_function
    idx = apply_patch(case.tgt_index, fn)
    return diag.in_scope(diag.compile(idx, RefCheckBackend(), idx.function(fn.name, fn.file)))


def rename(old, new):
    return FaultSpec(RENAME, old, {"new_name": new})


def test_inject_rename(base):
    case = inject(base, [rename("dict_find", "tv_dict_find")], function="f_getscriptinfo")
    assert "dict_find(" in case.ported_function.text
    assert "tv_dict_find" in case.tgt_index.definitions and "dict_find" not in case.tgt_index.definitions
    assert [(d.kind, d.subject_identifier) for d in scoped(case)] == [(TYPE2, "dict_find")]
    assert scoped(case, case.ground_truth) == []
    assert case.faults[0].lines == (10,)


def test_inject_param_type(base):
    spec = FaultSpec(PARAM_TYPE, "tv_get_number_chk", {"param": 2, "old_type": "int", "new_type": "bool"})
    case = inject(base, [spec], function="f_getscriptinfo")
    assert [(d.kind, d.subject_identifier) for d in scoped(case)] == [(TYPE1, "tv_get_number_chk")]
    assert "bool error" in case.ground_truth.text


def test_inject_empty_specs(base):
    case = inject(base, [], function="f_getscriptinfo")
    assert case.ported_function.text == case.ground_truth.text
    assert scoped(case) == []


@pytest.mark.parametrize(
    "spec",
    [
        rename("no_such_identifier", "x_new"),
        rename("dict_find", "tv_get_number_chk"),
        FaultSpec(PARAM_TYPE, "tv_get_number_chk", {"param": 2, "old_type": "double", "new_type": "bool"}),
        FaultSpec(STRUCTURAL, "dict_find", {"template": "x($1)"}),
    ],
)
def test_invalid_specs(base, spec):
    with pytest.raises(InvalidFaultSpec):
        inject(base, [spec], function="f_getscriptinfo")


def test_unknown_kind():
    with pytest.raises(InvalidFaultSpec):
        FaultSpec("teleport", "x")


def test_spec_round_trip():
    f = InjectedFault(rename("a", "b"), (1, 2), ("a",))
    assert InjectedFault.from_dict(json.loads(json.dumps(f.to_dict()))) == f
    assert rename("a", "b").expected_type == TYPE2
    assert FaultSpec(DROP_CAST, "x", {}).expected_type == TYPE1


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 40))
def test_generation_deterministic(seed, index):
    a, b = generate_case(seed, index), generate_case(seed, index)
    assert manifest_of(a) == manifest_of(b)
    assert [f.text for f in a.tgt_index.files] == [f.text for f in b.tgt_index.files]


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 1000))
def test_inject_deterministic_seeded_choice(seed):
    specs = [rename("e_invalid_value_for_argument_str_str", "e_invargNval")]
    b = index_texts(SCRIPTINFO_SRC, root="<src>")
    x, y = inject(b, specs, seed=seed), inject(b, specs, seed=seed)
    assert x.ported_function == y.ported_function and x.faults == y.faults


def test_shipped_suite_shape(suite):
    synthetic = [c for c in suite if c.name.startswith("synthetic_")]
    golden = [c for c in suite if c.name.startswith("golden_")]
    assert len(synthetic) >= 40 and len(golden) == 2
    kinds = {f.spec.kind for c in synthetic for f in c.faults}
    assert kinds == set(KINDS)
    for c in suite:
        assert c.cassette is not None
        assert normalized_tokens(c.ported_function.text) != normalized_tokens(c.ground_truth.text)


def test_shipped_suite_invariants(suite):
    for case in suite:
        assert scoped(case, case.ground_truth) == [], case.name
        diags = scoped(case)
        assert len(diags) >= 1
        named = {d.subject_identifier for d in diags}
        for f in case.faults:
            # a fault on a call that another fault renamed only shows after that rename is fixed
            masked = f.spec.identifier in named and not set(f.subjects) & named
            assert set(f.subjects) <= named or masked, case.name


def test_cs_examples(base):
    near = inject(base, [rename("e_invalid_value_for_argument_str_str", "e_invalid_value_for_argument_str_strs")],
                  function="f_getscriptinfo")
    assert normalized_tokens(cs_baseline(near).text) == normalized_tokens(near.ground_truth.text)
    far = inject(base, [rename("e_invalid_value_for_argument_str_str", "e_invargNval")], function="f_getscriptinfo")
    assert cs_baseline(far).text == far.ported_function.text


def test_cs_structural_unchanged(alloc_case):
    assert cs_baseline(alloc_case).text == alloc_case.ported_function.text
    assert cs_plus_baseline(alloc_case).text == alloc_case.ported_function.text


def test_cs_plus_maps_renamed_function(base):
    case = inject(base, [rename("dict_find", "tv_dict_find")], function="f_getscriptinfo")
    assert "dict_find(" in cs_baseline(case).text and "tv_dict_find" not in cs_baseline(case).text
    assert normalized_tokens(cs_plus_baseline(case).text) == normalized_tokens(case.ground_truth.text)


def test_cs_plus_diverged_twin_mismaps():
    src = index_texts({
        "a.c": "int fetch(int a)\n{\n  return a + 1;\n}\n\n"
               "int use(int a)\n{\n  return fetch(a);\n}\n",
    })
    tgt = index_texts({
        "a.c": "int obtain(int a)\n{\n  int r = a;\n  r = r * 3;\n  r = r - 2;\n  return r + 1;\n}\n\n"
               "int fetch_all(int a)\n{\n  return a + 1;\n}\n\n"
               "int use(int a)\n{\n  return 0;\n}\n",
    })
    ported = FunctionRecord.from_text("int use(int a)\n{\n  return fetch(a);\n}\n", "a.c")
    truth = FunctionRecord.from_text("int use(int a)\n{\n  return obtain(a);\n}\n", "a.c")
    case = PortingCase("diverged", src, tgt, ported, truth, [InjectedFault(rename("fetch", "obtain"), (2,), ("fetch",))])
    refined = cs_plus_baseline(case)
    assert "fetch_all" in refined.text
    assert score_case(case, refined) == (False, [False])


def test_aligned():
    gt = ["a;", "b;", "c;"]
    assert aligned(gt, ["a;", "b ;", "c;"], [1])
    assert not aligned(gt, ["a;", "x;", "c;"], [1])
    assert aligned(gt, ["a;", "x;", "c;"], [0, 2])


def test_evaluate_trivial(alloc_case):
    assert evaluate([alloc_case], []).scores == {}
    report = evaluate([alloc_case], [FULL], lambda c: SimulatedModel())
    s = report.scores[FULL]
    assert (s.patch_correct, s.patch_total, s.t2_correct, s.t2_total) == (1, 1, 1, 1)
    assert "1/1 (100.0%)" in report.table()


def test_evaluate_unknown_strategy(alloc_case):
    with pytest.raises(ValueError):
        evaluate([alloc_case], ["magic"])


def test_patch_level_implies_fault_level(suite):
    report = evaluate(suite[:10], [CS, CS_PLUS])
    for o in report.outcomes:
        if o.patch_correct:
            assert all(o.faults_fixed)
    for s in report.scores.values():
        assert s.patch_correct <= s.patch_total
        assert s.t1_correct <= s.t1_total and s.t2_correct <= s.t2_total


def test_run_strategy_trace(alloc_case):
    out = run_strategy(alloc_case, FULL, lambda c: SimulatedModel())
    assert out.status == "clean" and out.trace


def test_dataset_round_trip(tmp_path, alloc_case):
    d = save_case(alloc_case, tmp_path)
    assert (d / MANIFEST).exists() and (d / "src").is_dir() and (d / "tgt").is_dir()
    back = load_case(d)
    assert back.ported_function.text == alloc_case.ported_function.text
    assert back.ground_truth.text == alloc_case.ground_truth.text
    assert back.faults == alloc_case.faults
    assert sorted(f.path for f in back.tgt_index.files) == sorted(f.path for f in alloc_case.tgt_index.files)
    assert back.cassette is None


def test_dataset_errors(tmp_path, alloc_case):
    with pytest.raises(DatasetError):
        load_suite(tmp_path / "missing")
    (tmp_path / "empty").mkdir()
    with pytest.raises(DatasetError):
        load_suite(tmp_path / "empty")
    d = save_case(alloc_case, tmp_path / "ds")
    (d / MANIFEST).write_text("{ not json")
    with pytest.raises(DatasetError, match="golden_alloc"):
        load_suite(tmp_path / "ds")
    (d / MANIFEST).write_text(json.dumps({"name": "golden_alloc", "function": "x"}))
    with pytest.raises(DatasetError, match="golden_alloc"):
        load_case(d)


def test_regeneration_is_byte_identical(tmp_path):
    cases = [generate_case(7, k) for k in (0, 3)]
    write_suite(tmp_path, cases, SimulatedModel())
    for c in cases:
        cmp = filecmp.dircmp(tmp_path / c.name, SUITE_PATH / c.name)
        assert not cmp.diff_files and not cmp.left_only and not cmp.right_only
        for sub in ("src", "tgt"):
            sc = filecmp.dircmp(tmp_path / c.name / sub, SUITE_PATH / c.name / sub)
            assert not sc.diff_files and not sc.left_only and not sc.right_only
        same = (tmp_path / c.name / CASSETTE).read_bytes() == (SUITE_PATH / c.name / CASSETTE).read_bytes()
        assert same


def test_perturb_rate_and_parse():
    import random

    fn = FunctionRecord.from_text("int f(int a, int b)\n{\n  int c = a + b;\n  return c * 2;\n}\n")
    out = perturb(fn.text, 0.2, random.Random(1))
    assert FunctionRecord.from_text(out).text
    changed = sum(1 for x, y in zip(normalized_tokens(fn.text), normalized_tokens(out)) if x != y)
    idents = [t for t in normalized_tokens(fn.text) if t[0].isalnum() or t[0] == "_"]
    assert changed == int(0.2 * len(idents))
