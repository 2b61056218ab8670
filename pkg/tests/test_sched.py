from __future__ import annotations

import pytest

from portfix import diag
from portfix.bench.dataset import SUITE_PATH
from portfix.bench.simulate import GarbageModel, SimulatedModel
from portfix.diag import RefCheckBackend
from portfix.errors import BackendFailure, PatchTargetMissing
from portfix.fix import MAX_EDIT_RATIO
from portfix.index import FunctionRecord, apply_patch, index_texts
from portfix.lexer import normalized_tokens
from portfix.models import ReplayBackend
from portfix.sched import (
    CLEAN,
    EXHAUSTED,
    NO_PROGRESS,
    RefinementRequest,
    explain,
    refine,
)


def request(case, model, **kw):
    return RefinementRequest(case.ported_function, case.tgt_index, case.src_index, model, **kw)


def replay(name):
    return ReplayBackend(SUITE_PATH / name / "cassette.jsonl")


def check_trace_invariants(result, max_iter=5):
    trace = result.trace
    assert result.iterations_used <= max_iter
    compiled = [e for e in trace if e.action == "compiled"]
    assert len(compiled) == result.iterations_used + 1
    for k, e in enumerate(trace):
        if e.action in ("usage_pair_fix", "diagnostics_fix"):
            assert trace[k + 1].action == "validation"
    iterations = [e.iteration for e in trace]
    assert iterations == sorted(iterations)
    classified = {e.iteration: e for e in trace if e.action == "classified"}
    for it in range(1, result.iterations_used + 1):
        if classified[it - 1].payload["type2"]:
            assert not any(e.action == "diagnostics_fix" and e.iteration == it for e in trace)
    for e in trace:
        if e.action == "validation" and e.payload["verdict"] == "accepted":
            s = e.payload["diff_summary"]
            assert s["changed_lines"] <= MAX_EDIT_RATIO * s["original_lines"]


def test_scriptinfo_refined_to_ground_truth(scriptinfo_case):
    result = refine(request(scriptinfo_case, replay("golden_scriptinfo")))
    assert result.status == CLEAN
    assert result.iterations_used <= 3
    text = result.refined_function.text
    assert "tv_dict_find" in text and "(char_u *)" not in text
    assert "bool error" in text and "e_invargNval" in text
    assert normalized_tokens(text) == normalized_tokens(scriptinfo_case.ground_truth.text)
    check_trace_invariants(result)
    actions = [e.action for e in result.trace]
    assert "usage_pair_fix" in actions and "diagnostics_fix" in actions


def test_alloc_refined_to_ground_truth(alloc_case):
    result = refine(request(alloc_case, replay("golden_alloc")))
    assert result.status == CLEAN
    assert normalized_tokens(result.refined_function.text) == normalized_tokens(alloc_case.ground_truth.text)
    fix = next(e for e in result.trace if e.action == "usage_pair_fix")
    assert fix.payload["identifier"] == "ALLOC_ONE"
    assert fix.payload["pairs"][0]["source_function"]["name"] == "ff_create_stack_element"


def test_already_clean(scriptinfo_case):
    req = RefinementRequest(
        scriptinfo_case.ground_truth, scriptinfo_case.tgt_index, scriptinfo_case.src_index, ReplayBackend()
    )
    result = refine(req)
    assert result.status == CLEAN and result.iterations_used == 0
    assert result.refined_function.text == scriptinfo_case.ground_truth.text
    assert "no inconsistencies detected" in explain(result)


@pytest.mark.parametrize("name", ["golden_scriptinfo", "golden_alloc"])
def test_garbage_returns_input(name, scriptinfo_case, alloc_case):
    case = scriptinfo_case if name == "golden_scriptinfo" else alloc_case
    result = refine(request(case, GarbageModel()))
    assert result.status in (NO_PROGRESS, EXHAUSTED)
    assert result.refined_function.text == case.ported_function.text
    assert result.accepted_edits == 0
    check_trace_invariants(result)
    report = explain(result)
    assert "edit rejected" in report
    assert "previous function text kept" in report


def test_budget_exhausted_without_early_exit(scriptinfo_case):
    result = refine(request(scriptinfo_case, GarbageModel(), max_iter=3, no_progress_exit=False))
    assert result.status == EXHAUSTED and result.iterations_used == 3
    check_trace_invariants(result, max_iter=3)


def test_missing_recordings_are_traced(scriptinfo_case):
    result = refine(request(scriptinfo_case, ReplayBackend()))
    assert result.backend_errors
    assert result.backend_errors[0].payload["error_type"] == "MissingRecording"
    assert result.refined_function.text == scriptinfo_case.ported_function.text


def test_request_validation(scriptinfo_case):
    with pytest.raises(ValueError):
        request(scriptinfo_case, ReplayBackend(), max_iter=0)
    ghost = FunctionRecord.from_text("void ghost(void)\n{\n}\n", "scriptfile.c")
    with pytest.raises(PatchTargetMissing):
        RefinementRequest(ghost, scriptinfo_case.tgt_index, scriptinfo_case.src_index, ReplayBackend())


def test_replay_determinism(scriptinfo_case):
    a = refine(request(scriptinfo_case, replay("golden_scriptinfo"))).dumps()
    b = refine(request(scriptinfo_case, replay("golden_scriptinfo"))).dumps()
    assert a == b


def test_workspace_consistency(scriptinfo_case):
    result = refine(request(scriptinfo_case, SimulatedModel()))
    last = [e for e in result.trace if e.action == "compiled"][-1]
    idx = apply_patch(scriptinfo_case.tgt_index, result.refined_function)
    fresh = diag.compile(idx, RefCheckBackend(), idx.function("f_getscriptinfo"))
    assert last.payload["diagnostics"] == [d.to_dict() for d in fresh]


def test_explain_lists_evidence(scriptinfo_case):
    result = refine(request(scriptinfo_case, replay("golden_scriptinfo")))
    report = explain(result)
    assert "fix by usage pairs for 'dict_find'" in report
    assert "evidence 1:" in report
    pair = next(e for e in result.trace if e.action == "usage_pair_fix" and e.payload["identifier"] == "dict_find")
    assert pair.payload["pairs"][0]["target_function"]["text"].split("\n")[0] in report
    assert "tv_dict_find" in report
    assert explain(result) == report


def test_no_usage_pairs_fallback():
    src = index_texts({
        "d.h": "#define OLD_LIMIT 10\nint ported(int n);\n",
        "a.c": '#include "d.h"\nint ported(int n)\n{\n  return n < OLD_LIMIT;\n}\n',
    })
    tgt = index_texts({
        "d.h": "#define OLD_LIMITS 10\nint ported(int n);\n",
        "a.c": '#include "d.h"\nint ported(int n)\n{\n  return n;\n}\n',
    })
    fn = FunctionRecord.from_text("int ported(int n)\n{\n  return n < OLD_LIMIT;\n}\n", "a.c")
    result = refine(RefinementRequest(fn, tgt, src, SimulatedModel()))
    fb = [e for e in result.trace if e.action == "fallback" and e.payload.get("reason") == "no_usage_pairs"]
    assert fb and fb[0].payload["identifier"] == "OLD_LIMIT"
    assert result.status == CLEAN
    assert "OLD_LIMITS" in result.refined_function.text
    check_trace_invariants(result)


class BrokenCompiler:
    name = "broken"

    def check(self, index, target_file=None):
        raise BackendFailure("compiler exploded")


def test_compiler_failure_is_total(scriptinfo_case):
    result = refine(request(scriptinfo_case, ReplayBackend(), compiler=BrokenCompiler()))
    assert result.iterations_used == 0
    assert result.trace[0].action == "compiled" and "error" in result.trace[0].payload
    assert result.refined_function.text == scriptinfo_case.ported_function.text
    assert result.status != CLEAN
