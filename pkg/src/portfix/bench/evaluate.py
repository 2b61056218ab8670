"""Scoring strategies against ground truth at patch and inconsistency level."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .. import diag
from ..diag import TYPE1, TYPE2, RefCheckBackend
from ..index import FunctionRecord, apply_patch
from ..lexer import normalized_tokens
from ..models import ModelBackend, ReplayBackend
from ..sched import RefinementRequest, refine
from .baselines import cs_baseline, cs_plus_baseline
from .faults import InjectedFault, PortingCase, aligned

CS = "cs"
CS_PLUS = "cs+"
DIAGNOSTICS = "diagnostics"
FULL = "full"
STRATEGIES = (CS, CS_PLUS, DIAGNOSTICS, FULL)
MODEL_STRATEGIES = (DIAGNOSTICS, FULL)

ModelFactory = Callable[[PortingCase], ModelBackend]


def replay_factory(case: PortingCase) -> ModelBackend:
    """Replay the case's own cassette; a case without one answers nothing."""
    if case.cassette:
        return ReplayBackend(case.cassette)
    return ReplayBackend()


@dataclass
class Score:
    patch_correct: int = 0
    patch_total: int = 0
    t1_correct: int = 0
    t1_total: int = 0
    t2_correct: int = 0
    t2_total: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CaseOutcome:
    case: str
    strategy: str
    patch_correct: bool
    faults_fixed: List[bool]
    status: Optional[str] = None
    iterations: Optional[int] = None
    trace: Optional[list] = None

    def to_dict(self) -> dict:
        d = {
            "case": self.case,
            "strategy": self.strategy,
            "patch_correct": self.patch_correct,
            "faults_fixed": self.faults_fixed,
        }
        if self.status is not None:
            d.update(status=self.status, iterations=self.iterations, trace=self.trace)
        return d


@dataclass
class EvalReport:
    strategies: List[str] = field(default_factory=list)
    scores: Dict[str, Score] = field(default_factory=dict)
    outcomes: List[CaseOutcome] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "strategies": list(self.strategies),
            "scores": {k: self.scores[k].to_dict() for k in self.strategies},
            "cases": [o.to_dict() for o in self.outcomes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self) -> str:
        def cell(n, d):
            pct = f"{100.0 * n / d:.1f}%" if d else "-"
            return f"{n}/{d} ({pct})"

        head = f"{'Approach':<12} {'Patch':>16} {'#T1':>16} {'#T2':>16}"
        rows = [head, "-" * len(head)]
        for name in self.strategies:
            s = self.scores[name]
            rows.append(
                f"{name:<12} {cell(s.patch_correct, s.patch_total):>16} "
                f"{cell(s.t1_correct, s.t1_total):>16} {cell(s.t2_correct, s.t2_total):>16}"
            )
        return "\n".join(rows)


def _fault_fixed(case: PortingCase, fault: InjectedFault, refined: FunctionRecord, diags) -> bool:
    named = {d.subject_identifier for d in diags}
    if named & set(fault.subjects):
        return False
    return aligned(case.ground_truth.text.split("\n"), refined.text.split("\n"), fault.lines)


def score_case(case: PortingCase, refined: FunctionRecord) -> tuple:
    """(patch_correct, per-fault fixed flags) for one refinement."""
    if normalized_tokens(refined.text) == normalized_tokens(case.ground_truth.text):
        return True, [True] * len(case.faults)
    try:
        patched = apply_patch(case.tgt_index, refined)
        fn = patched.function(refined.name, refined.file)
        diags = diag.in_scope(diag.compile(patched, RefCheckBackend(), fn))
    except Exception:
        return False, [False] * len(case.faults)
    return False, [_fault_fixed(case, f, refined, diags) for f in case.faults]


def run_strategy(
    case: PortingCase,
    strategy: str,
    model_factory: ModelFactory = replay_factory,
    max_iter: int = 5,
) -> CaseOutcome:
    if strategy == CS:
        refined = cs_baseline(case)
    elif strategy == CS_PLUS:
        refined = cs_plus_baseline(case)
    elif strategy in MODEL_STRATEGIES:
        req = RefinementRequest(
            case.ported_function,
            case.tgt_index,
            case.src_index,
            model_factory(case),
            max_iter=max_iter,
            use_usage_pairs=strategy == FULL,
        )
        result = refine(req)
        ok, fixed = score_case(case, result.refined_function)
        trace = [e.to_dict() for e in result.trace]
        return CaseOutcome(case.name, strategy, ok, fixed, result.status, result.iterations_used, trace)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    ok, fixed = score_case(case, refined)
    return CaseOutcome(case.name, strategy, ok, fixed)


def evaluate(
    cases: Sequence[PortingCase],
    strategies: Sequence[str],
    model_factory: ModelFactory = replay_factory,
    max_iter: int = 5,
) -> EvalReport:
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    report = EvalReport(list(strategies))
    for name in strategies:
        score = Score()
        for case in cases:
            out = run_strategy(case, name, model_factory, max_iter)
            report.outcomes.append(out)
            score.patch_total += 1
            score.patch_correct += out.patch_correct
            for fault, fixed in zip(case.faults, out.faults_fixed):
                if fault.spec.expected_type == TYPE1:
                    score.t1_total += 1
                    score.t1_correct += fixed
                elif fault.spec.expected_type == TYPE2:
                    score.t2_total += 1
                    score.t2_correct += fixed
        report.scores[name] = score
    return report
