"""The check-and-fix loop that refines a ported function."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from . import diag
from .diag import CompilerBackend, Diagnostic, RefCheckBackend
from .errors import (
    BackendFailure,
    FormatError,
    ModelBackendError,
    NoUsageEvidence,
    ParseFailure,
    PromptConstructionError,
)
from .fix import (
    FORMAT_REMINDER,
    ModelEquivalenceOracle,
    PromptEnvelope,
    build_diagnostics_prompt,
    build_usage_pair_prompt,
    parse_refined_function,
    rejected_parse,
    validate_edit,
)
from .index import CodebaseIndex, FunctionRecord, apply_patch
from .lexer import tokenize
from .match import MatcherConfig, UsagePair, collect_usage_pairs
from .models import ModelBackend, prompt_digest

log = logging.getLogger(__name__)

CLEAN = "clean"
RESIDUAL = "residual_errors"
EXHAUSTED = "budget_exhausted"
NO_PROGRESS = "no_progress"

ACTIONS = ("compiled", "classified", "usage_pair_fix", "diagnostics_fix", "validation", "fallback")


@dataclass
class RefinementRequest:
    target_function: FunctionRecord
    tgt_index: CodebaseIndex
    src_index: CodebaseIndex
    model: ModelBackend
    compiler: CompilerBackend = field(default_factory=RefCheckBackend)
    max_iter: int = 5
    matcher_config: MatcherConfig = field(default_factory=MatcherConfig)
    use_usage_pairs: bool = True
    no_progress_exit: bool = True

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        # raises PatchTargetMissing / AmbiguousPatchTarget
        self.tgt_index.function(self.target_function.name, self.target_function.file)


@dataclass(frozen=True)
class TraceEvent:
    iteration: int
    action: str
    payload: dict

    def to_dict(self) -> dict:
        return {"iteration": self.iteration, "action": self.action, "payload": self.payload}


@dataclass
class RefinementResult:
    refined_function: FunctionRecord
    status: str
    iterations_used: int
    trace: List[TraceEvent]

    @property
    def accepted_edits(self) -> int:
        return sum(
            1
            for e in self.trace
            if e.action == "validation"
            and e.payload["verdict"] == "accepted"
            and e.payload["diff_summary"].get("changed_lines")
        )

    @property
    def backend_errors(self) -> List[TraceEvent]:
        return [e for e in self.trace if e.action == "fallback" and e.payload.get("error_type")]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "iterations_used": self.iterations_used,
            "refined_function": self.refined_function.to_dict(),
            "trace": [e.to_dict() for e in self.trace],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Session:
    def __init__(self, req: RefinementRequest):
        self.req = req
        self.trace: List[TraceEvent] = []
        self.iteration = 0
        self.oracle = ModelEquivalenceOracle(req.model)

    def emit(self, action: str, **payload):
        self.trace.append(TraceEvent(self.iteration, action, payload))

    def compile(self, index: CodebaseIndex, func: FunctionRecord) -> Optional[List[Diagnostic]]:
        try:
            diags = diag.compile(index, self.req.compiler, func)
        except BackendFailure as exc:
            self.emit("compiled", error=str(exc), diagnostics=[])
            return None
        scoped = diag.in_scope(diags)
        self.emit("compiled", diagnostics=[d.to_dict() for d in diags], in_scope=len(scoped))
        self.emit(
            "classified",
            type1=[d.subject_identifier for d in scoped if d.kind == diag.TYPE1],
            type2=[d.subject_identifier for d in scoped if d.kind == diag.TYPE2],
            other=sum(1 for d in scoped if d.kind == diag.OTHER),
        )
        return scoped

    def backend_error(self, exc: Exception, **extra):
        self.emit("fallback", reason="backend_error", error_type=type(exc).__name__, message=str(exc), **extra)

    def ask(self, env: PromptEnvelope, original: FunctionRecord) -> Tuple[Optional[FunctionRecord], dict]:
        """Query the model; one retry with a format reminder on ParseFailure.

        Model backend errors propagate.
        """
        warnings: list = []
        text = env.text
        info = {"prompt_digest": env.digest, "attempts": 0, "warnings": warnings}
        for attempt in range(2):
            info["attempts"] = attempt + 1
            response = self.req.model.complete(text)
            try:
                return parse_refined_function(response, original, warnings), info
            except ParseFailure as exc:
                info["parse_error"] = str(exc)
                text = env.text + FORMAT_REMINDER
                info["retry_digest"] = prompt_digest(text)
        return None, info

    def attempt(
        self, action: str, env: PromptEnvelope, index: CodebaseIndex, cur: FunctionRecord, error_lines, **payload
    ) -> Tuple[CodebaseIndex, FunctionRecord, bool]:
        try:
            refined, info = self.ask(env, cur)
        except ModelBackendError as exc:
            self.backend_error(exc, prompt_digest=env.digest, **{k: v for k, v in payload.items() if k == "identifier"})
            return index, cur, False
        self.emit(action, **payload, **info)
        if refined is None:
            verdict = rejected_parse(info.get("parse_error", ""))
        else:
            verdict = validate_edit(cur, refined, error_lines, self.req.tgt_index)
        self.emit("validation", **verdict.to_dict(), error_lines=sorted(error_lines))
        if not verdict.accepted:
            self.emit("fallback", reason="edit_rejected", rejected=list(verdict.reasons))
            return index, cur, False
        if refined.text == cur.text:
            return index, cur, False
        new_index = apply_patch(index, refined)
        return new_index, new_index.function(cur.name, cur.file), True


def _identifier_lines(func: FunctionRecord, identifier: str) -> List[Tuple[int, int]]:
    """(file line, column) of each occurrence of ``identifier`` in ``func``."""
    out = []
    line_starts = [0]
    for k, ch in enumerate(func.text):
        if ch == "\n":
            line_starts.append(k + 1)
    for tok in tokenize(func.text, directives=False):
        if tok.kind == "ident" and tok.text == identifier:
            row = max(i for i, s in enumerate(line_starts) if s <= tok.start)
            out.append((func.start_line + row, tok.start - line_starts[row] + 1))
    return out


def refine(req: RefinementRequest) -> RefinementResult:
    s = _Session(req)
    index = apply_patch(req.tgt_index, req.target_function)
    cur = index.function(req.target_function.name, req.target_function.file)
    original = cur
    diags = s.compile(index, cur)
    accepted_any = False
    status = None

    while diags and s.iteration < req.max_iter:
        s.iteration += 1
        changed = False
        type2 = diag.get_nonexist_identifier_errs(diags) if req.use_usage_pairs else []
        if type2:
            for d in type2:
                index, cur, ok = _fix_type2(s, index, cur, d)
                changed |= ok
        else:
            index, cur, ok = _fix_by_diagnostics(s, index, cur, diags)
            changed |= ok
        accepted_any |= changed
        before = [(d.line, d.message) for d in diags]
        diags = s.compile(index, cur)
        if diags is None:
            break
        if req.no_progress_exit and not changed and before == [(d.line, d.message) for d in diags]:
            status = NO_PROGRESS
            break

    if status is None:
        if diags is not None and not diags:
            status = CLEAN
        else:
            status = RESIDUAL if accepted_any else EXHAUSTED
    refined = cur if accepted_any else original
    # report the function as it was given when nothing was accepted
    if not accepted_any:
        refined = req.target_function
    return RefinementResult(refined, status, s.iteration, s.trace)


def _fix_type2(s: _Session, index: CodebaseIndex, cur: FunctionRecord, d: Diagnostic):
    ident = d.subject_identifier
    where = _identifier_lines(cur, ident)
    if not where:
        # an earlier fix in this iteration already removed it
        return index, cur, False
    lines = {ln for ln, _ in where}
    pairs: List[UsagePair] = []
    events: list = []
    try:
        pairs = collect_usage_pairs(
            ident, s.req.src_index, index, s.req.matcher_config, s.oracle, exclude_names=(cur.name,), trace=events
        )
    except NoUsageEvidence:
        pairs = []
    except ModelBackendError as exc:
        s.backend_error(exc, identifier=ident)
        return index, cur, False
    for ev in events:
        s.emit("fallback", reason=ev.pop("event"), identifier=ident, **ev)
    if pairs:
        env = build_usage_pair_prompt(cur, ident, pairs)
        return s.attempt(
            "usage_pair_fix", env, index, cur, lines, identifier=ident, pairs=[p.to_dict() for p in pairs]
        )
    # no evidence: a diagnostics prompt for this single error
    line, column = where[0]
    moved = replace(d, line=line, column=column if line != d.line else d.column)
    try:
        formatted = diag.format_for_llm(moved, cur, index)
    except FormatError as exc:
        s.emit("fallback", reason="format_error", identifier=ident, message=str(exc))
        return index, cur, False
    env = build_diagnostics_prompt(cur, [formatted])
    return s.attempt(
        "fallback", env, index, cur, lines, reason="no_usage_pairs", identifier=ident,
        diagnostics=[formatted.to_dict()],
    )


def _fix_by_diagnostics(s: _Session, index: CodebaseIndex, cur: FunctionRecord, diags: List[Diagnostic]):
    formatted = []
    for d in diags:
        try:
            formatted.append(diag.format_for_llm(d, cur, index))
        except FormatError as exc:
            s.emit("fallback", reason="format_error", message=str(exc))
    try:
        env = build_diagnostics_prompt(cur, formatted)
    except PromptConstructionError as exc:
        s.emit("fallback", reason="prompt_error", message=str(exc))
        return index, cur, False
    lines = {d.line for d in diags}
    return s.attempt("diagnostics_fix", env, index, cur, lines, diagnostics=[f.to_dict() for f in formatted])


# ---------------------------------------------------------------------------
# reporting


def explain(result: RefinementResult) -> str:
    out = [
        f"function: {result.refined_function.name} ({result.refined_function.file})",
        f"status: {result.status}",
        f"iterations: {result.iterations_used}",
    ]
    first = next((e for e in result.trace if e.action == "compiled"), None)
    if result.iterations_used == 0 and first is not None and not first.payload.get("in_scope"):
        out.append("no inconsistencies detected")
        return "\n".join(out) + "\n"
    for ev in result.trace:
        p = ev.payload
        tag = f"[iteration {ev.iteration}]"
        if ev.action == "compiled":
            if "error" in p:
                out.append(f"{tag} compiler failure: {p['error']}")
                continue
            out.append(f"{tag} compiled: {p['in_scope']} diagnostic(s) in scope")
            for d in p["diagnostics"]:
                if not d["out_of_scope"]:
                    out.append(f"    {d['file']}:{d['line']}:{d['column']}: [{d['kind']}] {d['message']}")
        elif ev.action == "usage_pair_fix":
            out.append(f"{tag} fix by usage pairs for '{p['identifier']}' ({len(p['pairs'])} pair(s))")
            for k, pair in enumerate(p["pairs"], 1):
                src, tgt = pair["source_function"], pair["target_function"]
                br = pair["breakdown"]
                out.append(
                    f"  evidence {k}: {src['name']} ({src['file']}) -> {tgt['name']} ({tgt['file']}) "
                    f"similarity name={br['name']:.3f} decl={br['declaration']:.3f} body={br['body']:.3f}"
                )
                out.append("  --- source")
                out.extend("    " + ln for ln in src["text"].split("\n"))
                out.append("  --- target")
                out.extend("    " + ln for ln in tgt["text"].split("\n"))
        elif ev.action == "diagnostics_fix":
            out.append(f"{tag} fix by diagnostics ({len(p['diagnostics'])} error(s))")
            for f in p["diagnostics"]:
                out.append(f"  {f['buggy_line_text'].strip()}  <- {f['buggy_token']}")
        elif ev.action == "fallback" and p["reason"] == "edit_rejected":
            out.append(f"{tag} fallback: previous function text kept")
        elif ev.action == "fallback":
            what = p.get("identifier", "")
            detail = p.get("message") or p.get("error") or ""
            out.append(f"{tag} fallback ({p['reason']}) {what} {detail}".rstrip())
        elif ev.action == "validation":
            if p["verdict"] == "accepted":
                out.append(f"{tag} edit accepted ({p['diff_summary'].get('changed_lines', 0)} line(s) changed)")
            else:
                out.append(f"{tag} edit rejected: {', '.join(p['reasons'])}")
            diff = p["diff_summary"].get("diff")
            if diff:
                out.extend("    " + ln for ln in diff.rstrip("\n").split("\n"))
    return "\n".join(out) + "\n"

