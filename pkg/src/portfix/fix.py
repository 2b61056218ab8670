"""Prompt construction, response parsing and edit validation."""
from __future__ import annotations

import difflib
import logging
import re
from dataclasses import dataclass, field
from string import Template
from typing import Iterable, List, Optional, Sequence, Set

from .cparse import ParseError, analyze_function, parse_toplevel
from .diag import BUILTINS, FormattedDiagnostic
from .errors import OracleError, ParseFailure, PromptConstructionError
from .index import CodebaseIndex, FunctionRecord
from .lexer import identifiers
from .match import UsagePair
from .models import ModelBackend, prompt_digest

log = logging.getLogger(__name__)

RADIUS = 3
MAX_EDIT_RATIO = 0.5

FUNCTION_BLOCK = "function_block"
INDEX_OR_NONE = "index_or_none"

REASONS = ("new_undefined_identifier", "unrelated_edit", "excessive_edit", "parse_failure")

PLACEHOLDER_RE = re.compile(r"\$\{[A-Za-z_][A-Za-z0-9_]*\}")
_FENCE_RE = re.compile(r"```[ \t]*[A-Za-z0-9_+-]*[ \t]*\n(.*?)```", re.DOTALL)

FORMAT_REMINDER = (
    "\n\nReminder: answer with exactly one ```c fenced code block that contains "
    "the complete function and nothing else."
)
ANSWER_REMINDER = "\n\nReminder: reply with a single candidate number or the word none."


@dataclass(frozen=True)
class PromptEnvelope:
    kind: str  # usage_pairs, diagnostics, equivalence
    text: str
    expected_form: str

    @property
    def digest(self) -> str:
        return prompt_digest(self.text)


def _fence(code: str) -> str:
    return "```c\n" + code.rstrip("\n") + "\n```"


def _render(kind: str, template: Template, expected: str, **values) -> PromptEnvelope:
    text = template.substitute(**values)
    if not text.strip():
        raise PromptConstructionError("empty prompt")
    return PromptEnvelope(kind, text, expected)


USAGE_PAIR_TEMPLATE = Template(
    """You are helping to port a patch from a source codebase to a target codebase that was forked from it.
The identifier `${identifier}` is used by the ported code but does not exist in the target codebase.

# Section 1: Transformation examples
Each example is a pair of functions implementing the same functionality. The first function of a pair comes from the source codebase and uses `${identifier}`; the second is its counterpart in the target codebase. Read each pair as a demonstration of how code that uses `${identifier}` in the source codebase is written in the target codebase.

${pairs}

# Section 2: Task
The function below belongs to the target codebase and still uses `${identifier}`. Rewrite every use of `${identifier}` following the transformations demonstrated by the examples.

${function}

# Section 3: Guidelines
- Reply with the complete refined function in one ```c fenced code block.
- Keep the function name and signature unchanged.
- Change only what is needed to replace `${identifier}`; leave all other code as it is.
- Do not introduce identifiers that do not appear in the examples or in the function.
"""
)

PAIR_TEMPLATE = Template(
    """## Example ${number}
Source codebase (${source_file}):
${source}
Target codebase (${target_file}):
${target}"""
)

DIAGNOSTICS_TEMPLATE = Template(
    """The C function below was ported from another codebase and does not compile in the target codebase. The compiler reported the errors listed here, each with the buggy line, the buggy token on that line, and the compiler's explanation.

${errors}

# Function
${function}

# Instructions
- Fix all of the errors above together.
- A fix may belong somewhere other than the buggy line, for example in the declaration of a variable used there.
- Follow the compiler's explanations and suggestions.
- Do not modify code unrelated to these errors.
- Reply with the entire corrected function in one ```c fenced code block.
"""
)

ERROR_TEMPLATE = Template(
    """## Error ${number}
Buggy line: ${line}
Buggy token: ${token}
Explanation:
${explanation}"""
)

EQUIVALENCE_TEMPLATE = Template(
    """Below is a function from a source codebase followed by ${count} candidate functions from a target codebase forked from it.
Decide which candidate implements the same functionality as the source function.

# Source function (${source_file})
${source}

${candidates}

# Answer
Reply with only the number of the equivalent candidate (1-${count}), or none if no candidate is equivalent.
"""
)


def build_usage_pair_prompt(func: FunctionRecord, identifier: str, pairs: Sequence[UsagePair]) -> PromptEnvelope:
    if not pairs:
        raise PromptConstructionError(f"no usage pairs for {identifier!r}")
    blocks = [
        PAIR_TEMPLATE.substitute(
            number=k,
            source_file=p.source_function.file,
            source=_fence(p.source_function.text),
            target_file=p.target_function.file,
            target=_fence(p.target_function.text),
        )
        for k, p in enumerate(pairs, 1)
    ]
    return _render(
        "usage_pairs",
        USAGE_PAIR_TEMPLATE,
        FUNCTION_BLOCK,
        identifier=identifier,
        pairs="\n\n".join(blocks),
        function=_fence(func.text),
    )


def build_diagnostics_prompt(func: FunctionRecord, diags: Sequence[FormattedDiagnostic]) -> PromptEnvelope:
    if not diags:
        raise PromptConstructionError("no diagnostics to fix")
    errors = [
        ERROR_TEMPLATE.substitute(
            number=k,
            line=d.buggy_line_text.strip(),
            token=d.buggy_token,
            explanation=d.explanation,
        )
        for k, d in enumerate(diags, 1)
    ]
    return _render(
        "diagnostics",
        DIAGNOSTICS_TEMPLATE,
        FUNCTION_BLOCK,
        errors="\n\n".join(errors),
        function=_fence(func.text),
    )


def build_equivalence_prompt(source: FunctionRecord, candidates: Sequence[FunctionRecord]) -> PromptEnvelope:
    if not candidates:
        raise PromptConstructionError("no candidates")
    blocks = [
        f"# Candidate {k} ({c.file})\n{_fence(c.text)}" for k, c in enumerate(candidates, 1)
    ]
    return _render(
        "equivalence",
        EQUIVALENCE_TEMPLATE,
        INDEX_OR_NONE,
        count=len(candidates),
        source_file=source.file,
        source=_fence(source.text),
        candidates="\n\n".join(blocks),
    )


# ---------------------------------------------------------------------------
# responses


def code_blocks(response: str) -> List[str]:
    return _FENCE_RE.findall(response)


def parse_refined_function(
    response: str, original: FunctionRecord, warnings: Optional[list] = None
) -> FunctionRecord:
    blocks = code_blocks(response)
    if not blocks:
        raise ParseFailure("response contains no fenced code block")
    if len(blocks) > 1 and warnings is not None:
        warnings.append(f"{len(blocks)} code blocks in response; using the first")
    code = blocks[0]
    try:
        top = parse_toplevel(code)
    except ParseError as exc:
        raise ParseFailure(f"code block does not parse: {exc}") from exc
    if len(top.functions) != 1:
        raise ParseFailure(f"expected exactly one function, found {len(top.functions)}")
    fn = top.functions[0]
    if fn.name != original.name:
        raise ParseFailure(f"function is named {fn.name!r}, expected {original.name!r}")
    text = code[fn.start : fn.end]
    return FunctionRecord(
        name=fn.name,
        declaration=code[fn.start : fn.decl_end],
        body=code[fn.body_start : fn.end],
        file=original.file,
        span=(original.span[0], original.span[0] + len(text)),
        text=text,
        start_line=original.start_line,
    )


def parse_candidate_answer(response: str, count: int) -> Optional[int]:
    """0-based candidate index, or None for an explicit "none"."""
    m = re.search(r"\b(none|\d+)\b", response.strip(), re.IGNORECASE)
    if not m:
        raise OracleError(f"no candidate number in response {response[:60]!r}")
    word = m.group(1).lower()
    if word == "none":
        return None
    k = int(word)
    if not 1 <= k <= count:
        raise OracleError(f"candidate {k} out of range 1..{count}")
    return k - 1


class ModelEquivalenceOracle:
    """Asks the model which ranked candidate is equivalent (one retry)."""

    def __init__(self, backend: ModelBackend, log_calls: Optional[list] = None):
        self.backend = backend
        self.calls = log_calls if log_calls is not None else []

    def choose(self, source: FunctionRecord, candidates: Sequence[FunctionRecord]) -> Optional[int]:
        env = build_equivalence_prompt(source, candidates)
        text = env.text
        for attempt in range(2):
            response = self.backend.complete(text)
            self.calls.append({"digest": prompt_digest(text), "source": source.name})
            try:
                return parse_candidate_answer(response, len(candidates))
            except OracleError:
                if attempt == 1:
                    raise
                text = env.text + ANSWER_REMINDER
        return None  # pragma: no cover


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class EditValidation:
    verdict: str
    reasons: tuple = ()
    diff_summary: dict = field(default_factory=dict)
    undefined: tuple = ()

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reasons": list(self.reasons),
            "diff_summary": self.diff_summary,
            "undefined": list(self.undefined),
        }


def rejected_parse(message: str) -> EditValidation:
    return EditValidation("rejected", ("parse_failure",), {"error": message})


def line_diff(original: str, refined: str):
    """Changed lines as (0-based original anchor, old text, new text) triples."""
    a = [x.rstrip() for x in original.split("\n")]
    b = [x.rstrip() for x in refined.split("\n")]
    sm = difflib.SequenceMatcher(None, a, b, autojunk=False)
    changes = []
    count = 0
    for op, i1, i2, j1, j2 in sm.get_opcodes():
        if op == "equal":
            continue
        count += max(i2 - i1, j2 - j1)
        olds = a[i1:i2]
        news = b[j1:j2]
        for k in range(max(len(olds), len(news))):
            anchor = min(i1 + k, max(len(a) - 1, 0)) if k < len(olds) else min(i1, max(len(a) - 1, 0))
            changes.append(
                (anchor, olds[k] if k < len(olds) else "", news[k] if k < len(news) else "")
            )
    return count, changes


def _free_names(fn: FunctionRecord) -> Set[str]:
    return {o.name for o in analyze_function(fn.text).free}


def validate_edit(
    original: FunctionRecord,
    refined: FunctionRecord,
    error_lines: Iterable[int],
    tgt_index: CodebaseIndex,
) -> EditValidation:
    """Accept a proposed function only if it is conservative.

    ``error_lines`` are file line numbers of the diagnostics being fixed,
    relative to ``original``'s position in its file.
    """
    try:
        new_free = _free_names(refined)
        old_free = _free_names(original)
    except ParseError as exc:
        return rejected_parse(str(exc))

    reasons = []
    undefined = sorted(
        n for n in new_free - old_free if n != refined.name and n not in BUILTINS and not tgt_index.is_known(n)
    )
    if undefined:
        reasons.append("new_undefined_identifier")

    orig_lines = original.text.split("\n")
    rel_errors = sorted({ln - original.start_line for ln in error_lines})
    error_idents: Set[str] = set()
    for r in rel_errors:
        if 0 <= r < len(orig_lines):
            error_idents.update(identifiers(orig_lines[r]))

    count, changes = line_diff(original.text, refined.text)
    unrelated = []
    for anchor, old, new in changes:
        near = any(abs(anchor - r) <= RADIUS for r in rel_errors)
        shares = bool(error_idents & (set(identifiers(old)) | set(identifiers(new))))
        if not near and not shares:
            unrelated.append(anchor + original.start_line)
    if unrelated:
        reasons.append("unrelated_edit")
    if count > MAX_EDIT_RATIO * len(orig_lines):
        reasons.append("excessive_edit")

    summary = {
        "changed_lines": count,
        "original_lines": len(orig_lines),
        "locations": sorted({a + original.start_line for a, _, _ in changes}),
        "unrelated_locations": sorted(set(unrelated)),
        "diff": "".join(
            difflib.unified_diff(
                original.text.splitlines(True), refined.text.splitlines(True), "original", "refined", n=1
            )
        ),
    }
    return EditValidation("rejected" if reasons else "accepted", tuple(reasons), summary, tuple(undefined))
