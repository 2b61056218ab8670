"""Fault specifications and their injection into codebase pairs."""
from __future__ import annotations

import difflib
import random
import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..cparse import parse_toplevel
from ..diag import BUILTINS, TYPE1, TYPE2, RefCheckBackend, compile, in_scope
from ..errors import InvalidFaultSpec
from ..index import CodebaseIndex, FunctionRecord, apply_patch, index_texts
from ..lexer import Token, identifiers, normalized_tokens, tokenize

RENAME = "rename_identifier"
PARAM_TYPE = "change_param_type"
DROP_CAST = "drop_cast_need"
STRUCTURAL = "structural_macro_replace"
KINDS = (RENAME, PARAM_TYPE, DROP_CAST, STRUCTURAL)

# which inconsistency type each fault kind is expected to surface as
EXPECTED_TYPE = {RENAME: TYPE2, STRUCTURAL: TYPE2, PARAM_TYPE: TYPE1, DROP_CAST: TYPE1}

_ORDER = {PARAM_TYPE: 0, DROP_CAST: 1, STRUCTURAL: 2, RENAME: 3}


@dataclass(frozen=True)
class FaultSpec:
    kind: str
    identifier: str
    details: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidFaultSpec(f"unknown fault kind {self.kind!r}")

    @property
    def expected_type(self) -> str:
        return EXPECTED_TYPE[self.kind]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "identifier": self.identifier, "details": dict(self.details)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "FaultSpec":
        return cls(d["kind"], d["identifier"], dict(d.get("details", {})))


@dataclass(frozen=True)
class InjectedFault:
    """A fault together with where it shows up in the ported function."""

    spec: FaultSpec
    lines: Tuple[int, ...]  # 0-based line numbers within the function text
    subjects: Tuple[str, ...]

    def to_dict(self) -> dict:
        d = self.spec.to_dict()
        d["lines"] = list(self.lines)
        d["subjects"] = list(self.subjects)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "InjectedFault":
        return cls(FaultSpec.from_dict(d), tuple(d["lines"]), tuple(d["subjects"]))


@dataclass
class PortingCase:
    name: str
    src_index: CodebaseIndex
    tgt_index: CodebaseIndex
    ported_function: FunctionRecord
    ground_truth: FunctionRecord
    faults: List[InjectedFault]
    cassette: Optional[str] = None

    @property
    def fault_specs(self) -> List[FaultSpec]:
        return [f.spec for f in self.faults]


# ---------------------------------------------------------------------------
# text transformations


def _edit(text: str, edits: Sequence[Tuple[int, int, str]]) -> str:
    for start, end, new in sorted(edits, reverse=True):
        text = text[:start] + new + text[end:]
    return text


def rename_everywhere(text: str, old: str, new: str) -> str:
    """Rename ``old`` in code and in preprocessor lines alike."""
    edits = []
    word = re.compile(r"\b%s\b" % re.escape(old))
    for tok in tokenize(text):
        if tok.kind == "ident" and tok.text == old:
            edits.append((tok.start, tok.end, new))
        elif tok.kind == "directive":
            for m in word.finditer(tok.text):
                edits.append((tok.start + m.start(), tok.start + m.end(), new))
    return _edit(text, edits)


def _match_paren(toks: Sequence[Token], i: int) -> int:
    depth = 0
    for j in range(i, len(toks)):
        if toks[j].text == "(":
            depth += 1
        elif toks[j].text == ")":
            depth -= 1
            if depth == 0:
                return j
    raise InvalidFaultSpec("unbalanced parentheses")


def _split_args(toks: Sequence[Token], open_: int, close: int) -> List[List[Token]]:
    args: List[List[Token]] = [[]]
    depth = 0
    for t in toks[open_ + 1 : close]:
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        if t.text == "," and depth == 0:
            args.append([])
        else:
            args[-1].append(t)
    return [] if args == [[]] else args


def _occurrences(toks: Sequence[Token], name: str):
    """(index, brace depth) of every ``name (`` in the token list."""
    depth = 0
    for i, t in enumerate(toks):
        if t.text == "{":
            depth += 1
        elif t.text == "}":
            depth -= 1
        elif t.kind == "ident" and t.text == name and i + 1 < len(toks) and toks[i + 1].text == "(":
            yield i, depth


def _function_bodies(text: str) -> List[Tuple[int, int]]:
    try:
        return [(f.start, f.end) for f in parse_toplevel(text).functions]
    except ValueError:
        return []


def _retype_params(text: str, name: str, position: int, old: str, new: str) -> Tuple[str, int]:
    toks = tokenize(text, directives=False)
    edits = []
    for i, depth in _occurrences(toks, name):
        if depth:
            continue
        close = _match_paren(toks, i + 1)
        params = _split_args(toks, i + 1, close)
        if len(params) < position:
            continue
        hit = next((t for t in params[position - 1] if t.text == old), None)
        if hit is not None:
            edits.append((hit.start, hit.end, new))
    return _edit(text, edits), len(edits)


def change_param_type(text: str, name: str, position: int, old: str, new: str) -> str:
    """Retype a pointer parameter and the locals whose address callers pass."""
    text, _ = _retype_params(text, name, position, old, new)
    toks = tokenize(text, directives=False)
    bodies = _function_bodies(text)
    edits = set()
    for i, depth in _occurrences(toks, name):
        if not depth:
            continue
        close = _match_paren(toks, i + 1)
        args = _split_args(toks, i + 1, close)
        if len(args) < position:
            continue
        arg = args[position - 1]
        if len(arg) != 2 or arg[0].text != "&" or arg[1].kind != "ident":
            continue
        var = arg[1].text
        body = next(((s, e) for s, e in bodies if s <= toks[i].start < e), None)
        if body is None:
            continue
        inner = [t for t in toks if body[0] <= t.start < body[1]]
        for k in range(len(inner) - 2):
            if inner[k].text == old and inner[k + 1].text == var and inner[k + 2].text in ("=", ";", ","):
                edits.add((inner[k].start, inner[k].end, new))
    return _edit(text, list(edits))


def drop_cast_need(text: str, name: str, position: int, old: str, new: str) -> str:
    """Retype a parameter so callers' ``(old *)`` casts become unnecessary."""
    text, _ = _retype_params(text, name, position, old, new)
    toks = tokenize(text, directives=False)
    edits = []
    for i, depth in _occurrences(toks, name):
        if not depth:
            continue
        close = _match_paren(toks, i + 1)
        args = _split_args(toks, i + 1, close)
        if len(args) < position:
            continue
        arg = args[position - 1]
        if len(arg) > 4 and [t.text for t in arg[:4]] == ["(", old, "*", ")"]:
            edits.append((arg[0].start, arg[4].start, ""))
    return _edit(text, edits)


def _render_template(template: str, args: Sequence[str]) -> str:
    def sub(m):
        k = int(m.group(1))
        if not 1 <= k <= len(args):
            raise InvalidFaultSpec(f"template refers to ${k} but only {len(args)} argument(s)")
        return args[k - 1]

    return re.sub(r"\$(\d+)", sub, template)


def replace_macro(text: str, name: str, template: str) -> str:
    """Drop ``name``'s definition and expand its uses through ``template``."""
    toks = tokenize(text)
    edits = []
    define = re.compile(r"#\s*define\s+%s\b" % re.escape(name))
    for t in toks:
        if t.kind == "directive" and define.match(t.text):
            end = t.end + 1 if text[t.end : t.end + 1] == "\n" else t.end
            edits.append((t.start, end, ""))
    code = [t for t in toks if t.kind != "directive"]
    for i, _ in _occurrences(code, name):
        close = _match_paren(code, i + 1)
        args = [text[a[0].start : a[-1].end] for a in _split_args(code, i + 1, close)]
        edits.append((code[i].start, code[close].end, _render_template(template, args)))
    return _edit(text, edits)


def apply_fault(text: str, spec: FaultSpec) -> str:
    d = spec.details
    if spec.kind == RENAME:
        return rename_everywhere(text, spec.identifier, d["new_name"])
    if spec.kind == PARAM_TYPE:
        return change_param_type(text, spec.identifier, int(d["param"]), d["old_type"], d["new_type"])
    if spec.kind == DROP_CAST:
        return drop_cast_need(text, spec.identifier, int(d["param"]), d["old_type"], d["new_type"])
    return replace_macro(text, spec.identifier, d["template"])


def apply_faults(text: str, specs: Sequence[FaultSpec]) -> str:
    # renames last, so attribute changes can name identifiers as in the source
    for spec in sorted(specs, key=lambda s: _ORDER[s.kind]):
        text = apply_fault(text, spec)
    return text


# ---------------------------------------------------------------------------
# injection


def validate_spec(base: CodebaseIndex, spec: FaultSpec) -> None:
    if not base.definitions.get(spec.identifier):
        raise InvalidFaultSpec(f"{spec.identifier!r} is not defined in the base codebase")
    d = spec.details
    if spec.kind == RENAME:
        new = d.get("new_name")
        if not new or not re.fullmatch(r"[A-Za-z_]\w*", new):
            raise InvalidFaultSpec("rename needs a valid new_name")
        if base.is_known(new):
            raise InvalidFaultSpec(f"rename target {new!r} is already defined")
    elif spec.kind in (PARAM_TYPE, DROP_CAST):
        sigs = base.signatures(spec.identifier)
        try:
            k = int(d["param"])
            old = d["old_type"]
            d["new_type"]
        except (KeyError, ValueError) as exc:
            raise InvalidFaultSpec(f"{spec.kind} needs param, old_type and new_type") from exc
        if not any(0 < k <= len(s.param_types) and old in s.param_types[k - 1] for s in sigs):
            raise InvalidFaultSpec(f"parameter {k} of {spec.identifier!r} is not of type {old!r}")
    else:
        template = d.get("template", "")
        defs = base.definitions[spec.identifier]
        if not any(r.kind == "macro" and r.signature_summary is not None for r in defs):
            raise InvalidFaultSpec(f"{spec.identifier!r} is not a function-like macro")
        for ident in identifiers(re.sub(r"\$\d+", "", template)):
            if ident not in BUILTINS and not base.is_known(ident) and ident != "sizeof":
                raise InvalidFaultSpec(f"template uses unknown identifier {ident!r}")


def _users(base: CodebaseIndex, specs: Sequence[FaultSpec]) -> List[FunctionRecord]:
    wanted = {s.identifier for s in specs}
    out = []
    for fn in base.all_functions():
        if wanted <= set(identifiers(fn.text)):
            out.append(fn)
    return sorted(out, key=lambda f: (f.file, f.name))


def _changed_lines(a: str, b: str) -> Tuple[int, ...]:
    la, lb = a.split("\n"), b.split("\n")
    if len(la) != len(lb):
        raise InvalidFaultSpec("fault transformation changed the line structure")
    return tuple(k for k, (x, y) in enumerate(zip(la, lb)) if normalized_tokens(x) != normalized_tokens(y))


def _diagnose(tgt: CodebaseIndex, fn: FunctionRecord):
    patched = apply_patch(tgt, fn)
    return in_scope(compile(patched, RefCheckBackend(), patched.function(fn.name, fn.file)))


def inject(
    base: CodebaseIndex,
    specs: Sequence[FaultSpec],
    seed: int = 0,
    function: Optional[str] = None,
    pre_patch: Optional[str] = None,
    name: str = "case",
) -> PortingCase:
    """Build a porting case whose target differs from ``base`` by ``specs``.

    The ported function is ``function`` as it appears in ``base``; the
    ground truth is the same function with the faults applied.  When
    ``function`` is omitted one of the functions using every faulted
    identifier is drawn with ``seed``.  ``pre_patch`` replaces the target's
    copy of the function, modelling the code before the patch landed.
    """
    specs = list(specs)
    for s in specs:
        validate_spec(base, s)
    if function is None:
        users = _users(base, specs)
        if not users:
            raise InvalidFaultSpec("no function uses every faulted identifier")
        ported = random.Random(seed).choice(users)
    else:
        ported = base.function(function)

    texts: Dict[str, str] = {f.path: apply_faults(f.text, specs) for f in base.files}
    if pre_patch is not None:
        sf_text = texts[ported.file]
        tgt_fn_text = apply_faults(ported.text, specs)
        pos = sf_text.find(tgt_fn_text)
        if pos < 0:
            raise InvalidFaultSpec("cannot locate the ported function in the target")
        new = apply_faults(pre_patch, specs)
        texts[ported.file] = sf_text[:pos] + new + sf_text[pos + len(tgt_fn_text) :]
    tgt = index_texts(texts, root="<tgt>")
    src = base

    gt_text = apply_faults(ported.text, specs)
    ported_fn = FunctionRecord.from_text(ported.text, ported.file)
    gt_fn = FunctionRecord.from_text(gt_text, ported.file)
    if _diagnose(tgt, gt_fn):
        raise InvalidFaultSpec("ground truth does not compile cleanly in the target")

    faults = []
    for k, spec in enumerate(specs):
        lines = _changed_lines(ported.text, apply_fault(ported.text, spec))
        others = specs[:k] + specs[k + 1 :]
        reverted = FunctionRecord.from_text(apply_faults(ported.text, others), ported.file)
        diags = _diagnose(tgt, reverted)
        if not diags:
            raise InvalidFaultSpec(f"fault on {spec.identifier!r} induces no diagnostic")
        subjects = tuple(sorted({d.subject_identifier for d in diags if d.subject_identifier}))
        faults.append(InjectedFault(spec, lines, subjects))
    return PortingCase(name, src, tgt, ported_fn, gt_fn, faults)


def aligned(gt_lines: Sequence[str], refined_lines: Sequence[str], wanted: Sequence[int]) -> bool:
    """True if every ``wanted`` ground-truth line is matched unchanged in the refinement."""
    a = [tuple(normalized_tokens(x)) for x in gt_lines]
    b = [tuple(normalized_tokens(x)) for x in refined_lines]
    ok = set()
    for op, i1, i2, _, _ in difflib.SequenceMatcher(None, a, b, autojunk=False).get_opcodes():
        if op == "equal":
            ok.update(range(i1, i2))
    return all(k in ok for k in wanted)
