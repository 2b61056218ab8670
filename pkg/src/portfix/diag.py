"""Compiler diagnostics: backends, classification, and LLM-facing rendering."""
from __future__ import annotations

import json
import logging
import os
import re
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, List, Mapping, Optional, Protocol, Sequence, Union

from .cparse import CType, FunctionAnalysis, ParseError, analyze_function, type_of
from .errors import BackendFailure, FormatError
from .index import CodebaseIndex, FunctionRecord, SourceFile
from .lexer import C_KEYWORDS, TYPE_KEYWORDS, QUALIFIERS, tokenize
from .match import name_similarity

log = logging.getLogger(__name__)

TYPE1 = "Type1"
TYPE2 = "Type2"
OTHER = "Other"

TYPE2_PATTERNS = ("implicit declaration of function", "undeclared")
TYPE1_PATTERNS = (
    "incompatible pointer type",
    "incompatible type",
    "too many arguments",
    "too few arguments",
    "makes pointer from integer",
    "differ in signedness",
)

SUGGESTION_THRESHOLD = 0.8

# Identifiers that come from the C library or compiler and never live in an index.
BUILTINS = frozenset(
    """NULL true false bool size_t ssize_t ptrdiff_t intptr_t uintptr_t
    int8_t int16_t int32_t int64_t uint8_t uint16_t uint32_t uint64_t
    FILE EOF stdin stdout stderr errno va_list va_start va_end va_arg
    malloc calloc realloc free memset memcpy memmove memcmp memchr
    strlen strcmp strncmp strcpy strncpy strcat strncat strchr strrchr strstr strdup strndup
    printf fprintf sprintf snprintf vprintf vfprintf vsprintf vsnprintf puts fputs putchar fputc getchar fgets fopen fclose
    abort exit assert atoi atol strtol strtoul qsort bsearch abs labs
    isdigit isalpha isalnum isspace isupper islower toupper tolower
    __func__ __FILE__ __LINE__ offsetof INT_MAX INT_MIN LONG_MAX LONG_MIN UINT_MAX SIZE_MAX""".split()
)
INTEGER_TYPES = frozenset(
    "char short int long bool unsigned signed size_t int8_t int16_t int32_t int64_t "
    "uint8_t uint16_t uint32_t uint64_t".split()
)

_QUOTED = re.compile(r"['‘`]([A-Za-z_][A-Za-z0-9_]*)['’]")
_DID_YOU_MEAN = re.compile(r"did you mean ['‘`]([A-Za-z_][A-Za-z0-9_]*)['’]")
CARET_LINE_RE = re.compile(r"^\s*\^[~^\s]*$", re.MULTILINE)


@dataclass(frozen=True)
class RawDiagnostic:
    file: Optional[str]
    line: Optional[int]
    column: Optional[int]
    message: str
    notes: tuple = ()
    fixit: Optional[str] = None
    severity: str = "error"


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int
    column: int
    message: str
    notes: tuple = ()
    fixit: Optional[str] = None
    kind: str = OTHER
    subject_identifier: Optional[str] = None
    out_of_scope: bool = False

    def to_dict(self) -> dict:
        return {
            "file": self.file,
            "line": self.line,
            "column": self.column,
            "message": self.message,
            "notes": list(self.notes),
            "fixit": self.fixit,
            "kind": self.kind,
            "subject_identifier": self.subject_identifier,
            "out_of_scope": self.out_of_scope,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "Diagnostic":
        return cls(**{**d, "notes": tuple(d.get("notes", ()))})


@dataclass(frozen=True)
class FormattedDiagnostic:
    buggy_line_text: str
    buggy_token: str
    explanation: str

    def to_dict(self) -> dict:
        return {
            "buggy_line_text": self.buggy_line_text,
            "buggy_token": self.buggy_token,
            "explanation": self.explanation,
        }


class CompilerBackend(Protocol):
    name: str

    def check(self, index: CodebaseIndex, target_file: Optional[str] = None) -> List[RawDiagnostic]:
        """Raw diagnostics for ``target_file`` (every .c file when None)."""


# ---------------------------------------------------------------------------
# internal reference checker


def declaration_text(index: CodebaseIndex, identifier: str) -> Optional[str]:
    fns = index.functions.get(identifier)
    if fns:
        return fns[0].normalized_declaration
    for rec in index.declarations.get(identifier, ()) + index.definitions.get(identifier, ()):
        sf = index.file(rec.file)
        text = " ".join(t.text for t in tokenize(sf.text[rec.span[0] : rec.span[1]], directives=False))
        return text.rstrip(" ;")
    return None


def suggest_identifier(name: str, index: CodebaseIndex, is_call: bool) -> Optional[str]:
    """The single known identifier at least 80% similar to ``name``, if unique."""
    hits = set()
    for table in (index.definitions, index.declarations):
        for ident, recs in table.items():
            callable_ = any(r.signature_summary is not None for r in recs)
            if callable_ != is_call:
                continue
            if name_similarity(name, ident) >= SUGGESTION_THRESHOLD:
                hits.add(ident)
    return hits.pop() if len(hits) == 1 else None


def _param_ctype(tokens: Sequence[str]) -> CType:
    if "(" in tokens:
        return CType("fnptr", 1)
    stars = tokens.count("*")
    return type_of([t for t in tokens if t != "*"], stars)


def infer_arg_type(arg: Sequence, analysis: FunctionAnalysis) -> Optional[CType]:
    texts = [t.text for t in arg]
    if len(arg) == 1:
        t = arg[0]
        if t.kind == "string":
            return CType("char", 1)
        if t.kind == "ident":
            return analysis.type_of(t.text)
        return None
    if len(arg) == 2 and texts[0] == "&" and arg[1].kind == "ident":
        ty = analysis.type_of(texts[1])
        return CType(ty.base, ty.ptr + 1) if ty else None
    if texts[0] == "(" and ")" in texts:
        close = texts.index(")")
        inner = texts[1:close]
        typeish = inner and all(
            x == "*" or x in TYPE_KEYWORDS or x in QUALIFIERS or (x[0].isalpha() or x[0] == "_") for x in inner
        )
        if typeish and "*" in inner and close + 1 < len(texts):
            return type_of([x for x in inner if x != "*"], inner.count("*"))
    return None


def _pointer_problem(param: CType, arg: CType) -> Optional[str]:
    if param.base == "fnptr":
        return None
    if param.ptr > 0 and arg.ptr > 0:
        if param.base == "void" or arg.base == "void":
            return None
        if param.base == arg.base and param.ptr == arg.ptr:
            return None
        return "from incompatible pointer type"
    if param.ptr > 0 and arg.ptr == 0 and arg.base in INTEGER_TYPES:
        return "makes pointer from integer without a cast"
    return None


def _is_known(index: CodebaseIndex, name: str) -> bool:
    return name in BUILTINS or index.is_known(name)


@dataclass
class RefCheckBackend:
    """Lexical stand-in for a compiler.

    Reports identifiers used but never defined or declared anywhere in the
    index, and call sites whose arity or pointer argument types disagree with
    an indexed signature.
    """

    name: str = "refcheck"

    def check(self, index: CodebaseIndex, target_file: Optional[str] = None) -> List[RawDiagnostic]:
        paths = [target_file] if target_file else [f.path for f in index.files]
        out: List[RawDiagnostic] = []
        for path in paths:
            if not index.has_file(path):
                continue
            sf = index.file(path)
            tables = index.tables.get(path)
            for fn in tables.functions if tables else ():
                out.extend(self._check_function(index, sf, fn))
        return out

    def _check_function(self, index: CodebaseIndex, sf: SourceFile, fn: FunctionRecord) -> Iterable[RawDiagnostic]:
        try:
            a = analyze_function(fn.text)
        except ParseError:
            return
        seen = set()
        for occ in a.free:
            if occ.name in seen or _is_known(index, occ.name):
                continue
            seen.add(occ.name)
            line, col = sf.position(fn.span[0] + occ.start)
            if occ.is_call:
                msg = f"implicit declaration of function '{occ.name}'"
            else:
                msg = f"'{occ.name}' undeclared (first use in this function)"
            hint = suggest_identifier(occ.name, index, occ.is_call)
            if hint:
                msg += f"; did you mean '{hint}'?"
            yield RawDiagnostic(sf.path, line, col, msg, (), hint)

        for call in a.calls:
            if a.bound(call.name) or call.name in C_KEYWORDS:
                continue
            sigs = index.signatures(call.name)
            if not sigs:
                continue
            decl = declaration_text(index, call.name)
            declared = (f"'{call.name}' declared here: {decl}",) if decl else ()
            nargs = len(call.args)
            fitting = [s for s in sigs if s.accepts(nargs)]
            if not fitting:
                line, col = sf.position(fn.span[0] + call.start)
                word = "many" if nargs > sigs[0].param_count else "few"
                yield RawDiagnostic(sf.path, line, col, f"too {word} arguments to function '{call.name}'", declared)
                continue
            sig = fitting[0]
            if not sig.param_types or not any(sig.param_types):
                continue  # function-like macro: arity only
            for pos, (arg, ptoks) in enumerate(zip(call.args, sig.param_types), 1):
                if not arg:
                    continue
                arg_t = infer_arg_type(arg, a)
                if arg_t is None:
                    continue
                param_t = _param_ctype(ptoks)
                problem = _pointer_problem(param_t, arg_t)
                if problem is None:
                    continue
                line, col = sf.position(fn.span[0] + arg[0].start)
                expected = " ".join(ptoks)
                note = f"expected '{expected}' but argument is of type '{arg_t}'"
                yield RawDiagnostic(
                    sf.path,
                    line,
                    col,
                    f"passing argument {pos} of '{call.name}' {problem}",
                    (note,) + declared,
                )


# ---------------------------------------------------------------------------
# external compiler


DEFAULT_COMMAND = "gcc -fsyntax-only -Wpointer-sign -fdiagnostics-format=json {includes} {file}"


def _matches_inconsistency(message: str) -> bool:
    low = message.lower()
    return any(p in low for p in TYPE2_PATTERNS + TYPE1_PATTERNS)


def parse_json_diagnostics(data, workdir: Optional[str] = None) -> List[RawDiagnostic]:
    """Convert gcc ``-fdiagnostics-format=json`` output to raw diagnostics.

    Warnings are kept only when they describe an identifier inconsistency
    (older compilers emit implicit declarations and pointer mismatches as
    warnings).
    """
    out = []
    for item in data if isinstance(data, list) else []:
        if not isinstance(item, dict):
            continue
        severity = str(item.get("kind", "error"))
        message = str(item.get("message", ""))
        if "error" not in severity and not _matches_inconsistency(message):
            continue
        notes = tuple(
            str(c.get("message", "")) for c in item.get("children", []) or [] if isinstance(c, dict)
        )
        fixit = None
        for fx in item.get("fixits", []) or []:
            if isinstance(fx, dict) and fx.get("string"):
                fixit = fx["string"]
                break
        try:
            caret = item["locations"][0]["caret"]
            path = caret["file"]
            if workdir and os.path.isabs(path):
                path = os.path.relpath(path, workdir)
            out.append(
                RawDiagnostic(Path(path).as_posix(), int(caret["line"]), int(caret["column"]), message, notes, fixit, severity)
            )
        except (KeyError, IndexError, TypeError, ValueError):
            out.append(RawDiagnostic(None, None, None, message, notes, fixit, severity))
    return out


@dataclass
class ExternalBackend:
    """Runs a real compiler over a temporary copy of the indexed tree."""

    command: str = DEFAULT_COMMAND
    include_dirs: Sequence[str] = ()
    timeout: float = 60.0
    name: str = "external"

    def check(self, index: CodebaseIndex, target_file: Optional[str] = None) -> List[RawDiagnostic]:
        targets = [target_file] if target_file else [f.path for f in index.files if f.path.endswith(".c")]
        header_dirs = sorted({str(Path(f.path).parent) for f in index.files if f.path.endswith(".h")})
        with tempfile.TemporaryDirectory(prefix="portfix-") as work:
            index.write_to(work)
            out: List[RawDiagnostic] = []
            for t in targets:
                out.extend(self._run(work, t, header_dirs))
            return out

    def _run(self, work: str, target: str, header_dirs: Sequence[str]) -> List[RawDiagnostic]:
        dirs = list(header_dirs) + list(self.include_dirs)
        includes = " ".join(shlex.quote("-I" + d) for d in dirs)
        argv = shlex.split(self.command.format(includes=includes, file=shlex.quote(target)))
        env = dict(os.environ, LC_ALL="C", LANG="C")
        try:
            proc = subprocess.run(argv, cwd=work, capture_output=True, text=True, timeout=self.timeout, env=env)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise BackendFailure(f"compiler could not run: {exc}") from exc
        raw = proc.stderr.strip() or proc.stdout.strip()
        if not raw:
            return []
        try:
            data = json.loads(raw[raw.index("[") :])
        except ValueError:
            if proc.returncode != 0:
                raise BackendFailure("unparseable compiler output", raw)
            return []
        return parse_json_diagnostics(data, work)


# ---------------------------------------------------------------------------
# classification and compile


def subject_of(message: str) -> Optional[str]:
    m = _QUOTED.search(message)
    return m.group(1) if m else None


def classify(raw: RawDiagnostic, target_index: CodebaseIndex) -> Diagnostic:
    fixit = raw.fixit
    if fixit is None:
        m = _DID_YOU_MEAN.search(raw.message)
        fixit = m.group(1) if m else None
    if raw.file is None or raw.line is None:
        return Diagnostic(raw.file or "", raw.line or 0, raw.column or 0, raw.message, tuple(raw.notes), fixit, OTHER, None)
    subject = subject_of(raw.message)
    low = raw.message.lower()
    kind = OTHER
    if any(p in low for p in TYPE2_PATTERNS):
        kind = TYPE2
    elif any(p in low for p in TYPE1_PATTERNS):
        kind = TYPE1
    if kind != OTHER:
        defined = bool(subject) and bool(target_index.definitions.get(subject))
        if subject is None:
            kind = OTHER
        elif kind == TYPE2 and defined:
            kind = OTHER
        elif kind == TYPE1 and not defined:
            kind = OTHER
    return Diagnostic(raw.file, raw.line, raw.column or 1, raw.message, tuple(raw.notes), fixit, kind, subject)


def _sort_key(d: Diagnostic):
    return (d.file, d.line, d.column, d.message)


def compile(
    index: CodebaseIndex,
    backend: CompilerBackend,
    function: Optional[FunctionRecord] = None,
) -> List[Diagnostic]:
    """Compile ``index`` and classify what the backend reports.

    With ``function`` given only its file is checked and diagnostics outside
    the function's lines are flagged ``out_of_scope``.
    """
    scope = None
    if function is not None:
        scope = index.function(function.name, function.file)
    raws = backend.check(index, scope.file if scope else None)
    diags = []
    for raw in raws:
        d = classify(raw, index)
        if scope is not None:
            inside = d.file == scope.file and scope.start_line <= d.line <= scope.end_line
            if not inside:
                d = replace(d, out_of_scope=True)
        diags.append(d)
    diags.sort(key=_sort_key)
    return diags


def in_scope(diags: Iterable[Diagnostic]) -> List[Diagnostic]:
    return [d for d in diags if not d.out_of_scope]


def get_nonexist_identifier_errs(diags: Iterable[Diagnostic]) -> List[Diagnostic]:
    seen = set()
    out = []
    for d in diags:
        if d.kind != TYPE2 or d.subject_identifier in seen:
            continue
        seen.add(d.subject_identifier)
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# LLM formatting


def _buggy_token(line: str, column: int) -> str:
    toks = tokenize(line, directives=False)
    if not toks:
        return line.strip()
    idx = column - 1
    pick = None
    for k, t in enumerate(toks):
        if t.start <= idx < t.end or t.start >= idx:
            pick = k
            break
    if pick is None:
        pick = len(toks) - 1
    # skip leading operators so "&error" yields "error"
    k = pick
    while k < len(toks) and toks[k].kind == "punct":
        k += 1
    if k < len(toks):
        pick = k
    return toks[pick].text


def format_for_llm(
    d: Diagnostic,
    func: FunctionRecord,
    source: Union[CodebaseIndex, SourceFile, None] = None,
) -> FormattedDiagnostic:
    """Render one diagnostic as buggy line, buggy token and explanation.

    ``source`` supplies the file text; without it the line is read from the
    function text, which must then contain the diagnostic.
    """
    if d.file != func.file:
        raise FormatError(f"diagnostic in {d.file!r} is outside {func.file!r}")
    if isinstance(source, CodebaseIndex):
        if not source.has_file(d.file):
            raise FormatError(f"unknown file {d.file!r}")
        source = source.file(d.file)
    if source is not None:
        try:
            line = source.line_text(d.line)
        except IndexError as exc:
            raise FormatError(str(exc)) from exc
    else:
        rel = d.line - func.start_line
        lines = func.text.split("\n")
        if not 0 <= rel < len(lines):
            raise FormatError(f"line {d.line} is outside {func.name}")
        line = lines[rel]
    parts = [d.message, *d.notes]
    # text-mode compilers append caret art; it never reaches the model
    kept = [ln for p in parts for ln in p.split("\n") if not CARET_LINE_RE.fullmatch(ln)]
    explanation = "\n".join(kept)
    return FormattedDiagnostic(line, _buggy_token(line, d.column), explanation)
