"""Codebase index: functions, definitions and usages of a C-subset tree."""
from __future__ import annotations

import bisect
import hashlib
import json
import logging
import os
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .cparse import ParseError, Signature, analyze_function, parse_toplevel
from .errors import AmbiguousPatchTarget, IndexingError, PatchTargetMissing
from .lexer import normalized_tokens

log = logging.getLogger(__name__)

CACHE_NAME = ".portfix-index"
CACHE_VERSION = 1

DEFINITION_KINDS = ("function", "macro", "global_variable", "global_constant", "type_name")


@dataclass(frozen=True)
class IndexConfig:
    extensions: Tuple[str, ...] = (".c", ".h")


@dataclass(frozen=True)
class SourceFile:
    """A file's text plus the character offsets at which its lines start."""

    path: str
    text: str
    line_offsets: Tuple[int, ...]

    @classmethod
    def from_text(cls, path: str, text: str) -> "SourceFile":
        offsets = [0]
        pos = text.find("\n")
        while pos >= 0 and pos + 1 < len(text):
            offsets.append(pos + 1)
            pos = text.find("\n", pos + 1)
        return cls(path, text, tuple(offsets))

    @property
    def line_count(self) -> int:
        return len(self.line_offsets) if self.text else 0

    def position(self, offset: int) -> Tuple[int, int]:
        """1-based (line, column) of a character offset."""
        line = bisect.bisect_right(self.line_offsets, offset)
        return line, offset - self.line_offsets[line - 1] + 1

    def offset(self, line: int, column: int) -> int:
        return self.line_offsets[line - 1] + column - 1

    def line_text(self, line: int) -> str:
        if line < 1 or line > self.line_count:
            raise IndexError(f"{self.path} has no line {line}")
        start = self.line_offsets[line - 1]
        end = self.text.find("\n", start)
        return self.text[start:] if end < 0 else self.text[start:end]

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TokenCache:
    name: Tuple[str, ...]
    declaration: Tuple[str, ...]
    body: Tuple[str, ...]

    @cached_property
    def declaration_bag(self) -> Counter:
        return Counter(self.declaration)

    @cached_property
    def body_bag(self) -> Counter:
        return Counter(self.body)


@dataclass(frozen=True)
class FunctionRecord:
    name: str
    declaration: str
    body: str
    file: str
    span: Tuple[int, int]
    text: str
    start_line: int = 1

    @cached_property
    def token_cache(self) -> TokenCache:
        return TokenCache(
            (self.name,),
            tuple(normalized_tokens(self.declaration)),
            tuple(normalized_tokens(self.body)),
        )

    @property
    def normalized_declaration(self) -> str:
        return " ".join(self.token_cache.declaration)

    @property
    def line_count(self) -> int:
        return self.text.count("\n") + 1

    @property
    def end_line(self) -> int:
        return self.start_line + self.text.count("\n")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "file": self.file,
            "span": list(self.span),
            "start_line": self.start_line,
            "declaration": self.declaration,
            "body": self.body,
            "text": self.text,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "FunctionRecord":
        return cls(
            name=d["name"],
            declaration=d["declaration"],
            body=d["body"],
            file=d["file"],
            span=tuple(d["span"]),
            text=d["text"],
            start_line=d.get("start_line", 1),
        )

    @classmethod
    def from_text(cls, text: str, file: str = "<memory>", start: int = 0, start_line: int = 1) -> "FunctionRecord":
        """Build a record from text holding exactly one function definition."""
        top = parse_toplevel(text)
        if len(top.functions) != 1:
            raise ParseError(f"expected one function, found {len(top.functions)}")
        fn = top.functions[0]
        own = text[fn.start : fn.end]
        return cls(
            name=fn.name,
            declaration=text[fn.start : fn.decl_end],
            body=text[fn.body_start : fn.end],
            file=file,
            span=(start, start + len(own)),
            text=own,
            start_line=start_line,
        )


@dataclass(frozen=True)
class DefinitionRecord:
    identifier: str
    kind: str
    file: str
    span: Tuple[int, int]
    signature_summary: Optional[Signature] = None

    def to_dict(self) -> dict:
        sig = self.signature_summary
        return {
            "identifier": self.identifier,
            "kind": self.kind,
            "file": self.file,
            "span": list(self.span),
            "signature": None
            if sig is None
            else {
                "param_count": sig.param_count,
                "param_types": [list(p) for p in sig.param_types],
                "variadic": sig.variadic,
            },
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "DefinitionRecord":
        sig = d.get("signature")
        return cls(
            d["identifier"],
            d["kind"],
            d["file"],
            tuple(d["span"]),
            None
            if sig is None
            else Signature(sig["param_count"], tuple(tuple(p) for p in sig["param_types"]), sig["variadic"]),
        )


@dataclass(frozen=True)
class UsageRecord:
    identifier: str
    enclosing_function: str
    file: str
    line: int
    column: int = 0

    def to_dict(self) -> dict:
        return {
            "identifier": self.identifier,
            "enclosing_function": self.enclosing_function,
            "file": self.file,
            "line": self.line,
            "column": self.column,
        }


@dataclass(frozen=True)
class FileTables:
    functions: Tuple[FunctionRecord, ...] = ()
    definitions: Tuple[DefinitionRecord, ...] = ()
    declarations: Tuple[DefinitionRecord, ...] = ()
    usages: Tuple[UsageRecord, ...] = ()
    warning: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "functions": [f.to_dict() for f in self.functions],
            "definitions": [d.to_dict() for d in self.definitions],
            "declarations": [d.to_dict() for d in self.declarations],
            "usages": [u.to_dict() for u in self.usages],
            "warning": self.warning,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "FileTables":
        return cls(
            tuple(FunctionRecord.from_dict(x) for x in d["functions"]),
            tuple(DefinitionRecord.from_dict(x) for x in d["definitions"]),
            tuple(DefinitionRecord.from_dict(x) for x in d["declarations"]),
            tuple(UsageRecord(**x) for x in d["usages"]),
            d.get("warning"),
        )


@dataclass(frozen=True)
class CodebaseIndex:
    """Immutable view of one codebase.

    ``declarations`` holds prototypes and ``extern`` declarations; they make
    an identifier known to the checker without counting as definitions.
    """

    root: str
    files: Tuple[SourceFile, ...]
    functions: Mapping[str, Tuple[FunctionRecord, ...]]
    definitions: Mapping[str, Tuple[DefinitionRecord, ...]]
    declarations: Mapping[str, Tuple[DefinitionRecord, ...]]
    usages: Mapping[str, Tuple[UsageRecord, ...]]
    warnings: Tuple[str, ...] = ()
    tables: Mapping[str, FileTables] = field(default_factory=dict, compare=False, repr=False)

    def file(self, path: str) -> SourceFile:
        for f in self.files:
            if f.path == path:
                return f
        raise KeyError(path)

    def has_file(self, path: str) -> bool:
        return any(f.path == path for f in self.files)

    def all_functions(self) -> Iterator[FunctionRecord]:
        for name in self.functions:
            yield from self.functions[name]

    def function(self, name: str, file: Optional[str] = None) -> FunctionRecord:
        cands = [f for f in self.functions.get(name, ()) if file is None or f.file == file]
        if not cands:
            raise PatchTargetMissing(f"no function {name!r}" + (f" in {file}" if file else ""))
        if len(cands) > 1:
            raise AmbiguousPatchTarget(f"{len(cands)} functions named {name!r}")
        return cands[0]

    def is_known(self, identifier: str) -> bool:
        return identifier in self.definitions or identifier in self.declarations

    def signatures(self, identifier: str) -> List[Signature]:
        out = []
        for rec in self.definitions.get(identifier, ()) + self.declarations.get(identifier, ()):
            if rec.signature_summary is not None:
                out.append(rec.signature_summary)
        return out

    def to_dict(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "root": self.root,
            "files": {f.path: f.digest for f in self.files},
            "tables": {p: self.tables[p].to_dict() for p in sorted(self.tables)},
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def write_to(self, directory: os.PathLike) -> Path:
        """Materialize every file of the index under ``directory``."""
        out = Path(directory)
        for f in self.files:
            dest = out / f.path
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(f.text, encoding="utf-8")
        return out


def parse_file(path: str, text: str) -> FileTables:
    """Pure per-file parse; never raises on malformed input."""
    try:
        top = parse_toplevel(text)
    except ParseError as exc:
        return FileTables(warning=f"{path}: {exc}")
    sf = SourceFile.from_text(path, text)
    functions = []
    definitions = []
    declarations = []
    usages = []
    for fn in top.functions:
        own = text[fn.start : fn.end]
        rec = FunctionRecord(
            name=fn.name,
            declaration=text[fn.start : fn.decl_end],
            body=text[fn.body_start : fn.end],
            file=path,
            span=(fn.start, fn.end),
            text=own,
            start_line=sf.position(fn.start)[0],
        )
        functions.append(rec)
        definitions.append(DefinitionRecord(fn.name, "function", path, (fn.start, fn.end), fn.signature))
        try:
            analysis = analyze_function(own)
        except ParseError:  # pragma: no cover - extracted text always reparses
            continue
        for occ in analysis.free:
            line, col = sf.position(fn.start + occ.start)
            usages.append(UsageRecord(occ.name, fn.name, path, line, col))
    for d in top.definitions:
        rec = DefinitionRecord(d.identifier, d.kind, path, (d.start, d.end), d.signature)
        (declarations if d.is_declaration else definitions).append(rec)
    return FileTables(tuple(functions), tuple(definitions), tuple(declarations), tuple(usages))


def _group(records: Iterable, key) -> Dict[str, tuple]:
    out: Dict[str, list] = {}
    for r in records:
        out.setdefault(key(r), []).append(r)
    return {k: tuple(out[k]) for k in sorted(out)}


def _assemble(root: str, files: Sequence[SourceFile], tables: Mapping[str, FileTables]) -> CodebaseIndex:
    files = tuple(sorted(files, key=lambda f: f.path))
    order = [f.path for f in files]
    funcs, defs, decls, uses, warnings = [], [], [], [], []
    for p in order:
        t = tables[p]
        funcs.extend(t.functions)
        defs.extend(t.definitions)
        decls.extend(t.declarations)
        uses.extend(t.usages)
        if t.warning:
            warnings.append(t.warning)
    return CodebaseIndex(
        root=root,
        files=files,
        functions=_group(funcs, lambda r: r.name),
        definitions=_group(defs, lambda r: r.identifier),
        declarations=_group(decls, lambda r: r.identifier),
        usages=_group(uses, lambda r: r.identifier),
        warnings=tuple(warnings),
        tables=dict(tables),
    )


def _discover(root: Path, config: IndexConfig) -> List[Path]:
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(d for d in dirnames if not d.startswith("."))
        for name in sorted(filenames):
            if name.endswith(tuple(config.extensions)):
                found.append(Path(dirpath) / name)
    return found


def index_codebase(root: os.PathLike, config: IndexConfig = IndexConfig()) -> CodebaseIndex:
    """Index every source file under ``root``.

    Files that fail to parse keep their text (so the tree can still be
    materialized for a compiler) but contribute no records; a warning is
    kept on the index instead.
    """
    root_path = Path(root)
    if not root_path.is_dir():
        raise IndexingError(f"not a readable directory: {root}")
    files = []
    for p in _discover(root_path, config):
        try:
            text = p.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            raise IndexingError(f"cannot read {p}: {exc}") from exc
        files.append(SourceFile.from_text(p.relative_to(root_path).as_posix(), text))
    return index_files(str(root_path), files)


def index_files(root: str, files: Iterable[SourceFile]) -> CodebaseIndex:
    files = list(files)
    tables = {f.path: parse_file(f.path, f.text) for f in files}
    for t in tables.values():
        if t.warning:
            log.warning("skipped unparsable file: %s", t.warning)
    return _assemble(root, files, tables)


def index_texts(texts: Mapping[str, str], root: str = "<memory>") -> CodebaseIndex:
    return index_files(root, (SourceFile.from_text(p, t) for p, t in texts.items()))


def find_definition(index: CodebaseIndex, identifier: str) -> List[DefinitionRecord]:
    return list(index.definitions.get(identifier, ()))


def find_usages(index: CodebaseIndex, identifier: str) -> List[UsageRecord]:
    return list(index.usages.get(identifier, ()))


def apply_patch(index: CodebaseIndex, function: FunctionRecord) -> CodebaseIndex:
    """Return a new index with ``function``'s text swapped in for its namesake."""
    if not index.has_file(function.file):
        raise PatchTargetMissing(f"no file {function.file!r} in index")
    current = index.function(function.name, function.file)
    sf = index.file(function.file)
    start, end = current.span
    new_text = sf.text[:start] + function.text + sf.text[end:]
    if new_text == sf.text:
        return index
    new_sf = SourceFile.from_text(sf.path, new_text)
    files = [new_sf if f.path == sf.path else f for f in index.files]
    tables = dict(index.tables)
    tables[sf.path] = parse_file(sf.path, new_text)
    return _assemble(index.root, files, tables)


def replace_function(index: CodebaseIndex, name: str, text: str, file: Optional[str] = None) -> CodebaseIndex:
    current = index.function(name, file)
    return apply_patch(index, replace(FunctionRecord.from_text(text), file=current.file))


# ---------------------------------------------------------------------------
# on-disk cache


def _digests(root: Path, config: IndexConfig) -> Dict[str, str]:
    out = {}
    for p in _discover(root, config):
        out[p.relative_to(root).as_posix()] = hashlib.sha256(p.read_bytes()).hexdigest()
    return out


def load_or_build(root: os.PathLike, config: IndexConfig = IndexConfig(), write: bool = True):
    """Return ``(index, cache_hit)`` using ``<root>/.portfix-index``."""
    root_path = Path(root)
    if not root_path.is_dir():
        raise IndexingError(f"not a readable directory: {root}")
    cache = root_path / CACHE_NAME
    if cache.exists():
        try:
            data = json.loads(cache.read_text(encoding="utf-8"))
            if (
                data.get("version") == CACHE_VERSION
                and data.get("extensions") == list(config.extensions)
                and data.get("files") == _digests(root_path, config)
            ):
                files = [
                    SourceFile.from_text(p, (root_path / p).read_text(encoding="utf-8", errors="replace"))
                    for p in data["files"]
                ]
                tables = {p: FileTables.from_dict(t) for p, t in data["tables"].items()}
                return _assemble(str(root_path), files, tables), True
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring unusable index cache %s: %s", cache, exc)
    index = index_codebase(root_path, config)
    if write:
        data = index.to_dict()
        data["extensions"] = list(config.extensions)
        cache.write_text(json.dumps(data, sort_keys=True), encoding="utf-8")
    return index, False
