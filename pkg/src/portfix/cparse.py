"""Brace-matching extraction of C top-level items and lexical body analysis.

This is deliberately shallow: no preprocessing, no scopes beyond "declared
somewhere in this function", no type system beyond base name + pointer depth.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .lexer import C_KEYWORDS, QUALIFIERS, TYPE_KEYWORDS, Token, tokenize


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class CType:
    base: str
    ptr: int = 0

    def __str__(self) -> str:
        return self.base + (" " + "*" * self.ptr if self.ptr else "")


@dataclass(frozen=True)
class Signature:
    """Parameter count and parameter type tokens of a callable."""

    param_count: int
    param_types: Tuple[Tuple[str, ...], ...] = ()
    variadic: bool = False

    def accepts(self, nargs: int) -> bool:
        if self.variadic:
            return nargs >= self.param_count
        return nargs == self.param_count


@dataclass(frozen=True)
class RawFunction:
    name: str
    start: int
    decl_end: int
    body_start: int
    end: int
    signature: Signature
    params: Tuple[Tuple[str, CType], ...]


@dataclass(frozen=True)
class RawDefinition:
    identifier: str
    kind: str
    start: int
    end: int
    signature: Optional[Signature] = None
    is_declaration: bool = False  # prototype or extern, not a definition


@dataclass
class TopLevel:
    functions: List[RawFunction] = field(default_factory=list)
    definitions: List[RawDefinition] = field(default_factory=list)


_DEFINE = re.compile(r"#\s*define\s+([A-Za-z_]\w*)(\()?")


def _match_forward(toks: Sequence[Token], i: int, open_: str, close: str) -> int:
    depth = 0
    for j in range(i, len(toks)):
        t = toks[j].text
        if toks[j].kind != "punct":
            continue
        if t == open_:
            depth += 1
        elif t == close:
            depth -= 1
            if depth == 0:
                return j
    return -1


def _match_backward(toks: Sequence[Token], i: int, open_: str, close: str) -> int:
    depth = 0
    for j in range(i, -1, -1):
        t = toks[j].text
        if toks[j].kind != "punct":
            continue
        if t == close:
            depth += 1
        elif t == open_:
            depth -= 1
            if depth == 0:
                return j
    return -1


def split_top(toks: Sequence[Token], sep: str = ",") -> List[List[Token]]:
    """Split a token run at ``sep`` occurring outside any bracket nesting."""
    parts: List[List[Token]] = [[]]
    depth = 0
    for t in toks:
        if t.kind == "punct":
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth -= 1
            elif t.text == sep and depth == 0:
                parts.append([])
                continue
        parts[-1].append(t)
    if len(parts) == 1 and not parts[0]:
        return []
    return parts


def type_of(spec: Sequence[str], stars: int = 0, array: bool = False) -> CType:
    base = [s for s in spec if s not in QUALIFIERS and s not in ("struct", "union", "enum")]
    name = " ".join(base) or "int"
    if name == "_Bool":
        name = "bool"
    return CType(name, stars + (1 if array else 0))


def parse_param(toks: Sequence[Token]) -> Tuple[Optional[str], Tuple[str, ...], CType]:
    texts = [t.text for t in toks]
    if "(" in texts:
        # function pointer parameter: int (*cb)(int)
        for k in range(len(toks) - 2):
            if texts[k] == "(" and texts[k + 1] == "*" and toks[k + 2].kind == "ident":
                name = texts[k + 2]
                rest = tuple(x for j, x in enumerate(texts) if j != k + 2)
                return name, rest, CType("fnptr", 1)
        return None, tuple(texts), CType("fnptr", 1)
    array = False
    if "[" in texts:
        array = True
        texts = texts[: texts.index("[")]
    name = None
    if len(texts) >= 2 and IDENT(texts[-1]) and texts[-1] not in C_KEYWORDS:
        name = texts[-1]
        texts = texts[:-1]
    stars = texts.count("*")
    spec = [x for x in texts if x != "*"]
    type_tokens = tuple(texts) + (("*",) if array else ())
    return name, type_tokens, type_of(spec, stars, array)


def IDENT(s: str) -> bool:
    return bool(s) and (s[0].isalpha() or s[0] == "_")


def parse_params(toks: Sequence[Token]):
    """Parse the tokens strictly between a declarator's parentheses."""
    parts = split_top(toks)
    if len(parts) == 1 and [t.text for t in parts[0]] == ["void"]:
        parts = []
    variadic = False
    params = []
    types = []
    for p in parts:
        if [t.text for t in p] == ["..."]:
            variadic = True
            continue
        name, ttoks, ctype = parse_param(p)
        params.append((name, ctype))
        types.append(ttoks)
    sig = Signature(len(types), tuple(types), variadic)
    return sig, tuple((n, c) for n, c in params if n)


def parse_toplevel(text: str) -> TopLevel:
    toks = tokenize(text)
    out = TopLevel()
    pending: List[Token] = []
    i = 0
    n = len(toks)
    while i < n:
        t = toks[i]
        if t.kind == "directive":
            m = _DEFINE.match(t.text)
            if m:
                out.definitions.append(_macro(t, m))
            i += 1
            continue
        if t.kind == "punct" and t.text == "{":
            fn = _try_function(pending)
            close = _match_forward(toks, i, "{", "}")
            if close < 0:
                raise ParseError(f"unbalanced brace at offset {t.start}")
            if fn is not None:
                name, params_open, params_close = fn
                sig, params = parse_params(pending[params_open + 1 : params_close])
                out.functions.append(
                    RawFunction(
                        name=name,
                        start=pending[0].start,
                        decl_end=pending[params_close].end,
                        body_start=t.start,
                        end=toks[close].end,
                        signature=sig,
                        params=params,
                    )
                )
                pending = []
            else:
                pending.extend(toks[i : close + 1])
            i = close + 1
            continue
        if t.kind == "punct" and t.text == ";":
            if pending:
                out.definitions.extend(_declaration(pending, t.end))
            pending = []
            i += 1
            continue
        if t.kind == "punct" and t.text == "}":
            # stray closer from a conditional-compilation split; drop it
            pending = []
            i += 1
            continue
        pending.append(t)
        i += 1
    return out


def _try_function(pending: List[Token]):
    if not pending or pending[-1].text != ")":
        return None
    close_local = len(pending) - 1
    open_local = _match_backward(pending, close_local, "(", ")")
    if open_local < 1:
        return None
    name_tok = pending[open_local - 1]
    if name_tok.kind != "ident" or name_tok.text in C_KEYWORDS:
        return None
    if any(p.text == "=" for p in pending[:open_local]):
        return None
    return name_tok.text, open_local, close_local


def _macro(tok: Token, m: re.Match) -> RawDefinition:
    name = m.group(1)
    sig = None
    if m.group(2):
        close = tok.text.find(")", m.end())
        inner = tok.text[m.end() : close] if close >= 0 else ""
        names = [p.strip() for p in inner.split(",") if p.strip()]
        variadic = bool(names) and names[-1].endswith("...")
        if variadic:
            names = names[:-1]
        sig = Signature(len(names), tuple(() for _ in names), variadic)
    return RawDefinition(name, "macro", tok.start, tok.end, sig)


def _declaration(toks: List[Token], end: int) -> List[RawDefinition]:
    start = toks[0].start
    texts = [t.text for t in toks]
    defs: List[RawDefinition] = []
    is_typedef = "typedef" in texts[:1] or (texts and texts[0] in QUALIFIERS and "typedef" in texts)
    is_extern = "extern" in texts

    # aggregate bodies: tags, enum constants
    body_ranges = []
    k = 0
    while k < len(toks):
        if texts[k] == "{":
            close = _match_forward(toks, k, "{", "}")
            if close < 0:
                break
            if k >= 2 and texts[k - 2] in ("struct", "union", "enum") and toks[k - 1].kind == "ident":
                defs.append(RawDefinition(texts[k - 1], "type_name", start, end))
            if "enum" in texts[max(0, k - 2) : k]:
                for part in split_top(toks[k + 1 : close]):
                    if part and part[0].kind == "ident":
                        defs.append(RawDefinition(part[0].text, "global_constant", part[0].start, part[0].end))
            body_ranges.append((k, close))
            k = close + 1
            continue
        k += 1
    if body_ranges:
        # drop aggregate bodies, keep the declarator tail
        keep = []
        last = 0
        for a, b in body_ranges:
            keep.extend(toks[last:a])
            last = b + 1
        keep.extend(toks[last:])
        toks = keep
        texts = [t.text for t in toks]
    elif len(texts) == 2 and texts[0] in ("struct", "union", "enum"):
        return defs  # forward declaration

    # separate specifiers from the first declarator
    chunks = split_top(toks)
    if not chunks:
        return defs
    spec_end = _specifier_end(chunks[0])
    if spec_end is None:
        return defs
    spec = [t.text for t in chunks[0][:spec_end]]
    chunks[0] = chunks[0][spec_end:]
    const_spec = "const" in spec
    for chunk in chunks:
        d = _declarator(chunk)
        if d is None:
            continue
        name, name_tok, stars, params, const_ptr = d
        if is_typedef:
            defs.append(RawDefinition(name, "type_name", name_tok.start, name_tok.end))
            continue
        if params is not None:
            sig, _ = parse_params(params)
            defs.append(RawDefinition(name, "function", start, end, sig, is_declaration=True))
            continue
        constant = (const_spec and stars == 0) or const_ptr
        kind = "global_constant" if constant else "global_variable"
        defs.append(RawDefinition(name, kind, start, end, is_declaration=is_extern))
    return defs


def _specifier_end(chunk: Sequence[Token]) -> Optional[int]:
    """Index of the first declarator token in a declaration's first chunk."""
    texts = [t.text for t in chunk]
    j = 0
    saw_type = False
    while j < len(texts):
        x = texts[j]
        if x in QUALIFIERS or x == "typedef":
            j += 1
        elif x in ("struct", "union", "enum"):
            j += 1
            # the tag is only a tag if a declarator follows it
            if j + 1 < len(texts) and chunk[j].kind == "ident" and (
                chunk[j + 1].kind == "ident" or texts[j + 1] in ("*", "(")
            ):
                j += 1
            saw_type = True
        elif x in TYPE_KEYWORDS:
            j += 1
            saw_type = True
        elif chunk[j].kind == "ident" and not saw_type and x not in C_KEYWORDS:
            j += 1
            saw_type = True
        else:
            break
    if not saw_type:
        return None
    if j == len(texts):
        return None
    return j


def _declarator(chunk: Sequence[Token]):
    texts = [t.text for t in chunk]
    if "=" in texts:
        cut = [k for k, t in enumerate(chunk) if t.text == "=" and _depth_at(chunk, k) == 0]
        if cut:
            chunk = chunk[: cut[0]]
            texts = texts[: cut[0]]
    stars = 0
    const_ptr = False
    j = 0
    while j < len(texts) and texts[j] in ("*", "const", "volatile", "restrict"):
        if texts[j] == "*":
            stars += 1
        elif stars:
            const_ptr = True
        j += 1
    if j < len(texts) and texts[j] == "(":
        # (*name)(...) function pointer or parenthesised declarator
        close = _match_forward(chunk, j, "(", ")")
        inner = [t for t in chunk[j + 1 : close] if t.kind == "ident"]
        if not inner:
            return None
        return inner[-1].text, inner[-1], stars + 1, None, False
    if j >= len(texts) or chunk[j].kind != "ident":
        return None
    name_tok = chunk[j]
    rest = texts[j + 1 :]
    if rest and rest[0] == "(":
        close = _match_forward(chunk, j + 1, "(", ")")
        if close < 0:
            return None
        return name_tok.text, name_tok, stars, list(chunk[j + 2 : close]), False
    return name_tok.text, name_tok, stars, None, const_ptr


def _depth_at(toks: Sequence[Token], idx: int) -> int:
    d = 0
    for t in toks[:idx]:
        if t.kind == "punct":
            if t.text in "([{":
                d += 1
            elif t.text in ")]}":
                d -= 1
    return d


# ---------------------------------------------------------------------------
# function bodies


@dataclass(frozen=True)
class Occurrence:
    name: str
    start: int  # offset within the analysed text
    is_call: bool


@dataclass(frozen=True)
class Call:
    name: str
    start: int
    args: Tuple[Tuple[Token, ...], ...]


@dataclass(frozen=True)
class FunctionAnalysis:
    name: str
    params: Dict[str, CType]
    locals: Dict[str, CType]
    free: Tuple[Occurrence, ...]
    calls: Tuple[Call, ...]
    signature: Signature

    def type_of(self, ident: str) -> Optional[CType]:
        return self.locals.get(ident) or self.params.get(ident)

    def bound(self, ident: str) -> bool:
        return ident in self.locals or ident in self.params


_STMT_BOUNDARY = {"{", "}", ";"}


@lru_cache(maxsize=4096)
def analyze_function(text: str) -> FunctionAnalysis:
    """Analyse the text of exactly one function definition."""
    top = parse_toplevel(text)
    if len(top.functions) != 1:
        raise ParseError(f"expected one function, found {len(top.functions)}")
    fn = top.functions[0]
    toks = [t for t in tokenize(text[fn.body_start : fn.end], directives=False)]
    base = fn.body_start
    toks = [Token(t.kind, t.text, t.start + base) for t in toks]
    params = {n: c for n, c in fn.params}
    local_types: Dict[str, CType] = {}
    decl_names = set()

    prev = None
    k = 0
    while k < len(toks):
        at_stmt = prev is None or prev.text in _STMT_BOUNDARY or (
            prev.text == "(" and k >= 2 and toks[k - 2].text == "for"
        )
        if at_stmt and toks[k].kind == "ident":
            got = _local_declaration(toks, k)
            if got:
                for name, ctype, idx in got:
                    local_types.setdefault(name, ctype)
                    decl_names.add(idx)
        prev = toks[k]
        k += 1

    free: List[Occurrence] = []
    calls: List[Call] = []
    for k, t in enumerate(toks):
        if t.kind != "ident" or t.text in C_KEYWORDS or k in decl_names:
            continue
        before = toks[k - 1].text if k else ""
        after = toks[k + 1].text if k + 1 < len(toks) else ""
        if before in (".", "->", "struct", "union", "enum", "goto"):
            continue
        if after == ":" and before in _STMT_BOUNDARY and t.text not in ("default",):
            continue  # label
        is_call = after == "("
        if is_call:
            close = _match_forward(toks, k + 1, "(", ")")
            if close > 0:
                args = tuple(tuple(a) for a in split_top(toks[k + 2 : close]))
                calls.append(Call(t.text, t.start, args))
        if t.text in local_types or t.text in params:
            continue
        free.append(Occurrence(t.text, t.start, is_call))
    return FunctionAnalysis(fn.name, params, local_types, tuple(free), tuple(calls), fn.signature)


def _local_declaration(toks: Sequence[Token], k: int):
    texts = [t.text for t in toks]
    j = k
    spec = []
    saw_type = False
    n = len(toks)
    while j < n:
        x = texts[j]
        if x in QUALIFIERS:
            spec.append(x)
            j += 1
        elif x in ("struct", "union", "enum") and j + 1 < n and toks[j + 1].kind == "ident":
            spec.extend([x, texts[j + 1]])
            j += 2
            saw_type = True
        elif x in TYPE_KEYWORDS:
            spec.append(x)
            j += 1
            saw_type = True
        elif toks[j].kind == "ident" and x not in C_KEYWORDS and not saw_type:
            spec.append(x)
            j += 1
            saw_type = True
        else:
            break
    if not saw_type or j >= n:
        return None
    # a bare identifier type must be followed by '*' or an identifier
    if texts[j] not in ("*",) and toks[j].kind != "ident":
        return None
    if toks[j].kind == "ident" and texts[j] in C_KEYWORDS and texts[j] not in QUALIFIERS:
        return None
    out = []
    while j < n:
        stars = 0
        while j < n and texts[j] in ("*", "const", "volatile", "restrict"):
            stars += texts[j] == "*"
            j += 1
        if j >= n or toks[j].kind != "ident" or texts[j] in C_KEYWORDS:
            return out or None
        name_idx = j
        j += 1
        array = False
        while j < n and texts[j] == "[":
            array = True
            j = _match_forward(toks, j, "[", "]") + 1
            if j <= 0:
                return out or None
        if j >= n or texts[j] not in ("=", ",", ";"):
            return out or None
        out.append((texts[name_idx], type_of(spec, stars, array), name_idx))
        if texts[j] == "=":
            # skip initializer
            depth = 0
            while j < n:
                x = texts[j]
                if x in ("(", "[", "{"):
                    depth += 1
                elif x in (")", "]", "}"):
                    depth -= 1
                    if depth < 0:
                        return out
                elif depth == 0 and x in (",", ";"):
                    break
                j += 1
        if j >= n or texts[j] == ";":
            return out
        j += 1  # ','
    return out
