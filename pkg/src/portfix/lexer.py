"""Tolerant C tokenizer.

Comments are dropped, preprocessor lines come back as single ``directive``
tokens, and string/char literals are kept whole so callers can decide
whether they matter.  Offsets are character offsets into the input text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

C_KEYWORDS = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    _Bool _Complex _Imaginary _Alignas _Alignof _Atomic _Generic _Noreturn
    _Static_assert _Thread_local __attribute__ __inline __inline__ __restrict
    __restrict__ __extension__ __typeof__ typeof asm __asm__""".split()
)

TYPE_KEYWORDS = frozenset(
    "void char short int long float double signed unsigned _Bool _Complex".split()
)
QUALIFIERS = frozenset(
    "const volatile restrict __restrict __restrict__ static extern register auto "
    "inline __inline __inline__ _Noreturn _Thread_local".split()
)

_PUNCTUATORS = sorted(
    """... <<= >>= -> ++ -- << >> <= >= == != && || *= /= %= += -= &= ^= |= ##
    [ ] ( ) { } . & * + - ~ ! / % < > ^ | ? : ; = , #""".split(),
    key=len,
    reverse=True,
)

_MASTER = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<linecomment>//(?:\\\n|[^\n])*)
  | (?P<blockcomment>/\*[\s\S]*?(?:\*/|\Z))
  | (?P<string>(?:L|u8|u|U)?"(?:\\.|\\\n|[^"\\\n])*(?:"|$))
  | (?P<char>(?:L|u|U)?'(?:\\.|[^'\\\n])*(?:'|$))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>\.?[0-9](?:[eEpP][+-]|[A-Za-z0-9_.])*)
  | (?P<punct>"""
    + "|".join(re.escape(p) for p in _PUNCTUATORS)
    + r""")
  | (?P<other>.)
    """,
    re.VERBOSE | re.MULTILINE,
)
_DIRECTIVE = re.compile(r"#(?:\\\n|[^\n])*")


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, string, char, punct, directive, other
    text: str
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.text)


def iter_tokens(text: str) -> Iterator[Token]:
    pos = 0
    at_line_start = True
    n = len(text)
    while pos < n:
        if at_line_start and text[pos] == "#":
            m = _DIRECTIVE.match(text, pos)
            yield Token("directive", m.group(), pos)
            pos = m.end()
            continue
        m = _MASTER.match(text, pos)
        kind = m.lastgroup
        pos = m.end()
        if kind == "nl":
            at_line_start = True
            continue
        if kind == "ws":
            continue
        if kind == "blockcomment" or kind == "linecomment":
            continue
        at_line_start = False
        yield Token(kind, m.group(), m.start())


def tokenize(text: str, directives: bool = True) -> List[Token]:
    toks = list(iter_tokens(text))
    if not directives:
        toks = [t for t in toks if t.kind != "directive"]
    return toks


def normalized_tokens(text: str) -> List[str]:
    """Token texts with comments, whitespace and preprocessor lines removed."""
    return [t.text for t in iter_tokens(text) if t.kind != "directive"]


def identifiers(text: str) -> List[str]:
    return [t.text for t in iter_tokens(text) if t.kind == "ident"]


def replace_identifier(text: str, old: str, new: str) -> str:
    """Replace whole-token occurrences of ``old`` outside comments/literals."""
    out = []
    last = 0
    for tok in iter_tokens(text):
        if tok.kind == "ident" and tok.text == old:
            out.append(text[last : tok.start])
            out.append(new)
            last = tok.end
    out.append(text[last:])
    return "".join(out)
