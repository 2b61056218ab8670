"""Deterministic stand-in language models used to record cassettes.

``SimulatedModel`` answers the three prompt families using only what the
prompt shows it: it infers rewrite templates by aligning the usage-pair
examples, applies compiler hints for diagnostics prompts, and judges
equivalence by name and body overlap.  ``GarbageModel`` answers every
prompt with something a validator must refuse.
"""
from __future__ import annotations

import difflib
import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..fix import code_blocks
from ..lexer import C_KEYWORDS, QUALIFIERS, Token, replace_identifier, tokenize
from ..match import token_similarity

EQUIVALENCE_MIN_BODY = 0.6

_IDENT_PROMPT = re.compile(r"The identifier `([A-Za-z_]\w*)`")
_ERROR_BLOCK = re.compile(
    r"## Error \d+\nBuggy line: (?P<line>[^\n]*)\nBuggy token: (?P<token>[^\n]*)\nExplanation:\n(?P<expl>.*?)(?=\n\n## Error |\n\n# Function)",
    re.DOTALL,
)
_DID_YOU_MEAN = re.compile(r"did you mean '([A-Za-z_]\w*)'")
_EXPECTED = re.compile(r"expected '([^']*)' but argument is of type '([^']*)'")


def _code(text: str) -> List[Token]:
    return tokenize(text, directives=False)


def _close_paren(toks: Sequence[Token], i: int) -> int:
    depth = 0
    for j in range(i, len(toks)):
        if toks[j].text == "(":
            depth += 1
        elif toks[j].text == ")":
            depth -= 1
            if depth == 0:
                return j
    return -1


def _args(toks: Sequence[Token], open_: int, close: int) -> List[List[Token]]:
    out: List[List[Token]] = [[]]
    depth = 0
    for t in toks[open_ + 1 : close]:
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        if t.text == "," and depth == 0:
            out.append([])
        else:
            out[-1].append(t)
    return [] if out == [[]] else out


def _is_cast(arg: Sequence[Token]) -> bool:
    return len(arg) > 4 and arg[0].text == "(" and arg[2].text == "*" and arg[3].text == ")"


_NO_SPACE_BEFORE = {")", "]", ",", ";", ".", "->", "++", "--"}
_NO_SPACE_AFTER = {"(", "[", ".", "->", "!", "~"}


def join_tokens(parts: Sequence[str]) -> str:
    out = ""
    prev = None
    for p in parts:
        if prev is None:
            out = p
        elif p in _NO_SPACE_BEFORE or prev in _NO_SPACE_AFTER:
            out += p
        elif p in ("(", "[") and (re.match(r"\w", prev) or prev in (")", "]")) and prev not in C_KEYWORDS - {"sizeof"}:
            out += p
        else:
            out += " " + p
        prev = p
    return out


# ---------------------------------------------------------------------------
# rewrite templates learned from usage pairs

# template items: ("tok", text) | ("arg", k) | ("arg_nocast", k)
Template = Tuple[Tuple[str, object], ...]


@dataclass(frozen=True)
class Rewrite:
    identifier: str
    is_call: bool
    arity: int
    template: Template


def _map_start(ops, p: int) -> int:
    for op, i1, i2, j1, j2 in ops:
        if i1 <= p < i2:
            if op == "equal" or (op == "replace" and i2 - i1 == j2 - j1):
                return j1 + (p - i1)
            return j1
    return ops[-1][4] if ops else 0


def _map_end(ops, e: int) -> int:
    end = None
    for k, (op, i1, i2, j1, j2) in enumerate(ops):
        if i1 < e <= i2:
            if op == "equal" or (op == "replace" and i2 - i1 == j2 - j1):
                end = j1 + (e - i1)
            else:
                end = j2
            # absorb insertions that directly follow the region
            for op2, a1, a2, b1, b2 in ops[k + 1 :]:
                if op2 == "insert" and a1 == e:
                    end = b2
                else:
                    break
            return end
    return ops[-1][4] if ops else 0


def _find(seq: Sequence, sub: Sequence, taken: set) -> int:
    n = len(sub)
    for s in range(len(seq) - n + 1):
        if any(s + k in taken for k in range(n)):
            continue
        if list(seq[s : s + n]) == list(sub):
            return s
    return -1


def _generalize(region: List[str], args: List[List[Token]]) -> Template:
    items: List[Tuple[str, object]] = [("tok", t) for t in region]
    # longest arguments first so short ones cannot claim their tokens
    order = sorted(range(len(args)), key=lambda k: -len(args[k]))
    for k in order:
        texts = [t.text for t in args[k]]
        flat = [x[1] if x[0] == "tok" else None for x in items]
        taken = {i for i, x in enumerate(items) if x[0] != "tok"}
        pos = _find(flat, texts, taken)
        kind = "arg"
        if pos < 0 and _is_cast(args[k]):
            texts = texts[4:]
            pos = _find(flat, texts, taken)
            kind = "arg_nocast"
        if pos < 0 or not texts:
            continue
        items[pos : pos + len(texts)] = [(kind, k)]
    return tuple(items)


def learn_rewrites(identifier: str, source: str, target: str) -> List[Rewrite]:
    s, t = _code(source), _code(target)
    st, tt = [x.text for x in s], [x.text for x in t]
    ops = difflib.SequenceMatcher(None, st, tt, autojunk=False).get_opcodes()
    out = []
    for i, tok in enumerate(s):
        if tok.kind != "ident" or tok.text != identifier:
            continue
        if i + 1 < len(s) and s[i + 1].text == "(":
            close = _close_paren(s, i + 1)
            if close < 0:
                continue
            args = _args(s, i + 1, close)
            end, is_call = close + 1, True
        else:
            args, end, is_call = [], i + 1, False
        j1, j2 = _map_start(ops, i), _map_end(ops, end)
        region = tt[j1:j2]
        if not region or identifier in region:
            continue
        out.append(Rewrite(identifier, is_call, len(args), _generalize(region, args)))
    return out


def apply_rewrite(func_text: str, rule: Rewrite) -> str:
    toks = _code(func_text)
    edits = []
    i = 0
    while i < len(toks):
        tok = toks[i]
        if tok.kind != "ident" or tok.text != rule.identifier:
            i += 1
            continue
        call = i + 1 < len(toks) and toks[i + 1].text == "("
        if call != rule.is_call:
            i += 1
            continue
        if call:
            close = _close_paren(toks, i + 1)
            args = _args(toks, i + 1, close)
            if close < 0 or len(args) != rule.arity:
                i += 1
                continue
            end_tok = toks[close]
        else:
            args, end_tok = [], tok
        parts = []
        for kind, val in rule.template:
            if kind == "tok":
                parts.append(val)
                continue
            arg = args[val]
            if kind == "arg_nocast" and _is_cast(arg):
                arg = arg[4:]
            parts.append(func_text[arg[0].start : arg[-1].end])
        edits.append((tok.start, end_tok.end, join_tokens(parts)))
        i = toks.index(end_tok) + 1
    for start, end, new in reversed(edits):
        func_text = func_text[:start] + new + func_text[end:]
    return func_text


def _fenced(text: str) -> str:
    return "```c\n" + text.rstrip("\n") + "\n```\n"


# ---------------------------------------------------------------------------
# diagnostics


def _declared_type(func_text: str, var: str) -> Optional[Token]:
    toks = _code(func_text)
    for k in range(len(toks) - 2):
        if (
            toks[k + 1].text == var
            and toks[k + 2].text in ("=", ";", ",")
            and (toks[k].kind == "ident" or toks[k].text in C_KEYWORDS)
            and toks[k].text not in ("return", "sizeof")
            and (k == 0 or toks[k - 1].text in ("{", "}", ";") or toks[k - 1].text in QUALIFIERS)
        ):
            return toks[k]
    return None


def _base(type_text: str) -> str:
    words = [w for w in type_text.replace("*", " ").split() if w not in QUALIFIERS]
    base = " ".join(words)
    return "bool" if base == "_Bool" else base


def apply_diagnostic(func_text: str, line: str, token: str, explanation: str) -> str:
    lines = func_text.split("\n")
    rows = [k for k, x in enumerate(lines) if x.strip() == line.strip()]
    if not rows:
        return func_text
    hint = _DID_YOU_MEAN.search(explanation)
    if hint:
        for k in rows:
            lines[k] = replace_identifier(lines[k], token, hint.group(1))
        return "\n".join(lines)
    exp = _EXPECTED.search(explanation)
    if "incompatible pointer type" not in explanation or not exp:
        return func_text
    expected, actual = _base(exp.group(1)), exp.group(2)
    cast = re.compile(r"\(\s*%s\s*\*\s*\)\s*" % re.escape(token))
    if _base(actual) == token and any(cast.search(lines[k]) for k in rows):
        for k in rows:
            lines[k] = cast.sub("", lines[k], count=1)
        return "\n".join(lines)
    if actual.count("*") == 1 and re.search(r"&\s*%s\b" % re.escape(token), line):
        decl = _declared_type(func_text, token)
        if decl is not None and expected and decl.text != expected:
            return func_text[: decl.start] + expected + func_text[decl.end :]
    return func_text


# ---------------------------------------------------------------------------
# models


def _section(prompt: str, start: str, end: Optional[str]) -> str:
    a = prompt.find(start)
    if a < 0:
        return ""
    b = prompt.find(end, a) if end else -1
    return prompt[a : b if b >= 0 else len(prompt)]


def prompt_kind(prompt: str) -> str:
    if "# Section 1: Transformation examples" in prompt:
        return "usage_pairs"
    if "## Error 1\n" in prompt and "# Function\n" in prompt:
        return "diagnostics"
    if "# Source function" in prompt and "# Candidate 1" in prompt:
        return "equivalence"
    return "unknown"


def function_under_repair(prompt: str) -> Optional[str]:
    kind = prompt_kind(prompt)
    if kind == "usage_pairs":
        blocks = code_blocks(_section(prompt, "# Section 2", "# Section 3"))
    elif kind == "diagnostics":
        blocks = code_blocks(_section(prompt, "# Function\n", "# Instructions"))
    else:
        return None
    return blocks[0] if blocks else None


class SimulatedModel:
    """Answers prompts by mechanical inference from the prompt contents."""

    def complete(self, prompt: str) -> str:
        kind = prompt_kind(prompt)
        if kind == "equivalence":
            return self._equivalence(prompt)
        if kind == "usage_pairs":
            return self._usage_pairs(prompt)
        if kind == "diagnostics":
            return self._diagnostics(prompt)
        return "I do not understand the request."

    def _equivalence(self, prompt: str) -> str:
        src = code_blocks(_section(prompt, "# Source function", "# Candidate 1"))
        cands = []
        k = 1
        while True:
            sec = _section(prompt, f"# Candidate {k} (", f"# Candidate {k + 1} (")
            if not sec:
                break
            sec = sec.split("# Answer")[0]
            blocks = code_blocks(sec)
            if blocks:
                cands.append(blocks[0])
            k += 1
        if not src or not cands:
            return "none"
        name = _name_of(src[0])
        for k, c in enumerate(cands, 1):
            if _name_of(c) == name:
                return str(k)
        scores = [token_similarity([t.text for t in _code(src[0])], [t.text for t in _code(c)]) for c in cands]
        best = max(range(len(cands)), key=lambda k: (scores[k], -k))
        return str(best + 1) if scores[best] >= EQUIVALENCE_MIN_BODY else "none"

    def _usage_pairs(self, prompt: str) -> str:
        m = _IDENT_PROMPT.search(prompt)
        func = function_under_repair(prompt)
        if not m or func is None:
            return "I cannot find the function to repair."
        ident = m.group(1)
        examples = _section(prompt, "# Section 1", "# Section 2")
        rules: List[Rewrite] = []
        for chunk in re.split(r"\n## Example \d+\n", examples)[1:]:
            blocks = code_blocks(chunk)
            if len(blocks) >= 2:
                rules.extend(learn_rewrites(ident, blocks[0], blocks[1]))
        if not rules:
            return "The examples do not show how to replace the identifier.\n" + _fenced(func)
        counts = Counter(rules)
        best = max(counts, key=lambda r: (counts[r], -rules.index(r)))
        return _fenced(apply_rewrite(func, best))

    def _diagnostics(self, prompt: str) -> str:
        func = function_under_repair(prompt)
        if func is None:
            return "I cannot find the function to repair."
        for m in _ERROR_BLOCK.finditer(prompt):
            func = apply_diagnostic(func, m.group("line"), m.group("token").strip(), m.group("expl"))
        return _fenced(func)


def _name_of(func_text: str) -> Optional[str]:
    toks = _code(func_text)
    for k, t in enumerate(toks):
        if t.text == "(" and k and toks[k - 1].kind == "ident":
            return toks[k - 1].text
    return None


GARBAGE_PROSE = "Sorry, I am not able to help with this request."
GARBAGE_WRONG_NAME = "```c\nint unrelated_helper(void)\n{\n  return 0;\n}\n```\n"


class GarbageModel:
    """Answers each prompt with one of four unusable responses (chosen by digest)."""

    def complete(self, prompt: str) -> str:
        choice = int(hashlib.sha256(prompt.encode("utf-8")).hexdigest(), 16) % 4
        func = function_under_repair(prompt)
        if func is None or choice == 0:
            return GARBAGE_PROSE
        if choice == 1:
            return GARBAGE_WRONG_NAME
        lines = func.split("\n")
        brace = next((k for k, x in enumerate(lines) if x.strip().startswith("{")), 0)
        if choice == 2:
            lines.insert(brace + 1, "  frobnicate_unknown();")
            return _fenced("\n".join(lines))
        header = "\n".join(lines[: brace + 1])
        return _fenced(header + "\n  abort();\n}")
