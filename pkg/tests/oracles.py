"""Slow, independent reference implementations used to pin expected values."""
from __future__ import annotations

from functools import lru_cache

from portfix.lexer import normalized_tokens


def edit_distance(a: str, b: str) -> int:
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))

    return d(len(a), len(b))


def multiset_jaccard(a, b) -> float:
    if not a and not b:
        return 1.0
    rest = list(b)
    inter = 0
    for x in a:
        if x in rest:
            rest.remove(x)
            inter += 1
    union = len(a) + len(b) - inter
    return inter / union


def score(src, tgt) -> float:
    longest = max(len(src.name), len(tgt.name))
    name = 1.0 - edit_distance(src.name, tgt.name) / longest if longest else 1.0
    decl = multiset_jaccard(normalized_tokens(src.declaration), normalized_tokens(tgt.declaration))
    body = multiset_jaccard(normalized_tokens(src.body), normalized_tokens(tgt.body))
    return name + decl + body


def rank_of(query, wanted, functions) -> int:
    """1-based rank of ``wanted`` among ``functions``; ties count against it."""
    target = score(query, wanted)
    better = sum(1 for f in functions if f is not wanted and score(query, f) >= target)
    return better + 1
