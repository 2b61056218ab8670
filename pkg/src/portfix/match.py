"""Cross-codebase function matching and usage-pair selection."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Collection, List, Optional, Protocol, Sequence, Tuple

from .errors import NoUsageEvidence, OracleError
from .index import CodebaseIndex, FunctionRecord, find_usages

log = logging.getLogger(__name__)

EXACT_TOTAL = 3.0
FALLBACK_MIN_TOTAL = 2.0


@dataclass(frozen=True)
class MatcherConfig:
    top_n: int = 5
    top_k: int = 3
    name_threshold: float = 0.5
    body_threshold: float = 0.3

    def __post_init__(self):
        if self.top_n < 1 or self.top_k < 1:
            raise ValueError("top_n and top_k must be positive")
        if self.top_k > self.top_n:
            raise ValueError("top_k must not exceed top_n")
        for v in (self.name_threshold, self.body_threshold):
            if not 0.0 <= v <= 1.0:
                raise ValueError("thresholds must lie in [0, 1]")


@dataclass(frozen=True)
class SimilarityBreakdown:
    name: float
    declaration: float
    body: float

    @property
    def total(self) -> float:
        return self.name + self.declaration + self.body

    def to_dict(self) -> dict:
        return {
            "name": round(self.name, 6),
            "declaration": round(self.declaration, 6),
            "body": round(self.body, 6),
            "total": round(self.total, 6),
        }


@dataclass(frozen=True)
class UsagePair:
    identifier: str
    source_function: FunctionRecord
    target_function: FunctionRecord
    breakdown: SimilarityBreakdown
    combined_length: int

    def to_dict(self) -> dict:
        return {
            "identifier": self.identifier,
            "source_function": self.source_function.to_dict(),
            "target_function": self.target_function.to_dict(),
            "breakdown": self.breakdown.to_dict(),
            "combined_length": self.combined_length,
        }


class EquivalenceOracle(Protocol):
    def choose(self, source: FunctionRecord, candidates: Sequence[FunctionRecord]) -> Optional[int]:
        """0-based index of the equivalent candidate, or None.

        Raises OracleError when no usable answer could be obtained.
        """


# ---------------------------------------------------------------------------
# similarity primitives


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def name_similarity(a: str, b: str) -> float:
    """1 - edit distance / longer length; two empty names are identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def _bag_jaccard(a: Counter, b: Counter) -> float:
    if not a and not b:
        return 1.0
    inter = sum((a & b).values())
    union = sum((a | b).values())
    return inter / union


def token_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """Multiset Jaccard similarity of two token sequences."""
    return _bag_jaccard(Counter(a), Counter(b))


def similarity(src: FunctionRecord, tgt: FunctionRecord) -> SimilarityBreakdown:
    s, t = src.token_cache, tgt.token_cache
    return SimilarityBreakdown(
        name_similarity(src.name, tgt.name),
        _bag_jaccard(s.declaration_bag, t.declaration_bag),
        _bag_jaccard(s.body_bag, t.body_bag),
    )


# ---------------------------------------------------------------------------
# ranking and selection


def _rank_key(item: Tuple[FunctionRecord, SimilarityBreakdown]):
    fn, br = item
    return (-round(br.total, 12), len(fn.token_cache.body), fn.file, fn.name, fn.span)


def rank_candidates(
    src_func: FunctionRecord,
    target_index: CodebaseIndex,
    config: MatcherConfig = MatcherConfig(),
    exclude_names: Collection[str] = (),
) -> List[Tuple[FunctionRecord, SimilarityBreakdown]]:
    scored = [
        (fn, similarity(src_func, fn))
        for fn in target_index.all_functions()
        if fn.name not in exclude_names
    ]
    scored.sort(key=_rank_key)
    return scored[: config.top_n]


def confirm_equivalent(
    src_func: FunctionRecord,
    candidates: Sequence[Tuple[FunctionRecord, SimilarityBreakdown]],
    oracle: EquivalenceOracle,
    trace: Optional[list] = None,
) -> Optional[FunctionRecord]:
    if not candidates:
        return None
    top, top_br = candidates[0]
    if abs(top_br.total - EXACT_TOTAL) < 1e-9:
        return top
    try:
        choice = oracle.choose(src_func, [c for c, _ in candidates])
    except OracleError as exc:
        fallback = top if top_br.total >= FALLBACK_MIN_TOTAL else None
        if trace is not None:
            trace.append(
                {
                    "event": "oracle_fallback",
                    "source": src_func.name,
                    "error": str(exc),
                    "chosen": fallback.name if fallback else None,
                }
            )
        return fallback
    if choice is None or not 0 <= choice < len(candidates):
        return None
    return candidates[choice][0]


def collect_usage_pairs(
    identifier: str,
    src_index: CodebaseIndex,
    tgt_index: CodebaseIndex,
    config: MatcherConfig,
    oracle: EquivalenceOracle,
    exclude_names: Collection[str] = (),
    trace: Optional[list] = None,
) -> List[UsagePair]:
    """Matched (source, target) function pairs showing how ``identifier`` maps.

    Raises NoUsageEvidence if the source never uses the identifier; an
    empty list means usages exist but none yielded an acceptable pair.
    """
    seen = set()
    sources: List[FunctionRecord] = []
    for use in find_usages(src_index, identifier):
        key = (use.file, use.enclosing_function)
        if key in seen or use.enclosing_function in exclude_names:
            continue
        seen.add(key)
        try:
            sources.append(src_index.function(use.enclosing_function, use.file))
        except Exception:  # ambiguous same-file duplicates: skip
            continue
    if not sources:
        raise NoUsageEvidence(f"{identifier!r} is not used in the source codebase")

    pairs = []
    for src_fn in sources:
        ranked = rank_candidates(src_fn, tgt_index, config, exclude_names)
        match = confirm_equivalent(src_fn, ranked, oracle, trace)
        if match is None:
            continue
        br = next(b for f, b in ranked if f is match)
        if br.name < config.name_threshold or br.body < config.body_threshold:
            continue
        length = len(src_fn.token_cache.body) + len(match.token_cache.body)
        pairs.append(UsagePair(identifier, src_fn, match, br, length))
    pairs.sort(
        key=lambda p: (
            p.combined_length,
            p.source_function.file,
            p.source_function.name,
            p.target_function.file,
            p.target_function.name,
        )
    )
    return pairs[: config.top_k]
