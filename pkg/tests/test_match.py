from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import edit_distance, multiset_jaccard, rank_of
from portfix.errors import NoUsageEvidence, OracleError
from portfix.index import FunctionRecord, index_texts
from portfix.lexer import normalized_tokens
from portfix.match import (
    MatcherConfig,
    collect_usage_pairs,
    confirm_equivalent,
    levenshtein,
    name_similarity,
    rank_candidates,
    similarity,
    token_similarity,
)

tokens = st.lists(st.sampled_from(["a", "b", "c", "(", ")", ",", "x_1", "dict"]), max_size=12)


class FixedOracle:
    def __init__(self, answer):
        self.answer = answer
        self.calls = 0

    def choose(self, source, candidates):
        self.calls += 1
        if isinstance(self.answer, Exception):
            raise self.answer
        return self.answer


def test_token_similarity_examples():
    a = normalized_tokens("dict_find ( dict , key )")
    b = normalized_tokens("tv_dict_find ( dict , key )")
    assert token_similarity(a, a) == 1.0
    assert token_similarity(["a"], ["b"]) == 0.0
    assert token_similarity([], []) == 1.0
    assert token_similarity(a, b) == pytest.approx(multiset_jaccard(a, b))
    assert token_similarity(a, b) == pytest.approx(5 / 7)


@settings(max_examples=200, deadline=None)
@given(tokens, tokens)
def test_token_similarity_symmetric_bounded(a, b):
    s = token_similarity(a, b)
    assert 0.0 <= s <= 1.0
    assert s == token_similarity(b, a)
    assert s == pytest.approx(multiset_jaccard(a, b))


@settings(max_examples=200, deadline=None)
@given(st.text("abcd_", max_size=9), st.text("abcd_", max_size=9))
def test_levenshtein_matches_oracle(a, b):
    assert levenshtein(a, b) == edit_distance(a, b)
    assert 0.0 <= name_similarity(a, b) <= 1.0
    assert name_similarity(a, b) == name_similarity(b, a)


def test_name_similarity_values():
    assert name_similarity("dict_find", "tv_dict_find") == pytest.approx(0.75)
    assert name_similarity("", "") == 1.0


def test_config_validation():
    with pytest.raises(ValueError):
        MatcherConfig(top_n=2, top_k=3)
    with pytest.raises(ValueError):
        MatcherConfig(name_threshold=1.5)


def test_breakdown_total(alloc_case):
    fn = alloc_case.src_index.function("ff_create_stack_element")
    br = similarity(fn, fn)
    assert br.total == 3.0 and br.to_dict()["total"] == 3.0


def test_self_retrieval_and_limit(alloc_case):
    idx = alloc_case.src_index
    for fn in idx.all_functions():
        ranked = rank_candidates(fn, idx, MatcherConfig(top_n=3, top_k=1))
        assert ranked[0][0] is fn and ranked[0][1].total == pytest.approx(3.0)
        assert len(ranked) <= 3
        totals = [b.total for _, b in ranked]
        assert totals == sorted(totals, reverse=True)


def test_rank_empty_index():
    assert rank_candidates(FunctionRecord.from_text("void f(void)\n{\n}\n"), index_texts({})) == []


def test_rank_ties_prefer_shorter_body():
    idx = index_texts(
        {
            "a.c": "int g(int x)\n{\n  return x + 1;\n}\n",
            "b.c": "int g(int x)\n{\n  return x + 1;\n}\n",
            "c.c": "int h(int x)\n{\n  return x;\n}\n",
        }
    )
    q = FunctionRecord.from_text("int g(int x)\n{\n  return x + 1;\n}\n")
    ranked = rank_candidates(q, idx)
    assert [(f.file, f.name) for f, _ in ranked[:2]] == [("a.c", "g"), ("b.c", "g")]


def test_alloc_counterpart_in_top5(alloc_case):
    src = alloc_case.src_index.function("ff_create_stack_element")
    ranked = rank_candidates(src, alloc_case.tgt_index)
    assert "ff_create_stack_element" in [f.name for f, _ in ranked[:5]]


def test_confirm_short_circuit(alloc_case):
    fn = alloc_case.src_index.function("ff_create_stack_element")
    oracle = FixedOracle(None)
    assert confirm_equivalent(fn, [(fn, similarity(fn, fn))], oracle) is fn
    assert oracle.calls == 0


def test_confirm_oracle_choice_and_none(alloc_case):
    src = alloc_case.src_index.function("ff_create_stack_element")
    ranked = rank_candidates(src, alloc_case.tgt_index)
    assert ranked[0][1].total < 3.0
    want = next(k for k, (f, _) in enumerate(ranked) if f.name == "ff_create_stack_element")
    assert confirm_equivalent(src, ranked, FixedOracle(want)).name == "ff_create_stack_element"
    assert confirm_equivalent(src, ranked, FixedOracle(None)) is None
    assert confirm_equivalent(src, [], FixedOracle(0)) is None


def test_confirm_oracle_failure_fallback(alloc_case):
    src = alloc_case.src_index.function("ff_create_stack_element")
    ranked = rank_candidates(src, alloc_case.tgt_index)
    trace = []
    got = confirm_equivalent(src, ranked, FixedOracle(OracleError("garbled")), trace)
    expected = ranked[0][0] if ranked[0][1].total >= 2.0 else None
    assert got is expected
    assert trace and trace[0]["event"] == "oracle_fallback"
    # a weak top candidate is not used as a fallback
    weak = [(ranked[-1][0], type(ranked[-1][1])(0.1, 0.1, 0.1))]
    assert confirm_equivalent(src, weak, FixedOracle(OracleError("x"))) is None


def test_alloc_usage_pair(alloc_case):
    pairs = collect_usage_pairs(
        "ALLOC_ONE", alloc_case.src_index, alloc_case.tgt_index, MatcherConfig(),
        FixedOracle(0), exclude_names=("ff_create_visited",),
    )
    assert [(p.source_function.name, p.target_function.name) for p in pairs] == [
        ("ff_create_stack_element", "ff_create_stack_element")
    ]
    assert "ALLOC_ONE" in pairs[0].source_function.text
    assert "xmalloc(sizeof(" in pairs[0].target_function.text


def test_no_usage_evidence(alloc_case):
    with pytest.raises(NoUsageEvidence):
        collect_usage_pairs("never_used_anywhere", alloc_case.src_index, alloc_case.tgt_index, MatcherConfig(), FixedOracle(0))


def _usage_world(n_users: int, rng: random.Random):
    src = {"defs.h": "#define WIDGET(x) ((x) * 2)\nint base(int v);\n"}
    tgt = {"defs.h": "int widget(int x);\nint base(int v);\n"}
    src_c, tgt_c = [], []
    for k in range(n_users):
        pad = "\n".join(f"  v = v + {j};" for j in range(rng.randrange(1, 8)))
        name = f"user_{k}"
        tname = name if rng.random() < 0.6 else f"zz{k}_renamed_fn"
        src_c.append(f"int {name}(int v)\n{{\n{pad}\n  return WIDGET(v);\n}}\n")
        tgt_c.append(f"int {tname}(int v)\n{{\n{pad}\n  return widget(v);\n}}\n")
    src["u.c"] = "\n".join(src_c)
    tgt["u.c"] = "\n".join(tgt_c)
    return index_texts(src), index_texts(tgt)


def _brute_force_pairs(ident, src, tgt, config):
    """Enumerate every source user, score every target, filter, sort."""
    out = []
    for fn in src.all_functions():
        if ident not in normalized_tokens(fn.body):
            continue
        best = max(tgt.all_functions(), key=lambda t: (round(similarity(fn, t).total, 12), -len(t.token_cache.body)))
        br = similarity(fn, best)
        if br.name >= config.name_threshold and br.body >= config.body_threshold:
            out.append((len(fn.token_cache.body) + len(best.token_cache.body), fn.name, best.name))
    return sorted(out)[: config.top_k]


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_usage_pairs_match_brute_force(seed):
    src, tgt = _usage_world(10, random.Random(seed))
    config = MatcherConfig()
    oracle = FixedOracle(0)
    pairs = collect_usage_pairs("WIDGET", src, tgt, config, oracle)
    got = [(p.combined_length, p.source_function.name, p.target_function.name) for p in pairs]
    assert got == _brute_force_pairs("WIDGET", src, tgt, config)
    assert len(pairs) <= config.top_k
    lengths = [p.combined_length for p in pairs]
    assert lengths == sorted(lengths)
    for p in pairs:
        assert p.breakdown.name >= config.name_threshold and p.breakdown.body >= config.body_threshold


@pytest.mark.parametrize("seed", [4, 5])
def test_raising_name_threshold_never_adds_pairs(seed):
    src, tgt = _usage_world(10, random.Random(seed))
    prev = None
    for th in (0.0, 0.3, 0.5, 0.7, 0.9, 1.0):
        # top_k above the user count: truncation to the k shortest would
        # otherwise let longer pairs in once shorter ones are filtered out
        cfg = MatcherConfig(top_k=20, top_n=20, name_threshold=th)
        got = {(p.source_function.name, p.target_function.name)
               for p in collect_usage_pairs("WIDGET", src, tgt, cfg, FixedOracle(0))}
        if prev is not None:
            assert got <= prev
        prev = got


def test_threshold_exclusion():
    src = index_texts({"a.c": "#define K 1\nint alpha_function(void)\n{\n  return K;\n}\n"})
    tgt = index_texts({"a.c": "int zq(void)\n{\n  return 1;\n}\n"})
    assert collect_usage_pairs("K", src, tgt, MatcherConfig(), FixedOracle(0)) == []


def test_collect_deterministic(alloc_case):
    def run():
        return [p.to_dict() for p in collect_usage_pairs(
            "ALLOC_ONE", alloc_case.src_index, alloc_case.tgt_index, MatcherConfig(), FixedOracle(0))]
    assert run() == run()


def test_rank_agrees_with_brute_force_oracle():
    from portfix.bench.generate import synthetic_corpus

    idx = index_texts(synthetic_corpus(30, seed=5))
    allf = list(idx.all_functions())
    for fn in allf[:10]:
        ranked = rank_candidates(fn, idx, MatcherConfig(top_n=5, top_k=3))
        for pos, (cand, _) in enumerate(ranked, 1):
            assert rank_of(fn, cand, allf) >= pos or pos == 1
        assert rank_of(fn, fn, allf) == 1 and ranked[0][0] is fn
