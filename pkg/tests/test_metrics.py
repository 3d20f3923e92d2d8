import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cswaug.corpus import tokenize
from cswaug.langid import LangTag
from cswaug.metrics import CswStats, cmi, corpus_stats, pct_en, spf, switch_counts

from oracles import AR_WORDS, EN_WORDS, OTHER_WORDS, brute_metrics


def test_cmi_examples():
    assert cmi(tokenize("انا عايز اجرب")) == 0
    assert cmi(tokenize("انا want اجرب")) == Fraction(1, 2)
    assert cmi(tokenize("انا want اجرب .")) == Fraction(1, 2)
    assert cmi(tokenize(". ? 3")) == 0
    assert cmi(()) == 0


def test_spf_examples():
    assert spf(tokenize("انا want اجرب")) == Fraction(2, 3)
    assert spf(tokenize("i want food")) == 0
    assert spf(tokenize("انا want اجرب food")) == Fraction(3, 4)


def test_pct_en_examples():
    assert pct_en(tokenize("انا want اجرب")) == Fraction(1, 3)
    assert pct_en(tokenize("i want food .")) == 1
    assert pct_en(tokenize("انا عايز")) == 0


def test_mixed_token_counts_english():
    assert pct_en(tokenize("هـimplement انا")) == Fraction(1, 2)


word_st = st.sampled_from(AR_WORDS + EN_WORDS + OTHER_WORDS)


@given(st.lists(word_st, max_size=12))
def test_metric_ranges_and_bounds(words):
    toks = tokenize(words)
    n, _, p = switch_counts(toks)
    assert p <= max(n - 1, 0)
    assert 0 <= cmi(toks) < 1
    assert 0 <= spf(toks) < 1
    assert 0 <= pct_en(toks) <= 1
    langs = {t.lang for t in toks if t.lang is not LangTag.OTHER}
    assert (cmi(toks) == 0) == (len(langs) <= 1)


@given(st.lists(word_st, max_size=10), st.data())
def test_other_tokens_transparent(words, data):
    stripped = [w for w in words if w not in OTHER_WORDS]
    toks, plain = tokenize(words), tokenize(stripped)
    assert cmi(toks) == cmi(plain)
    assert spf(toks) == spf(plain)


@pytest.mark.parametrize("seed", range(20))
def test_metrics_match_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(100):
        words = [rng.choice(AR_WORDS + EN_WORDS + OTHER_WORDS) for _ in range(rng.randint(0, 10))]
        toks = tokenize(words)
        assert (cmi(toks), spf(toks), pct_en(toks)) == brute_metrics(words)


def test_corpus_stats_single():
    s = corpus_stats([tokenize("انا want اجرب")])
    assert s == CswStats(1, 0.5, 2 / 3, 0.0, 1 / 3)


def test_corpus_stats_identical_pair():
    s = corpus_stats([tokenize("انا want اجرب")] * 2)
    assert s.cmi_mean == 0.5 and s.spf_std == 0.0 and s.size == 2


def test_corpus_stats_sample_std():
    # SPFs 2/3 and 0 -> sample std = sqrt(((1/3)^2 * 2) / 1)
    s = corpus_stats([tokenize("انا want اجرب"), tokenize("انا عايز")])
    assert s.spf_std == pytest.approx((2 * (1 / 3) ** 2) ** 0.5)


def test_corpus_stats_empty():
    assert corpus_stats([]) == CswStats(0, 0.0, 0.0, 0.0, 0.0)


def test_stats_json():
    import json

    d = json.loads(corpus_stats([tokenize("انا want")]).to_json("LexDict"))
    assert set(d) == {"technique", "size", "cmi", "spf", "spf_std", "pct_en"}
