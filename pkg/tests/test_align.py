import random

import pytest
from hypothesis import given, strategies as st

from cswaug.align import AlignmentSet, SegmentPair, extract_segments, is_consistent, order_preserving, parse_pharaoh, union
from cswaug.corpus import BiSentence
from cswaug.errors import FormatError

from oracles import brute_segments, random_sentence

links_st = st.frozensets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=10)
label_st = st.sampled_from(["", "intersection", "grow-diag-final-word", "grow-diag-final-stem"])
aset_st = st.builds(AlignmentSet, links_st, label_st)


def test_union_examples():
    a = AlignmentSet({(0, 0)}, "grow-diag-final-word")
    b = AlignmentSet({(1, 1)}, "grow-diag-final-stem")
    u = union(a, b)
    assert u.links == {(0, 0), (1, 1)}
    assert u.label == "grow-diag-final-stem+grow-diag-final-word"
    assert union(a, a) == a
    assert union(AlignmentSet(), a).links == a.links


@given(aset_st, aset_st, aset_st)
def test_union_algebra(a, b, c):
    assert union(a, b) == union(b, a)
    assert union(union(a, b), c) == union(a, union(b, c))
    assert union(a, a).links == a.links


def test_pharaoh_roundtrip():
    line = "0-0 1-1 1-2 2-3"
    assert AlignmentSet.from_pharaoh(line).to_pharaoh() == line
    assert parse_pharaoh("") == frozenset()
    with pytest.raises(FormatError):
        parse_pharaoh("0-x")


def test_many_to_many_detection():
    assert AlignmentSet({(0, 0), (1, 1)}).is_one_to_one()
    assert AlignmentSet({(0, 0), (1, 1), (1, 2)}).many_to_many_link() == (1, 1)


def test_italian_segments(italian):
    segs = extract_segments(italian)
    # اكل ايطالي <-> Italian food
    assert SegmentPair(3, 5, 4, 6) in segs
    # اكل alone with food alone is consistent too (single 1:1 link), but crossing
    assert SegmentPair(3, 4, 5, 6) in segs
    assert not order_preserving(italian, SegmentPair(3, 4, 5, 6))
    # عايز <-> want to
    assert SegmentPair(1, 2, 1, 3) in segs
    assert SegmentPair(1, 2, 1, 2) not in segs


def test_monotone_three():
    s = BiSentence("m", "ا ب ت", "a b c", "0-0 1-1 2-2")
    assert extract_segments(s, 3) == [
        (0, 1, 0, 1), (0, 2, 0, 2), (0, 3, 0, 3), (1, 2, 1, 2), (1, 3, 1, 3), (2, 3, 2, 3)
    ]
    assert brute_segments(3, 3, {(0, 0), (1, 1), (2, 2)}, 3) == extract_segments(s, 3)


def test_empty_alignment():
    assert extract_segments(BiSentence("e", "ا ب", "a b")) == []


def test_unaligned_edges_extend_target():
    s = BiSentence("u", "ا ب", "x a y", "0-1")
    segs = extract_segments(s)
    assert {(0, 1, 0, 2), (0, 1, 1, 2), (0, 1, 1, 3), (0, 1, 0, 3)} <= set(segs)


def test_max_len():
    s = BiSentence("m", "ا ب ت", "a b c", "0-0 1-1 2-2")
    assert all(p.s_hi - p.s_lo <= 1 for p in extract_segments(s, 1))


def test_order_preserving_italian(italian):
    assert order_preserving(italian, SegmentPair(2, 3, 3, 4))  # اجرب <-> try
    assert not order_preserving(italian, SegmentPair(4, 5, 4, 5))  # ايطالي <-> Italian
    assert order_preserving(italian, SegmentPair(0, 6, 0, 7))


@pytest.mark.parametrize("seed", range(200))
def test_extract_matches_brute_force(seed):
    rng = random.Random(seed)
    src, tgt, links = random_sentence(rng)
    s = BiSentence(f"r{seed}", src, tgt, AlignmentSet(links))
    got = extract_segments(s, max_len=4)
    assert got == brute_segments(len(src), len(tgt), links, max_len=4)
    for pair in got:
        assert is_consistent(links, pair)


@pytest.mark.parametrize("seed", range(50))
def test_whole_sentence_always_order_preserving(seed):
    src, tgt, links = random_sentence(random.Random(seed))
    s = BiSentence("w", src, tgt, AlignmentSet(links))
    assert order_preserving(s, SegmentPair(0, len(src), 0, len(tgt)))
