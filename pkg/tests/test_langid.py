import pytest
from hypothesis import given, strategies as st

from cswaug.corpus import tokenize
from cswaug.errors import UsageError
from cswaug.langid import LangTag, classify_token, is_csw, is_mixed_script


@pytest.mark.parametrize(
    "word, lang",
    [
        ("عايز", LangTag.ARABIC),
        ("algorithm", LangTag.ENGLISH),
        ("3", LangTag.OTHER),
        ("٣", LangTag.OTHER),
        ("?", LangTag.OTHER),
        ("؟", LangTag.OTHER),
        ("café", LangTag.ENGLISH),
        ("الـalgorithm", LangTag.ENGLISH),
    ],
)
def test_classify_token(word, lang):
    assert classify_token(word) is lang


def test_mixed_flag():
    assert is_mixed_script("هـimplement")
    assert not is_mixed_script("implement")
    assert tokenize("هـimplement")[0].mixed


def test_empty_token_rejected():
    with pytest.raises(UsageError):
        classify_token("")


@pytest.mark.parametrize(
    "text, expected",
    [("انا want اجرب", True), ("i want food", False), ("٣ ٤ !", False), ("", False)],
)
def test_is_csw(text, expected):
    assert is_csw(tokenize(text)) is expected


@given(st.text(min_size=1).filter(lambda s: not any(c.isspace() for c in s)))
def test_classify_total_and_deterministic(word):
    assert classify_token(word) is classify_token(word)


@given(st.lists(st.sampled_from(["انا", "want", ".", "٣", "food", "اكل"]), max_size=8))
def test_is_csw_order_independent(words):
    assert is_csw(words) == is_csw(list(reversed(words)))
