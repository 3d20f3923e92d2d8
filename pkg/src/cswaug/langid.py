"""Script-based token language identification.

Arabic and English use disjoint scripts, so a token's language follows from
the letters it contains. Digits (Western and Eastern Arabic), punctuation and
symbols are language-independent and tagged ``Other``.
"""

from __future__ import annotations

import enum
import unicodedata
from typing import Iterable

from .errors import UsageError

_ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)
# Basic Latin plus Latin-1 Supplement / Extended-A / Extended-B letters.
_LATIN_EXTRA = (0x00C0, 0x024F)


class LangTag(str, enum.Enum):
    ARABIC = "ar"
    ENGLISH = "en"
    OTHER = "other"


def _is_arabic_letter(ch: str) -> bool:
    cp = ord(ch)
    if not any(lo <= cp <= hi for lo, hi in _ARABIC_RANGES):
        return False
    # tatweel (Lm) and letters count; Arabic digits, punctuation, lone marks do not
    return unicodedata.category(ch).startswith("L")


def _is_latin_letter(ch: str) -> bool:
    if ("a" <= ch <= "z") or ("A" <= ch <= "Z"):
        return True
    cp = ord(ch)
    return _LATIN_EXTRA[0] <= cp <= _LATIN_EXTRA[1] and unicodedata.category(ch).startswith("L")


def _scripts(surface: str) -> tuple[bool, bool]:
    if not surface:
        raise UsageError("cannot classify an empty token")
    has_ar = has_en = False
    for ch in surface:
        if ch.isspace():
            raise UsageError(f"token contains whitespace: {surface!r}")
        has_ar = has_ar or _is_arabic_letter(ch)
        has_en = has_en or _is_latin_letter(ch)
    return has_ar, has_en


def classify_token(surface: str) -> LangTag:
    """Return the language of a single token.

    Mixed-script tokens (an Arabic clitic glued to an English stem) count as
    English; :func:`is_mixed_script` reports them.
    """
    has_ar, has_en = _scripts(surface)
    if has_en:
        return LangTag.ENGLISH
    if has_ar:
        return LangTag.ARABIC
    return LangTag.OTHER


def is_mixed_script(surface: str) -> bool:
    has_ar, has_en = _scripts(surface)
    return has_ar and has_en


def is_csw(tokens: Iterable) -> bool:
    """True iff the sequence holds at least one Arabic and one English token.

    Accepts :class:`~cswaug.corpus.Token` objects or plain strings.
    """
    seen_ar = seen_en = False
    for tok in tokens:
        lang = tok.lang if hasattr(tok, "lang") else classify_token(tok)
        if lang is LangTag.ARABIC:
            seen_ar = True
        elif lang is LangTag.ENGLISH:
            seen_en = True
        if seen_ar and seen_en:
            return True
    return False
