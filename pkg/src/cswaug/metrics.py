"""Sentence- and corpus-level code-switching metrics.

Only language-dependent tokens (Arabic or English) enter the counts; ``Other``
tokens such as punctuation and digits are transparent, so a switch is counted
between the nearest language-dependent neighbours.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .langid import LangTag, classify_token

_LANGS = (LangTag.ARABIC, LangTag.ENGLISH)


def _langs(tokens) -> list[LangTag]:
    out = []
    for t in tokens:
        lang = t.lang if hasattr(t, "lang") else classify_token(t)
        if lang in _LANGS:
            out.append(lang)
    return out


def switch_counts(tokens) -> tuple[int, int, int]:
    """(N, max language count, P) over the language-dependent tokens."""
    langs = _langs(tokens)
    n = len(langs)
    if n == 0:
        return 0, 0, 0
    max_l = max(Counter(langs).values())
    p = sum(1 for a, b in zip(langs, langs[1:]) if a != b)
    return n, max_l, p


def cmi(tokens) -> Fraction:
    """Code-mixing index: (0.5 (N - max_L) + 0.5 P) / N, 0 for N = 0."""
    n, max_l, p = switch_counts(tokens)
    if n == 0:
        return Fraction(0)
    return (Fraction(n - max_l, 2) + Fraction(p, 2)) / n


def spf(tokens) -> Fraction:
    """Switch-point fraction P / N."""
    n, _, p = switch_counts(tokens)
    return Fraction(p, n) if n else Fraction(0)


def pct_en(tokens) -> Fraction:
    """Share of English among language-dependent tokens (a fraction in [0, 1])."""
    langs = _langs(tokens)
    if not langs:
        return Fraction(0)
    return Fraction(sum(1 for l in langs if l is LangTag.ENGLISH), len(langs))


@dataclass(frozen=True)
class CswStats:
    size: int
    cmi_mean: float
    spf_mean: float
    spf_std: float
    pct_en_mean: float

    def to_json(self, technique: str = "") -> str:
        return json.dumps(
            {
                "technique": technique,
                "size": self.size,
                "cmi": self.cmi_mean,
                "spf": self.spf_mean,
                "spf_std": self.spf_std,
                "pct_en": self.pct_en_mean,
            },
            ensure_ascii=False,
            sort_keys=False,
        )


def _mean(values: Sequence[Fraction]) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def _sample_std(values: Sequence[Fraction]) -> float:
    if len(values) < 2:
        return 0.0
    m = _mean(values)
    var = sum(((v - m) ** 2 for v in values), Fraction(0)) / (len(values) - 1)
    return math.sqrt(var)


def corpus_stats(augs: Iterable) -> CswStats:
    """Means over sentences and sample standard deviation of SPF.

    Accepts Augmentations (uses their stored metrics) or token sequences.
    Sums are exact rationals, so the result does not depend on input order.
    """
    cmis, spfs, pcts = [], [], []
    for a in augs:
        if hasattr(a, "cmi"):
            cmis.append(a.cmi)
            spfs.append(a.spf)
            pcts.append(a.pct_en)
        else:
            cmis.append(cmi(a))
            spfs.append(spf(a))
            pcts.append(pct_en(a))
    if not cmis:
        return CswStats(0, 0.0, 0.0, 0.0, 0.0)
    return CswStats(
        size=len(cmis),
        cmi_mean=float(_mean(cmis)),
        spf_mean=float(_mean(spfs)),
        spf_std=_sample_std(spfs),
        pct_en_mean=float(_mean(pcts)),
    )
