"""Switch labels for classifier training, derived from real code-switched
parallel sentences."""

from __future__ import annotations

from collections import Counter

from .langid import LangTag


def tag_targets(sentence) -> list[int]:
    """Label target word j with 1 iff it matches (case-insensitively) an English
    word on the source side.

    Matching is greedy left to right over the target, and each source English
    word can be consumed by one target word only.
    """
    pool = Counter(t.surface.lower() for t in sentence.src if t.lang is LangTag.ENGLISH)
    labels = []
    for tok in sentence.tgt:
        key = tok.surface.lower()
        if pool[key] > 0:
            pool[key] -= 1
            labels.append(1)
        else:
            labels.append(0)
    return labels


def tag_corpus(corpus) -> dict[str, list[int]]:
    return {s.id: tag_targets(s) for s in corpus}
