"""Lexical replacement augmenters: dictionary glosses, random aligned
words/segments, and classifier-predicted segments."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from ._util import as_fraction, round_half_up, sentence_rng
from .align import DEFAULT_MAX_LEN, SegmentPair, extract_segments
from .augmentation import Augmentation, Replacement, Technique, make_augmentation
from .errors import FormatError, StructuralError, UsageError
from .langid import LangTag

DEFAULT_PERCENT = 0.19


@dataclass
class GlossLexicon:
    entries: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        for key, glosses in self.entries.items():
            if not key or not glosses:
                raise FormatError(f"lexicon entry {key!r} needs a key and at least one gloss")

    def first_gloss(self, word: str) -> list[str] | None:
        glosses = self.entries.get(word)
        return glosses[0].split() if glosses else None

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path) -> "GlossLexicon":
        """TSV: Arabic key, then one gloss per column (multi-word glosses keep
        their spaces). Repeated keys append glosses in file order."""
        entries: dict[str, list[str]] = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            cols = [c.strip() for c in line.split("\t")]
            glosses = [c for c in cols[1:] if c]
            if not cols[0] or not glosses:
                raise FormatError(f"{path}:{lineno}: lexicon line needs a key and a gloss")
            entries.setdefault(cols[0], []).extend(glosses)
        return cls(entries)


def load_labels(path) -> dict[str, tuple[int, ...]]:
    """Prediction labels, one ``id<TAB>0 1 0`` line per sentence."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        sid, _, labels = line.partition("\t")
        try:
            values = tuple(int(x) for x in labels.split())
        except ValueError:
            raise FormatError(f"{path}:{lineno}: labels must be 0/1 integers") from None
        if any(v not in (0, 1) for v in values):
            raise FormatError(f"{path}:{lineno}: labels must be 0/1 integers")
        out[sid] = values
    return out


def write_labels(labels: Mapping[str, Sequence[int]], out) -> None:
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_labels(labels, fh)
        return
    for sid, values in labels.items():
        out.write(f"{sid}\t{' '.join(str(v) for v in values)}\n")


def _check_percent(percent):
    p = as_fraction(percent)
    if not (0 < p <= 1):
        raise UsageError(f"percent must be in (0, 1], got {percent}")
    return p


def lex_dict(sentence, lexicon: GlossLexicon, percent=DEFAULT_PERCENT, seed: int = 0, select=None):
    """Replace a random share of the Arabic source words by their first gloss.

    ``select`` forces the chosen source positions instead of sampling.
    """
    p = _check_percent(percent)
    arabic = [k for k, t in enumerate(sentence.src) if t.lang is LangTag.ARABIC]
    if select is None:
        n = min(round_half_up(p * len(arabic)), len(arabic))
        chosen = sorted(sentence_rng(seed, sentence.id, "dict").sample(arabic, n))
    else:
        chosen = sorted(select)
    reps = []
    for k in chosen:
        gloss = lexicon.first_gloss(sentence.src[k].surface)
        if gloss:
            reps.append((Replacement(k, k + 1), gloss))
    return make_augmentation(sentence, Technique.LEX_DICT, reps)


def lex_rand_word(sentence, percent=DEFAULT_PERCENT, seed: int = 0, select=None):
    """Swap a random share of 1:1-aligned source words for their target words."""
    p = _check_percent(percent)
    bad = sentence.alignment.many_to_many_link()
    if bad is not None:
        raise UsageError(
            f"sentence {sentence.id}: word replacement needs 1:1 (intersection) links, "
            f"found many-to-many link {bad[0]}-{bad[1]}"
        )
    src_to_tgt = dict(sentence.alignment.links)
    if select is None:
        aligned = sorted(src_to_tgt)
        n = min(round_half_up(p * len(sentence.src)), len(aligned))
        chosen = sorted(sentence_rng(seed, sentence.id, "word").sample(aligned, n))
    else:
        chosen = sorted(select)
    reps = [Replacement(i, i + 1, src_to_tgt[i], src_to_tgt[i] + 1) for i in chosen if i in src_to_tgt]
    return make_augmentation(sentence, Technique.LEX_RAND_WORD, reps)


def _english_count(sentence, chosen: Sequence[SegmentPair]) -> int:
    count = sum(1 for t in sentence.src if t.lang is LangTag.ENGLISH)
    for seg in chosen:
        count -= sum(1 for t in sentence.src[seg.s_lo:seg.s_hi] if t.lang is LangTag.ENGLISH)
        count += sum(1 for t in sentence.tgt[seg.t_lo:seg.t_hi] if t.lang is LangTag.ENGLISH)
    return count


def lex_rand_segment(sentence, percent=DEFAULT_PERCENT, seed: int = 0, max_len: int = DEFAULT_MAX_LEN, select=None):
    """Swap random non-overlapping aligned segments until the mixed source holds
    at least ``round(percent * |src|)`` English tokens.

    Returns None if the segments run out before the threshold is reached.
    """
    p = _check_percent(percent)
    if select is not None:
        chosen = list(select)
    else:
        threshold = round_half_up(p * len(sentence.src))
        rng = sentence_rng(seed, sentence.id, "segment")
        available = extract_segments(sentence, max_len)
        chosen = []
        while available and _english_count(sentence, chosen) < threshold:
            seg = rng.choice(available)
            chosen.append(seg)
            available = [c for c in available if not c.overlaps(seg)]
        if _english_count(sentence, chosen) < threshold:
            return None
    reps = [Replacement(*seg) for seg in chosen]
    return make_augmentation(sentence, Technique.LEX_RAND_SEG, reps)


def label_runs(labels: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of 1-labels as half-open [start, end) intervals."""
    runs, start = [], None
    for k, v in enumerate(list(labels) + [0]):
        if v and start is None:
            start = k
        elif not v and start is not None:
            runs.append((start, k))
            start = None
    return runs


def lex_pred(sentence, labels: Sequence[int], max_len: int = DEFAULT_MAX_LEN):
    """Insert the target words a classifier marked as likely switches.

    Each run of 1-labels is mapped to the smallest consistent segment whose
    target side covers it; runs without one are skipped, and a segment that
    overlaps an earlier choice loses.
    """
    if len(labels) != len(sentence.tgt):
        raise StructuralError(
            f"sentence {sentence.id}: {len(labels)} labels for {len(sentence.tgt)} target tokens"
        )
    segments = extract_segments(sentence, max_len)
    chosen: list[SegmentPair] = []
    for a, b in label_runs(labels):
        covering = [s for s in segments if s.t_lo <= a and s.t_hi >= b]
        if not covering:
            continue
        best = min(covering, key=lambda s: (s.t_hi - s.t_lo, s.s_hi - s.s_lo, s.s_lo, s.t_lo))
        if any(best.overlaps(c) for c in chosen):
            continue
        chosen.append(best)
    return make_augmentation(sentence, Technique.LEX_PRED, [Replacement(*s) for s in chosen])
