"""Linguistically constrained generation (Equivalence Constraint, Matrix
Language Frame) and candidate sampling.

Both generators enumerate sets of disjoint consistent segment pairs and
substitute the target side into the Arabic source. Enumeration is depth-first
over segments sorted by ``(s_lo, s_hi, t_lo, t_hi)``, which visits subsets in
lexicographic order, so truncation at ``max_candidates`` is reproducible.
"""

from __future__ import annotations

import enum
import io
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from ._util import as_fraction, sentence_rng
from .align import DEFAULT_MAX_LEN, SegmentPair, extract_segments, is_consistent, order_preserving
from .augmentation import Augmentation, Replacement, Technique, apply_replacements, inserted_tokens, make_augmentation
from .errors import UsageError

DEFAULT_MAX_CANDIDATES = 1000
DEFAULT_SPF_REFERENCE = Fraction(22, 100)

# determiners, prepositions/subordinators, coordinators, infinitival "to",
# possessives, modals, existential "there", particles
CLOSED_CLASS_TAGS = frozenset(
    {"DT", "PDT", "WDT", "CC", "IN", "TO", "PRP$", "WP$", "POS", "MD", "EX", "RP"}
)
AUXILIARY_FORMS = frozenset(
    {
        "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m",
        "have", "has", "had", "having", "'ve", "'d",
        "do", "does", "did", "doing", "done",
    }
)


class Theory(str, enum.Enum):
    EC = "EC"
    MLF = "MLF"


@dataclass(frozen=True)
class SPFReference:
    mean_spf: Fraction = DEFAULT_SPF_REFERENCE

    def __post_init__(self):
        value = as_fraction(self.mean_spf)
        if not (0 <= value <= 1):
            raise UsageError(f"SPF reference must lie in [0, 1], got {self.mean_spf}")
        object.__setattr__(self, "mean_spf", value)


@dataclass(frozen=True)
class GenerationSet:
    sentence_id: str
    candidates: tuple[Augmentation, ...]
    theory: Theory

    def __len__(self) -> int:
        return len(self.candidates)


def load_closed_class(path) -> frozenset[str]:
    """One POS tag per line; blank lines and ``#`` comments ignored."""
    tags = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tags.add(line)
    return frozenset(tags)


def is_closed_class(tag: str, word: str, closed_tags: frozenset[str] = CLOSED_CLASS_TAGS) -> bool:
    if tag in closed_tags:
        return True
    return tag.startswith("VB") and word.lower() in AUXILIARY_FORMS


def is_complete(aug: Augmentation, sentence) -> bool:
    """Every source token survives or sits inside a span whose replacement is
    present verbatim in the mixed source."""
    spans = sorted(aug.replaced_spans, key=lambda r: r.s_lo)
    prev_hi = 0
    for r in spans:
        if r.s_lo < prev_hi or not (0 <= r.s_lo < r.s_hi <= len(sentence.src)):
            return False
        if not r.is_gloss and not (0 <= r.t_lo < r.t_hi <= len(sentence.tgt)):
            return False
        prev_hi = r.s_hi
    pairs = inserted_tokens(aug, sentence)
    tgt_words = [t.surface for t in sentence.tgt]
    for r, words in pairs:
        if not r.is_gloss and words != tgt_words[r.t_lo:r.t_hi]:
            return False
    return apply_replacements(sentence, pairs) == [t.surface for t in aug.mixed_src]


def _enumerate(sentence, segments: Sequence[SegmentPair], technique: Technique, max_candidates: int) -> list[Augmentation]:
    out: list[Augmentation] = []
    seen: set[str] = set()
    chosen: list[SegmentPair] = []

    def emit() -> None:
        aug = make_augmentation(sentence, technique, [Replacement(*s) for s in chosen])
        if aug is None or aug.mixed_text in seen or not is_complete(aug, sentence):
            return
        seen.add(aug.mixed_text)
        out.append(aug)

    def dfs(start: int) -> None:
        for k in range(start, len(segments)):
            if len(out) >= max_candidates:
                return
            seg = segments[k]
            if chosen and seg.s_lo < chosen[-1].s_hi:
                continue
            if any(seg.t_lo < c.t_hi and c.t_lo < seg.t_hi for c in chosen):
                continue
            chosen.append(seg)
            emit()
            dfs(k + 1)
            chosen.pop()

    if max_candidates >= 1:
        dfs(0)
    return out


def ec_segments(sentence, max_len: int = DEFAULT_MAX_LEN, use_tree: bool = True) -> list[SegmentPair]:
    """Consistent segments that can be switched without crossing links; if the
    sentence carries a tree, only segments whose target side is a constituent."""
    segs = [s for s in extract_segments(sentence, max_len) if order_preserving(sentence, s)]
    if use_tree and sentence.tree is not None:
        spans = {(n.start, n.end) for n in sentence.tree.constituents()}
        segs = [s for s in segs if (s.t_lo, s.t_hi) in spans]
    return segs


def generate_ec(sentence, max_candidates: int = DEFAULT_MAX_CANDIDATES, max_len: int = DEFAULT_MAX_LEN, use_tree: bool = True) -> GenerationSet:
    segs = ec_segments(sentence, max_len, use_tree)
    return GenerationSet(sentence.id, tuple(_enumerate(sentence, segs, Technique.EC, max_candidates)), Theory.EC)


def mlf_units(sentence, max_len: int = DEFAULT_MAX_LEN, closed_tags: frozenset[str] = CLOSED_CLASS_TAGS) -> list[SegmentPair]:
    """Target constituents insertable into the Arabic frame.

    A constituent qualifies when its yield projects through the alignment onto
    a source span forming a consistent pair, and at least one of its words is
    open-class.
    """
    tree = sentence.tree
    if tree is None:
        raise UsageError(f"sentence {sentence.id}: matrix-language generation needs a target parse tree")
    tags = tree.pos_tags()
    words = [t.surface for t in sentence.tgt]
    links = sentence.alignment.links
    units = set()
    for node in tree.constituents():
        if all(is_closed_class(tags[k], words[k], closed_tags) for k in range(node.start, node.end)):
            continue
        src = [i for i, j in links if node.start <= j < node.end]
        if not src:
            continue
        pair = SegmentPair(min(src), max(src) + 1, node.start, node.end)
        if pair.s_hi - pair.s_lo > max_len or not is_consistent(links, pair):
            continue
        units.add(pair)
    return sorted(units)


def generate_mlf(sentence, max_candidates: int = DEFAULT_MAX_CANDIDATES, max_len: int = DEFAULT_MAX_LEN, closed_tags: frozenset[str] = CLOSED_CLASS_TAGS) -> GenerationSet:
    # disjoint target spans in a tree are never nested, which rules out
    # switching inside an already-switched subtree
    units = mlf_units(sentence, max_len, closed_tags)
    return GenerationSet(sentence.id, tuple(_enumerate(sentence, units, Technique.ML, max_candidates)), Theory.MLF)


_SAMPLED = {
    (Theory.EC, "random"): Technique.EC_RAND,
    (Theory.EC, "spf"): Technique.EC_SPF,
    (Theory.MLF, "random"): Technique.ML_RAND,
    (Theory.MLF, "spf"): Technique.ML_SPF,
}


def sample_random(gens: GenerationSet, k: int = 1, seed: int = 0) -> list[Augmentation]:
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    rng = sentence_rng(seed, gens.sentence_id, "sample")
    picked = rng.sample(list(gens.candidates), min(k, len(gens.candidates)))
    technique = _SAMPLED[(gens.theory, "random")]
    return [a.with_technique(technique) for a in picked]


def sample_spf(gens: GenerationSet, k: int = 1, reference: SPFReference = SPFReference()) -> list[Augmentation]:
    """Top-k candidates by closeness of their SPF to the reference mean; ties
    keep enumeration order."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    ranked = sorted(
        range(len(gens.candidates)),
        key=lambda idx: (abs(gens.candidates[idx].spf - reference.mean_spf), idx),
    )
    technique = _SAMPLED[(gens.theory, "spf")]
    return [gens.candidates[idx].with_technique(technique) for idx in ranked[:k]]


def write_generations(sets: Iterable[GenerationSet], out) -> None:
    """Dump candidates as TSV: id, theory, candidate_index, spf, mixed_src."""
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_generations(sets, fh)
        return
    out.write("id\ttheory\tcandidate_index\tspf\tmixed_src\n")
    for g in sets:
        for idx, a in enumerate(g.candidates):
            out.write(f"{g.sentence_id}\t{g.theory.value}\t{idx}\t{float(a.spf):.6f}\t{a.mixed_text}\n")


def validate_ec(aug: Augmentation, sentence, max_len: int = DEFAULT_MAX_LEN) -> bool:
    links = sentence.alignment.links
    for r in aug.replaced_spans:
        pair = SegmentPair(r.s_lo, r.s_hi, r.t_lo, r.t_hi)
        if r.is_gloss or not is_consistent(links, pair) or not order_preserving(sentence, pair):
            return False
    return bool(aug.replaced_spans) and is_complete(aug, sentence)


def validate_mlf(aug: Augmentation, sentence, max_len: int = DEFAULT_MAX_LEN, closed_tags: frozenset[str] = CLOSED_CLASS_TAGS) -> bool:
    units = set(mlf_units(sentence, max_len, closed_tags))
    spans = [SegmentPair(r.s_lo, r.s_hi, r.t_lo, r.t_hi) for r in aug.replaced_spans]
    return bool(spans) and all(s in units for s in spans) and is_complete(aug, sentence)
