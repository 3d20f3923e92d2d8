"""The Augmentation record shared by every technique, and its TSV format."""

from __future__ import annotations

import enum
import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .corpus import Token, detokenize, tokenize
from .errors import FormatError, StructuralError
from .langid import is_csw
from .metrics import cmi, pct_en, spf

AUG_HEADER = ("id", "technique", "mixed_src", "tgt", "spans", "cmi", "spf", "pct_en")


class Technique(str, enum.Enum):
    LEX_DICT = "LexDict"
    LEX_RAND_WORD = "LexRandWord"
    LEX_RAND_SEG = "LexRandSeg"
    LEX_PRED = "LexPred"
    EC_RAND = "ECrand"
    EC_SPF = "ECspf"
    ML_RAND = "MLrand"
    ML_SPF = "MLspf"
    EC = "EC"
    ML = "ML"
    BT = "BT"


class Replacement(NamedTuple):
    """Source span ``[s_lo, s_hi)`` replaced by target span ``[t_lo, t_hi)``.

    Gloss replacements have no target span (``t_lo = t_hi = -1``) and record the
    number of inserted gloss tokens in ``n_inserted``.
    """

    s_lo: int
    s_hi: int
    t_lo: int = -1
    t_hi: int = -1
    n_inserted: int = 0

    @property
    def is_gloss(self) -> bool:
        return self.t_lo < 0

    def encode(self) -> str:
        if self.is_gloss:
            return f"{self.s_lo}-{self.s_hi}>*{self.n_inserted}"
        return f"{self.s_lo}-{self.s_hi}>{self.t_lo}-{self.t_hi}"

    @classmethod
    def decode(cls, text: str) -> "Replacement":
        try:
            src, dst = text.split(">")
            s_lo, s_hi = (int(x) for x in src.split("-"))
            if dst.startswith("*"):
                return cls(s_lo, s_hi, -1, -1, int(dst[1:]))
            t_lo, t_hi = (int(x) for x in dst.split("-"))
        except ValueError:
            raise FormatError(f"bad replaced-span field {text!r}") from None
        return cls(s_lo, s_hi, t_lo, t_hi, t_hi - t_lo)


@dataclass(frozen=True)
class Augmentation:
    sentence_id: str
    mixed_src: tuple[Token, ...]
    tgt: tuple[Token, ...]
    technique: Technique
    replaced_spans: tuple[Replacement, ...] = ()
    cmi: Fraction = field(init=False)
    spf: Fraction = field(init=False)
    pct_en: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "technique", Technique(self.technique))
        if not is_csw(self.mixed_src):
            raise StructuralError(
                f"sentence {self.sentence_id}: augmentation is not code-switched: {self.mixed_text!r}"
            )
        object.__setattr__(self, "cmi", cmi(self.mixed_src))
        object.__setattr__(self, "spf", spf(self.mixed_src))
        object.__setattr__(self, "pct_en", pct_en(self.mixed_src))

    @property
    def mixed_text(self) -> str:
        return detokenize(self.mixed_src)

    @property
    def tgt_text(self) -> str:
        return detokenize(self.tgt)

    def with_technique(self, technique: Technique) -> "Augmentation":
        return Augmentation(self.sentence_id, self.mixed_src, self.tgt, technique, self.replaced_spans)


def apply_replacements(sentence, replacements: Sequence[tuple[Replacement, Sequence[str]]]) -> list[str]:
    """Source surfaces with each (disjoint) span swapped for its inserted words."""
    words = [t.surface for t in sentence.src]
    out: list[str] = []
    pos = 0
    for rep, inserted in sorted(replacements, key=lambda r: r[0].s_lo):
        if rep.s_lo < pos:
            raise StructuralError(f"sentence {sentence.id}: overlapping replacements at {rep.s_lo}")
        out.extend(words[pos:rep.s_lo])
        out.extend(inserted)
        pos = rep.s_hi
    out.extend(words[pos:])
    return out


def make_augmentation(sentence, technique, replacements) -> Augmentation | None:
    """Build an Augmentation from segment or gloss replacements.

    ``replacements`` holds :class:`Replacement` (segment, inserted tokens taken
    from the target side) or ``(Replacement, words)`` pairs (gloss). Returns None
    when nothing was replaced or the result is not code-switched.
    """
    if not replacements:
        return None
    pairs = []
    tgt_words = [t.surface for t in sentence.tgt]
    for r in replacements:
        if isinstance(r, Replacement):
            pairs.append((r._replace(n_inserted=r.t_hi - r.t_lo), tgt_words[r.t_lo:r.t_hi]))
        else:
            rep, words = r
            pairs.append((rep._replace(n_inserted=len(words)), list(words)))
    mixed = apply_replacements(sentence, pairs)
    if not is_csw(mixed):
        return None
    spans = tuple(sorted((p[0] for p in pairs), key=lambda r: r.s_lo))
    return Augmentation(sentence.id, tokenize(mixed), sentence.tgt, technique, spans)


def inserted_tokens(aug: Augmentation, sentence) -> list[tuple[Replacement, list[str]]]:
    """Recover the words each replaced span inserted, by walking the mixed source."""
    mixed = [t.surface for t in aug.mixed_src]
    out = []
    pos_src = pos_mix = 0
    for rep in sorted(aug.replaced_spans, key=lambda r: r.s_lo):
        pos_mix += rep.s_lo - pos_src
        n = rep.n_inserted if rep.is_gloss else rep.t_hi - rep.t_lo
        out.append((rep, mixed[pos_mix:pos_mix + n]))
        pos_mix += n
        pos_src = rep.s_hi
    return out


# ----------------------------------------------------------------- TSV I/O

def _fmt(x: Fraction) -> str:
    return f"{float(x):.6f}"


def write_augmentations(augs: Iterable[Augmentation], out) -> None:
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_augmentations(augs, fh)
        return
    out.write("\t".join(AUG_HEADER) + "\n")
    for a in augs:
        spans = " ".join(r.encode() for r in a.replaced_spans)
        out.write(
            "\t".join(
                (a.sentence_id, a.technique.value, a.mixed_text, a.tgt_text, spans, _fmt(a.cmi), _fmt(a.spf), _fmt(a.pct_en))
            )
            + "\n"
        )


def dumps_augmentations(augs: Iterable[Augmentation]) -> str:
    buf = io.StringIO()
    write_augmentations(augs, buf)
    return buf.getvalue()


def read_augmentations(source) -> list[Augmentation]:
    if isinstance(source, (str, os.PathLike)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = source.read().splitlines()
    if lines and lines[0].startswith("id\ttechnique"):
        lines = lines[1:]
    out = []
    for lineno, line in enumerate(lines, 2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) < 4:
            raise FormatError(f"augmentation TSV line {lineno}: expected at least 4 columns")
        spans = tuple(Replacement.decode(x) for x in cols[4].split()) if len(cols) > 4 else ()
        try:
            technique = Technique(cols[1])
        except ValueError:
            raise FormatError(f"augmentation TSV line {lineno}: unknown technique {cols[1]!r}") from None
        out.append(Augmentation(cols[0], tokenize(cols[2]), tokenize(cols[3]), technique, spans))
    return out
