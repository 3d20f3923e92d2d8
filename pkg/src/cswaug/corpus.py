"""Parallel-corpus data model, file I/O, normalization and corpus-level
construction (target-target appending, intersection, subsetting)."""

from __future__ import annotations

import enum
import io
import os
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from ._util import as_fraction, round_half_up
from .align import AlignmentSet
from .errors import FormatError, StructuralError, UsageError
from .langid import LangTag, classify_token, is_mixed_script
from .trees import PTB_ESCAPES, ParseTree

TSV_HEADER = ("id", "src", "tgt", "alignment", "tree")


@dataclass(frozen=True)
class Token:
    surface: str
    index: int = 0
    lang: LangTag = field(init=False, compare=False)
    mixed: bool = field(init=False, compare=False)

    def __post_init__(self):
        if not self.surface or any(ch in self.surface for ch in " \t\n\r"):
            raise FormatError(f"invalid token surface {self.surface!r}")
        object.__setattr__(self, "lang", classify_token(self.surface))
        object.__setattr__(self, "mixed", is_mixed_script(self.surface))

    def __str__(self) -> str:
        return self.surface


def tokenize(text: str | Iterable[str]) -> tuple[Token, ...]:
    """Tokens from a pre-tokenized (space-separated) line or a list of surfaces."""
    words = text.split() if isinstance(text, str) else list(text)
    return tuple(Token(w, k) for k, w in enumerate(words))


def detokenize(tokens: Iterable) -> str:
    return " ".join(str(t) for t in tokens)


@dataclass(frozen=True)
class BiSentence:
    id: str
    src: tuple[Token, ...]
    tgt: tuple[Token, ...]
    alignment: AlignmentSet = AlignmentSet()
    tree: ParseTree | None = None

    def __post_init__(self):
        if not isinstance(self.src, tuple) or (self.src and not isinstance(self.src[0], Token)):
            object.__setattr__(self, "src", tokenize(self.src))
        if not isinstance(self.tgt, tuple) or (self.tgt and not isinstance(self.tgt[0], Token)):
            object.__setattr__(self, "tgt", tokenize(self.tgt))
        if isinstance(self.alignment, str):
            object.__setattr__(self, "alignment", AlignmentSet.from_pharaoh(self.alignment))
        if isinstance(self.tree, str):
            object.__setattr__(self, "tree", ParseTree.parse(self.tree))
        for i, j in sorted(self.alignment.links):
            if not (0 <= i < len(self.src) and 0 <= j < len(self.tgt)):
                raise StructuralError(
                    f"sentence {self.id}: alignment link {i}-{j} out of range "
                    f"(|src|={len(self.src)}, |tgt|={len(self.tgt)})"
                )
        if self.tree is not None:
            leaves = self.tree.leaves()
            if leaves != [t.surface for t in self.tgt]:
                raise StructuralError(
                    f"sentence {self.id}: tree leaves {leaves} do not match target tokens"
                )

    @property
    def src_text(self) -> str:
        return detokenize(self.src)

    @property
    def tgt_text(self) -> str:
        return detokenize(self.tgt)


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[BiSentence, ...] = ()
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise StructuralError(f"duplicate sentence id {s.id!r}")
            seen.add(s.id)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[BiSentence]:
        return iter(self.sentences)

    def __getitem__(self, k):
        return self.sentences[k]

    def ids(self) -> list[str]:
        return [s.id for s in self.sentences]

    def by_id(self) -> dict[str, BiSentence]:
        return {s.id: s for s in self.sentences}


# ---------------------------------------------------------------- file I/O

def _read_lines(path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    return text.splitlines()


def load_parallel(
    src_path,
    tgt_path,
    align_path=None,
    trees_path=None,
    ids_path=None,
    align_label: str = "",
) -> Corpus:
    """Read line-aligned source/target files (plus optional Pharaoh alignments,
    bracketed trees and ids) into a :class:`Corpus`."""
    src_lines = _read_lines(src_path)
    tgt_lines = _read_lines(tgt_path)
    if len(src_lines) != len(tgt_lines):
        raise StructuralError(
            f"line count mismatch: {src_path} has {len(src_lines)} lines, "
            f"{tgt_path} has {len(tgt_lines)}"
        )
    n = len(src_lines)

    def optional(path, what):
        if path is None:
            return [None] * n
        lines = _read_lines(path)
        if len(lines) != n:
            raise StructuralError(f"line count mismatch: {n} sentences but {len(lines)} {what} lines")
        return lines

    align_lines = optional(align_path, "alignment")
    tree_lines = optional(trees_path, "tree")
    id_lines = optional(ids_path, "id")

    sentences = []
    for k in range(n):
        sid = id_lines[k].strip() if id_lines[k] is not None else f"L{k + 1}"
        sentences.append(_make_sentence(sid, src_lines[k], tgt_lines[k], align_lines[k], tree_lines[k], align_label))
    provenance = " ".join(str(p) for p in (src_path, tgt_path, align_path, trees_path) if p is not None)
    return Corpus(tuple(sentences), provenance)


def _make_sentence(sid, src, tgt, align, tree, align_label="") -> BiSentence:
    try:
        alignment = AlignmentSet(
            AlignmentSet.from_pharaoh(align).links if align else frozenset(), align_label
        )
    except FormatError as e:
        raise FormatError(f"sentence {sid}: {e}") from None
    parsed = None
    if tree and tree.strip():
        try:
            parsed = ParseTree.parse(tree)
        except FormatError as e:
            raise FormatError(f"sentence {sid}: malformed tree: {e}") from None
    return BiSentence(sid, tokenize(src), tokenize(tgt), alignment, parsed)


def write_tsv(corpus: Corpus, out) -> None:
    """Serialize as TSV with a header row: id, src, tgt, alignment, tree."""
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_tsv(corpus, fh)
        return
    out.write("\t".join(TSV_HEADER) + "\n")
    for s in corpus:
        tree = str(s.tree) if s.tree is not None else ""
        out.write("\t".join((s.id, s.src_text, s.tgt_text, s.alignment.to_pharaoh(), tree)) + "\n")


def dumps_tsv(corpus: Corpus) -> str:
    buf = io.StringIO()
    write_tsv(corpus, buf)
    return buf.getvalue()


def read_tsv(source, provenance: str | None = None) -> Corpus:
    if isinstance(source, (str, os.PathLike)):
        lines = _read_lines(source)
        provenance = str(source) if provenance is None else provenance
    else:
        lines = source.read().splitlines()
    if lines and lines[0].split("\t")[:2] == ["id", "src"]:
        lines = lines[1:]
    sentences = []
    for lineno, line in enumerate(lines, 2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) < 3 or len(cols) > 5:
            raise FormatError(f"corpus TSV line {lineno}: expected 3-5 columns, got {len(cols)}")
        cols += [""] * (5 - len(cols))
        sentences.append(_make_sentence(*cols))
    return Corpus(tuple(sentences), provenance or "")


# ----------------------------------------------------------- normalization

class Norm(enum.Flag):
    NONE = 0
    LOWERCASE = enum.auto()
    ALEF = enum.auto()
    YA = enum.auto()
    STRIP_URLS = enum.auto()
    STRIP_EMOTICONS = enum.auto()
    DEFAULT = LOWERCASE | ALEF | YA


_ALEF_TABLE = str.maketrans({"أ": "ا", "إ": "ا", "آ": "ا"})
_YA_TABLE = str.maketrans({"ى": "ي"})
_URL_RE = re.compile(r"^(?:https?://|www\.)\S+$|^\S+\.(?:com|org|net|edu|gov|io)(?:/\S*)?$", re.I)
_EMOTICON_RE = re.compile(
    r"^(?:[:;=8xX][-o*'^]?[)(\]\[dDpP/\\|}{@3oO*]+|<3+|[)(\]\[dDpP/\\|}{@][-o*'^]?[:;=8])$"
)
_EMOJI_RE = re.compile("^[\U0001F000-\U0001FAFF☀-➿️‍]+$")
_NUMBER_RE = re.compile(r"(?<=\d)([.,])(?=\d)|(?<=\d)(?=[^\d\s.,])|(?<=[^\d\s.,])(?=\d)")


def normalize_surface(surface: str, flags: Norm) -> str:
    if Norm.ALEF in flags:
        surface = surface.translate(_ALEF_TABLE)
    if Norm.YA in flags:
        surface = surface.translate(_YA_TABLE)
    if Norm.LOWERCASE in flags:
        surface = surface.lower()
    return surface


def _dropped(surface: str, flags: Norm) -> bool:
    if Norm.STRIP_URLS in flags and _URL_RE.match(surface):
        return True
    if Norm.STRIP_EMOTICONS in flags and (_EMOTICON_RE.match(surface) or _EMOJI_RE.match(surface)):
        return True
    return False


def tokenize_numbers(line: str) -> str:
    """Split digits from adjacent letters and split decimal/thousands separators,
    e.g. ``"3km 1,000"`` -> ``"3 km 1 , 000"``. Line-level: apply before alignment,
    since it changes token counts."""
    return " ".join(_NUMBER_RE.sub(lambda m: f" {m.group(1)} " if m.group(1) else " ", line).split())


def _normalize_sentence(s: BiSentence, flags: Norm) -> BiSentence:
    drop_src = {k for k, t in enumerate(s.src) if _dropped(t.surface, flags)}
    drop_tgt = {k for k, t in enumerate(s.tgt) if _dropped(t.surface, flags)}
    src_map = _reindex(len(s.src), drop_src)
    tgt_map = _reindex(len(s.tgt), drop_tgt)
    src = tokenize([normalize_surface(t.surface, flags) for k, t in enumerate(s.src) if k not in drop_src])
    tgt = tokenize([normalize_surface(t.surface, flags) for k, t in enumerate(s.tgt) if k not in drop_tgt])
    links = {
        (src_map[i], tgt_map[j]) for i, j in s.alignment.links if i in src_map and j in tgt_map
    }
    tree = s.tree
    if tree is not None:
        if drop_tgt:
            tree = tree.without_leaves(drop_tgt)
        if tree is not None:
            tree = tree.map_leaves(lambda w: w if w in PTB_ESCAPES else normalize_surface(w, flags))
    return BiSentence(s.id, src, tgt, AlignmentSet(links, s.alignment.label), tree)


def _reindex(n: int, drop: set[int]) -> dict[int, int]:
    out, k = {}, 0
    for i in range(n):
        if i not in drop:
            out[i] = k
            k += 1
    return out


def normalize(corpus: Corpus, flags: Norm = Norm.DEFAULT) -> Corpus:
    """Apply the enabled normalization passes to both sides of every sentence.

    Token-removing passes (URLs, emoticons) re-index alignments and prune the
    target tree. Every pass is idempotent.
    """
    return Corpus(tuple(_normalize_sentence(s, flags) for s in corpus), corpus.provenance)


# --------------------------------------------------- corpus construction

def append_target_target(corpus: Corpus) -> Corpus:
    """Original sentences followed by one target-to-target copy of each (id
    suffixed ``-tt``, identity alignment)."""
    copies = []
    for s in corpus:
        links = frozenset((j, j) for j in range(len(s.tgt)))
        copies.append(
            BiSentence(f"{s.id}-tt", tokenize([t.surface for t in s.tgt]), s.tgt, AlignmentSet(links, "identity"), s.tree)
        )
    return Corpus(corpus.sentences + tuple(copies), corpus.provenance)


def _ids_of(collection) -> set[str]:
    out = set()
    for item in collection:
        out.add(item if isinstance(item, str) else item.sentence_id)
    return out


def intersect_augmented(augmentation_sets: Mapping[str, Iterable]) -> set[str]:
    """Ids successfully augmented by every technique.

    Values may be collections of Augmentations or of sentence ids.
    """
    if len(augmentation_sets) < 2:
        raise UsageError(f"intersection needs at least 2 techniques, got {len(augmentation_sets)}")
    sets = [_ids_of(c) for c in augmentation_sets.values()]
    return set.intersection(*sets)


def sample_subset(corpus: Corpus, fraction, seed: int) -> Corpus:
    """Seeded subset of ``round(fraction * N)`` sentences, in original order."""
    frac = as_fraction(fraction)
    if not (0 < frac <= 1):
        raise UsageError(f"fraction must be in (0, 1], got {fraction}")
    n = len(corpus)
    size = round_half_up(frac * n)
    if size >= n:
        return corpus
    keep = sorted(random.Random(seed).sample(range(n), size))
    return Corpus(tuple(corpus[k] for k in keep), corpus.provenance)
