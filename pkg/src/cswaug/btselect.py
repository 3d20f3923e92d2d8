"""Pick code-switched hypotheses out of back-translation n-best lists."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .augmentation import Augmentation, Technique
from .corpus import Token, tokenize
from .errors import FormatError, StructuralError, UsageError
from .langid import is_csw

DEFAULT_K = 19


class Hypothesis(NamedTuple):
    rank: int
    score: float
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class NBestList:
    sentence_id: str
    hypotheses: tuple[Hypothesis, ...]

    def __post_init__(self):
        ranks = [h.rank for h in self.hypotheses]
        if ranks != list(range(1, len(ranks) + 1)):
            raise StructuralError(f"sentence {self.sentence_id}: n-best ranks must run 1..n in order, got {ranks}")


def load_nbest(path, negate: bool = False) -> list[NBestList]:
    """Read ``id<TAB>rank<TAB>score<TAB>tokens`` lines, grouped by id in file order.

    Hypotheses of one id are sorted by rank. ``negate`` flips scores for files
    where lower means better (costs, negative log-likelihoods).
    """
    grouped: dict[str, list[Hypothesis]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise FormatError(f"{path}:{lineno}: expected 4 tab-separated columns, got {len(cols)}")
        try:
            rank, score = int(cols[1]), float(cols[2])
        except ValueError:
            raise FormatError(f"{path}:{lineno}: bad rank or score") from None
        grouped.setdefault(cols[0], []).append(Hypothesis(rank, -score if negate else score, tokenize(cols[3])))
    return [NBestList(sid, tuple(sorted(hyps, key=lambda h: h.rank))) for sid, hyps in grouped.items()]


def select_csw(nbest: NBestList, k: int = DEFAULT_K, tgt: Sequence[Token] | str = ()) -> Augmentation | None:
    """Highest-scoring code-switched hypothesis among the top ``k``; ties go to the
    better rank. ``tgt`` is the English sentence that was back-translated."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    best = None
    for hyp in nbest.hypotheses[:k]:
        if is_csw(hyp.tokens) and (best is None or hyp.score > best.score):
            best = hyp
    if best is None:
        return None
    tgt_tokens = tokenize(tgt) if isinstance(tgt, str) else tuple(tgt)
    return Augmentation(nbest.sentence_id, best.tokens, tgt_tokens, Technique.BT)


@dataclass(frozen=True)
class SelectionStats:
    total: int
    augmented: int

    @property
    def fraction(self) -> float:
        return self.augmented / self.total if self.total else 0.0


def selection_stats(results: Iterable[Augmentation | None], total: int | None = None) -> SelectionStats:
    results = list(results)
    augmented = sum(1 for r in results if r is not None)
    return SelectionStats(len(results) if total is None else total, augmented)
