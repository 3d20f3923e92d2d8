"""Human-evaluation aggregation: mean opinion scores, MOS range histograms and
inter-annotator agreement (pairwise Cohen's kappa, Fleiss' kappa).

Ratings are treated as unordered categories; no weighted kappa.
"""

from __future__ import annotations

import csv
import enum
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import FormatError, StructuralError, UsageError

log = logging.getLogger(__name__)


class Dimension(str, enum.Enum):
    UNDERSTANDABILITY = "understandability"
    NATURALNESS = "naturalness"


SCALES = {Dimension.UNDERSTANDABILITY: (1, 3), Dimension.NATURALNESS: (1, 5)}


@dataclass(frozen=True)
class AnnotationRecord:
    item_id: str
    annotator_id: str
    understandability: int
    naturalness: int

    def __post_init__(self):
        for dim in Dimension:
            lo, hi = SCALES[dim]
            value = getattr(self, dim.value)
            if not (lo <= value <= hi):
                raise FormatError(
                    f"item {self.item_id}, annotator {self.annotator_id}: {dim.value} {value} outside {lo}-{hi}"
                )

    def rating(self, dimension: Dimension) -> int:
        return getattr(self, Dimension(dimension).value)


def load_ratings(path) -> list[AnnotationRecord]:
    """CSV with header ``item_id,annotator_id,understandability,naturalness``."""
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"item_id", "annotator_id", "understandability", "naturalness"} - set(reader.fieldnames or ())
        if missing:
            raise FormatError(f"{path}: missing columns {sorted(missing)}")
        for lineno, row in enumerate(reader, 2):
            try:
                records.append(
                    AnnotationRecord(
                        row["item_id"], row["annotator_id"], int(row["understandability"]), int(row["naturalness"])
                    )
                )
            except (TypeError, ValueError) as e:
                if isinstance(e, FormatError):
                    raise
                raise FormatError(f"{path}:{lineno}: ratings must be integers") from None
    return records


def mos(records: Iterable[AnnotationRecord], dimension: Dimension, items: Iterable[str] | None = None) -> dict[str, float]:
    """Mean rating per item. Items listed in ``items`` that have no records are
    left out and logged."""
    dimension = Dimension(dimension)
    scores: dict[str, list[int]] = defaultdict(list)
    for r in records:
        scores[r.item_id].append(r.rating(dimension))
    if items is not None:
        missing = [i for i in items if i not in scores]
        if missing:
            log.warning("no ratings for %d item(s): %s", len(missing), ", ".join(missing))
    return {item: float(Fraction(sum(v), len(v))) for item, v in scores.items()}


class Bin(NamedTuple):
    lo: float
    hi: float
    closed: bool = False  # include the upper bound

    def __contains__(self, x) -> bool:
        return self.lo <= x < self.hi or (self.closed and x == self.hi)

    def label(self) -> str:
        return f"{self.lo:g}<=*{'<=' if self.closed else '<'}{self.hi:g}"


UNDERSTANDABILITY_BINS = (Bin(1, 2), Bin(2, 3, True))
NATURALNESS_BINS = (Bin(1, 2), Bin(2, 3), Bin(3, 4), Bin(4, 5, True))


def default_bins(dimension: Dimension) -> tuple[Bin, ...]:
    return UNDERSTANDABILITY_BINS if Dimension(dimension) is Dimension.UNDERSTANDABILITY else NATURALNESS_BINS


def mos_histogram(mos_values: Mapping[str, float] | Iterable[float], bins: Sequence[Bin]) -> list[float]:
    """Percentage of items whose MOS falls in each bin."""
    bins = [Bin(*b) for b in bins]
    ordered = sorted(bins)
    for a, b in zip(ordered, ordered[1:]):
        if b.lo < a.hi or (b.lo == a.hi and a.closed):
            raise UsageError(f"overlapping MOS bins {a.label()} and {b.label()}")
    values = list(mos_values.values()) if isinstance(mos_values, Mapping) else list(mos_values)
    if not values:
        return [0.0] * len(bins)
    counts = [sum(1 for v in values if v in b) for b in bins]
    return [100.0 * c / len(values) for c in counts]


def cohen_kappa(a: Mapping | Sequence, b: Mapping | Sequence) -> float:
    """Cohen's kappa for two annotators over the same items.

    Accepts two item->rating mappings (item sets must match) or two equal-length
    rating sequences.
    """
    if isinstance(a, Mapping) or isinstance(b, Mapping):
        if not (isinstance(a, Mapping) and isinstance(b, Mapping)) or set(a) != set(b):
            raise StructuralError("Cohen's kappa needs both annotators to rate the same items")
        keys = sorted(a)
        xs, ys = [a[k] for k in keys], [b[k] for k in keys]
    else:
        xs, ys = list(a), list(b)
        if len(xs) != len(ys):
            raise StructuralError(f"Cohen's kappa: {len(xs)} vs {len(ys)} ratings")
    n = len(xs)
    if n == 0:
        raise StructuralError("Cohen's kappa needs at least one item")
    p_o = Fraction(sum(1 for x, y in zip(xs, ys) if x == y), n)
    ca, cb = Counter(xs), Counter(ys)
    p_e = sum((Fraction(ca[c], n) * Fraction(cb[c], n) for c in ca.keys() | cb.keys()), Fraction(0))
    if p_e == 1:
        return 1.0
    return float((p_o - p_e) / (1 - p_e))


def pairwise_cohen(records: Iterable[AnnotationRecord], dimension: Dimension) -> dict[tuple[str, str], float]:
    by_annotator: dict[str, dict[str, int]] = defaultdict(dict)
    for r in records:
        by_annotator[r.annotator_id][r.item_id] = r.rating(dimension)
    return {
        (x, y): cohen_kappa(by_annotator[x], by_annotator[y])
        for x, y in itertools.combinations(sorted(by_annotator), 2)
    }


def fleiss_table(records: Iterable[AnnotationRecord], dimension: Dimension) -> tuple[list[str], list[list[int]]]:
    """Items x categories count matrix over the dimension's full scale."""
    dimension = Dimension(dimension)
    lo, hi = SCALES[dimension]
    counts: dict[str, Counter] = defaultdict(Counter)
    for r in records:
        counts[r.item_id][r.rating(dimension)] += 1
    items = sorted(counts)
    return items, [[counts[i][c] for c in range(lo, hi + 1)] for i in items]


def fleiss_kappa(table: Sequence[Sequence[int]], raters_per_item: int | None = None) -> float:
    """Fleiss' kappa for a fixed number of raters per item."""
    if not table:
        raise StructuralError("Fleiss' kappa needs at least one item")
    n = raters_per_item if raters_per_item is not None else sum(table[0])
    if n < 2:
        raise StructuralError(f"Fleiss' kappa needs at least 2 raters per item, got {n}")
    for k, row in enumerate(table):
        if sum(row) != n:
            raise StructuralError(f"Fleiss' kappa: row {k} sums to {sum(row)}, expected {n}")
    n_items = len(table)
    p_bar = sum(
        (Fraction(sum(c * c for c in row) - n, n * (n - 1)) for row in table), Fraction(0)
    ) / n_items
    totals = [sum(col) for col in zip(*table)]
    p_e = sum((Fraction(t, n_items * n) ** 2 for t in totals), Fraction(0))
    if p_e == 1:
        return 1.0
    return float((p_bar - p_e) / (1 - p_e))
