"""Word-alignment sets, phrase-pair (consistent segment) extraction and
boundary order checks.

Alignments are read and written in Pharaoh format: ``"0-0 1-1 1-2"``, one
line per sentence, 0-based ``src-tgt`` indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import FormatError

DEFAULT_MAX_LEN = 7


def _merge_labels(*labels: str) -> str:
    parts = sorted({p for lab in labels for p in lab.split("+") if p})
    return "+".join(parts)


@dataclass(frozen=True)
class AlignmentSet:
    links: frozenset[tuple[int, int]] = frozenset()
    label: str = ""

    def __post_init__(self):
        links = frozenset((int(i), int(j)) for i, j in self.links)
        for i, j in links:
            if i < 0 or j < 0:
                raise FormatError(f"negative alignment index in link {i}-{j}")
        object.__setattr__(self, "links", links)

    def __len__(self) -> int:
        return len(self.links)

    def __iter__(self):
        return iter(sorted(self.links))

    def __contains__(self, link) -> bool:
        return link in self.links

    def union(self, other: "AlignmentSet") -> "AlignmentSet":
        return union(self, other)

    def to_pharaoh(self) -> str:
        return " ".join(f"{i}-{j}" for i, j in sorted(self.links))

    @classmethod
    def from_pharaoh(cls, line: str, label: str = "") -> "AlignmentSet":
        return cls(parse_pharaoh(line), label)

    def is_one_to_one(self) -> bool:
        return self.many_to_many_link() is None

    def many_to_many_link(self) -> tuple[int, int] | None:
        """First link (sorted) whose source or target index is used twice."""
        src_count: dict[int, int] = {}
        tgt_count: dict[int, int] = {}
        for i, j in self.links:
            src_count[i] = src_count.get(i, 0) + 1
            tgt_count[j] = tgt_count.get(j, 0) + 1
        for i, j in sorted(self.links):
            if src_count[i] > 1 or tgt_count[j] > 1:
                return (i, j)
        return None


def parse_pharaoh(line: str) -> frozenset[tuple[int, int]]:
    links = set()
    for item in line.split():
        try:
            i, j = item.split("-")
            links.add((int(i), int(j)))
        except ValueError:
            raise FormatError(f"bad Pharaoh link {item!r}") from None
    return frozenset(links)


def union(a: AlignmentSet, b: AlignmentSet) -> AlignmentSet:
    """Set union of links. Labels are merged as a sorted ``+``-joined set so the
    operation stays commutative, associative and idempotent."""
    return AlignmentSet(a.links | b.links, _merge_labels(a.label, b.label))


class SegmentPair(NamedTuple):
    """Half-open source span ``[s_lo, s_hi)`` aligned to target span ``[t_lo, t_hi)``."""

    s_lo: int
    s_hi: int
    t_lo: int
    t_hi: int

    @property
    def src_span(self) -> tuple[int, int]:
        return (self.s_lo, self.s_hi)

    @property
    def tgt_span(self) -> tuple[int, int]:
        return (self.t_lo, self.t_hi)

    def overlaps(self, other: "SegmentPair") -> bool:
        return (self.s_lo < other.s_hi and other.s_lo < self.s_hi) or (
            self.t_lo < other.t_hi and other.t_lo < self.t_hi
        )


def is_consistent(links: Iterable[tuple[int, int]], pair: SegmentPair) -> bool:
    """The phrase-pair consistency predicate, checked directly on the links."""
    s_lo, s_hi, t_lo, t_hi = pair
    if not (s_lo < s_hi and t_lo < t_hi):
        return False
    connected = False
    for i, j in links:
        in_s = s_lo <= i < s_hi
        in_t = t_lo <= j < t_hi
        if in_s != in_t:
            return False
        connected = connected or in_s
    return connected


def extract_segments(sentence, max_len: int = DEFAULT_MAX_LEN) -> list[SegmentPair]:
    """All consistent segment pairs whose source side has at most ``max_len`` tokens.

    Unaligned target tokens at either edge of a target span are allowed, so one
    source span can yield several pairs.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    n_src, n_tgt = len(sentence.src), len(sentence.tgt)
    links = sentence.alignment.links
    if not links:
        return []
    src_to_tgt: list[list[int]] = [[] for _ in range(n_src)]
    tgt_to_src: list[list[int]] = [[] for _ in range(n_tgt)]
    for i, j in links:
        src_to_tgt[i].append(j)
        tgt_to_src[j].append(i)

    out = []
    for s_lo in range(n_src):
        t_min, t_max = n_tgt, -1
        for s_hi in range(s_lo + 1, min(n_src, s_lo + max_len) + 1):
            for j in src_to_tgt[s_hi - 1]:
                t_min = min(t_min, j)
                t_max = max(t_max, j)
            if t_max < 0:
                continue
            if any(
                not (s_lo <= i < s_hi)
                for j in range(t_min, t_max + 1)
                for i in tgt_to_src[j]
            ):
                continue
            t_los = [t_min]
            while t_los[-1] > 0 and not tgt_to_src[t_los[-1] - 1]:
                t_los.append(t_los[-1] - 1)
            t_his = [t_max + 1]
            while t_his[-1] < n_tgt and not tgt_to_src[t_his[-1]]:
                t_his.append(t_his[-1] + 1)
            out.extend(SegmentPair(s_lo, s_hi, lo, hi) for lo in t_los for hi in t_his)
    out.sort()
    return out


def order_preserving(sentence, pair: SegmentPair) -> bool:
    """True iff putting the target segment in the source position reorders nothing
    across the segment boundary: for a link inside the source span and a link
    outside it, the source order and target order agree."""
    inside, outside = [], []
    for i, j in sentence.alignment.links:
        (inside if pair.s_lo <= i < pair.s_hi else outside).append((i, j))
    return all((i < i2) == (j < j2) for i, j in inside for i2, j2 in outside)
