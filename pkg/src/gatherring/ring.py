"""Ring configurations, occupancy patterns, holes/islands and symmetry classes.

Vertices carry internal indices ``0..n-1``; ``+1`` is the internal clockwise
direction. Robots never observe these coordinates.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterator, Sequence


class SegmentKind(enum.Enum):
    HOLE = "hole"
    ISLAND = "island"


@dataclass(frozen=True)
class Segment:
    start: int
    length: int
    kind: SegmentKind

    def vertices(self, n: int) -> list[int]:
        return [(self.start + i) % n for i in range(self.length)]


@dataclass(frozen=True)
class OccupancyPattern:
    """What a robot can sense: which vertices are occupied, never how many robots."""

    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 3:
            raise ValueError(f"ring needs at least 3 vertices, got {len(self.bits)}")
        if not any(self.bits):
            raise ValueError("occupancy pattern has no occupied vertex")

    @classmethod
    def from_occupied(cls, n: int, occupied: Sequence[int]) -> OccupancyPattern:
        occ = set(occupied)
        return cls(tuple(v in occ for v in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def occupied(self) -> list[int]:
        return [v for v, b in enumerate(self.bits) if b]

    def __str__(self) -> str:
        return "".join("#" if b else "." for b in self.bits)


@dataclass(frozen=True)
class RingConfig:
    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if self.n < 3:
            raise ValueError(f"ring needs at least 3 vertices, got n={self.n}")
        if len(self.counts) != self.n:
            raise ValueError(f"expected {self.n} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("robot counts must be non-negative")
        if sum(self.counts) < 1:
            raise ValueError("configuration has no robots")

    @classmethod
    def from_positions(cls, n: int, positions: Sequence[int]) -> RingConfig:
        counts = [0] * n
        for v in positions:
            counts[v] += 1
        return cls(n, tuple(counts))

    @property
    def k(self) -> int:
        return sum(self.counts)

    @property
    def pattern(self) -> OccupancyPattern:
        return OccupancyPattern(tuple(c > 0 for c in self.counts))

    @property
    def distinct(self) -> bool:
        return all(c <= 1 for c in self.counts)

    def to_json(self) -> dict:
        return {"n": self.n, "counts": list(self.counts)}

    @classmethod
    def from_json(cls, data: dict | str) -> RingConfig:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(data["counts"]))

    def label(self) -> str:
        """Human-readable form using the v1..vn convention."""
        parts = [f"v{v + 1}" + (f"x{c}" if c > 1 else "") for v, c in enumerate(self.counts) if c]
        return f"n={self.n} k={self.k} [{', '.join(parts)}]"


def _segments(bits: Sequence[bool], want: bool) -> list[Segment]:
    n = len(bits)
    kind = SegmentKind.ISLAND if want else SegmentKind.HOLE
    if all(b == want for b in bits):
        return [Segment(0, n, kind)]
    if not any(b == want for b in bits):
        return []
    out = []
    for v in range(n):
        if bits[v] == want and bits[v - 1] != want:
            length = 1
            while bits[(v + length) % n] == want:
                length += 1
            out.append(Segment(v, length, kind))
    return out


def holes(p: OccupancyPattern) -> list[Segment]:
    """Maximal runs of empty vertices, sorted by start index."""
    return _segments(p.bits, False)


def islands(p: OccupancyPattern) -> list[Segment]:
    """Maximal runs of occupied vertices, sorted by start index."""
    return _segments(p.bits, True)


def symmetries(n: int) -> Iterator[tuple[int, int]]:
    """All 2n dihedral maps as ``(sign, shift)``: ``v -> (sign*v + shift) mod n``."""
    for sign in (1, -1):
        for shift in range(n):
            yield sign, shift


def apply_symmetry(seq: Sequence, sign: int, shift: int) -> tuple:
    """Move the value at vertex v to vertex ``sign*v + shift``."""
    n = len(seq)
    out = [None] * n
    for v, x in enumerate(seq):
        out[(sign * v + shift) % n] = x
    return tuple(out)


def _canonical_seq(seq: Sequence) -> tuple:
    # lexicographic maximum, so occupied vertices come first
    return max(apply_symmetry(seq, s, t) for s, t in symmetries(len(seq)))


def canonicalize(p: OccupancyPattern) -> OccupancyPattern:
    return OccupancyPattern(_canonical_seq(p.bits))


def canonicalize_config(config: RingConfig) -> RingConfig:
    return RingConfig(config.n, _canonical_seq(config.counts))


def _compositions(k: int, n: int, cap: int | None) -> Iterator[tuple[int, ...]]:
    if n == 1:
        if cap is None or k <= cap:
            yield (k,)
        return
    top = k if cap is None else min(k, cap)
    for first in range(top, -1, -1):
        for rest in _compositions(k - first, n - 1, cap):
            yield (first,) + rest


def enumerate_initial(n: int, k: int, distinct: bool = False) -> list[RingConfig]:
    """One canonical representative per symmetry class of count vectors, sorted."""
    if n < 3:
        raise ValueError(f"ring needs at least 3 vertices, got n={n}")
    if k < 1:
        raise ValueError("need at least one robot")
    if distinct and k > n:
        raise ValueError(f"distinct placement impossible: k={k} > n={n}")
    reps = set()
    for counts in _compositions(k, n, 1 if distinct else None):
        if _canonical_seq(counts) == counts:
            reps.add(counts)
    return [RingConfig(n, c) for c in sorted(reps, reverse=True)]


def multiset_assignments(config: RingConfig) -> Iterator[tuple[int, ...]]:
    """Every distinct rank -> vertex assignment matching the counts, in lexicographic order."""
    base = sorted(v for v, c in enumerate(config.counts) for _ in range(c))
    # itertools.permutations repeats equal items; walk the next-permutation sequence instead
    cur = list(base)
    while True:
        yield tuple(cur)
        i = len(cur) - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(cur) - 1
        while cur[j] <= cur[i]:
            j -= 1
        cur[i], cur[j] = cur[j], cur[i]
        cur[i + 1:] = reversed(cur[i + 1:])

