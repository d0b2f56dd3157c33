"""Moves m1..m7 as admissible one-hop decisions for an activated robot.

A robot has no sense of orientation, so whenever its rule leaves the
direction open between mirror-symmetric options the decision set carries
both and the adversary picks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .ring import OccupancyPattern, holes, islands
from .views import TaskId, classify_task


class Direction(enum.IntEnum):
    STAY = 0
    CW = 1
    CCW = -1

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> Direction:
        return cls[text.strip().upper()]


CW, CCW, STAY = Direction.CW, Direction.CCW, Direction.STAY
_ORDER = {CW: 0, CCW: 1, STAY: 2}


@dataclass(frozen=True)
class DecisionSet:
    options: tuple[Direction, ...]

    def __post_init__(self) -> None:
        opts = tuple(sorted(set(self.options), key=_ORDER.__getitem__))
        if not opts:
            raise ValueError("decision set must be nonempty")
        if STAY in opts and len(opts) > 1:
            raise ValueError("STAY cannot be mixed with a direction")
        object.__setattr__(self, "options", opts)

    def __len__(self) -> int:
        return len(self.options)

    def __iter__(self):
        return iter(self.options)

    def __contains__(self, d) -> bool:
        return d in self.options

    @property
    def is_stay(self) -> bool:
        return self.options == (STAY,)

    def mirrored(self) -> DecisionSet:
        return DecisionSet(tuple(Direction(-d) for d in self.options))

    def names(self) -> list[str]:
        return [str(d) for d in self.options]


NIL = DecisionSet((STAY,))
BOTH = DecisionSet((CW, CCW))


def _toward(*dirs: Direction) -> DecisionSet:
    return DecisionSet(tuple(dirs)) if dirs else NIL


def _occ(p: OccupancyPattern, v: int) -> bool:
    return p.bits[v % p.n]


def _hole_len_at(p: OccupancyPattern, pos: int, d: Direction) -> int:
    """Length of the hole starting at the neighbor of pos in direction d (0 if occupied)."""
    n, length = p.n, 0
    v = pos + d
    while length < n and not _occ(p, v):
        length += 1
        v += d
    return length


def _dist_to_empty(p: OccupancyPattern, pos: int, d: Direction) -> int | None:
    for step in range(1, p.n):
        if not _occ(p, pos + step * d):
            return step
    return None


def _nearest(p: OccupancyPattern, pos: int) -> DecisionSet:
    """Direction(s) to the closest empty vertex; both on a tie."""
    dist = {d: _dist_to_empty(p, pos, d) for d in (CW, CCW)}
    finite = {d: x for d, x in dist.items() if x is not None}
    if not finite:
        return BOTH
    best = min(finite.values())
    return _toward(*(d for d, x in finite.items() if x == best))


def _occupied_neighbors(p: OccupancyPattern, pos: int) -> list[Direction]:
    return [d for d in (CW, CCW) if _occ(p, pos + d)]


def _empty_neighbors(p: OccupancyPattern, pos: int) -> list[Direction]:
    return [d for d in (CW, CCW) if not _occ(p, pos + d)]


def move_m1(p: OccupancyPattern, pos: int) -> DecisionSet:
    hole_lens = [s.length for s in holes(p)]
    biggest = max(hole_lens)
    beside_big = [d for d in (CW, CCW) if _hole_len_at(p, pos, d) == biggest]
    if not beside_big:
        return NIL
    if all(s.length == 2 for s in islands(p)):
        if hole_lens.count(biggest) > 1:
            return _nearest(p, pos)
        return _toward(*_occupied_neighbors(p, pos))
    n_occ = len(p.occupied)
    if n_occ == p.n - 2 and len(hole_lens) == 2:
        empty = _empty_neighbors(p, pos)
        if len(empty) == 1:
            return _toward(*_occupied_neighbors(p, pos))
        return NIL
    return _toward(*(Direction(-d) for d in beside_big))


def move_m2(p: OccupancyPattern, pos: int) -> DecisionSet:
    if _empty_neighbors(p, pos):
        return NIL
    hs = holes(p)
    if not hs:
        return BOTH
    if p.n == 6 and len(hs) == 1 and hs[0].length == 1:
        gap = hs[0].start
        cw, ccw = (gap - pos) % p.n, (pos - gap) % p.n
        if cw == ccw:
            return NIL
        return _toward(CCW if cw < ccw else CW)
    return _nearest(p, pos)


def move_m3(p: OccupancyPattern, pos: int) -> DecisionSet:
    return _toward(*_empty_neighbors(p, pos))


def move_m4(p: OccupancyPattern, pos: int) -> DecisionSet:
    biggest = max(s.length for s in holes(p))
    occupied = _occupied_neighbors(p, pos)
    if len(occupied) != 1:
        return NIL
    other = Direction(-occupied[0])
    if _hole_len_at(p, pos, other) != biggest:
        return NIL
    return _toward(occupied[0])


def move_m5(p: OccupancyPattern, pos: int) -> DecisionSet:
    (other,) = [v for v in p.occupied if v != pos]
    cw, ccw = (other - pos) % p.n, (pos - other) % p.n
    return _toward(*(d for d, gap in ((CW, cw), (CCW, ccw)) if gap == 2))


def move_m6(p: OccupancyPattern, pos: int) -> DecisionSet:
    if not _empty_neighbors(p, pos):
        return NIL
    return _toward(*_occupied_neighbors(p, pos))


def move_m7(p: OccupancyPattern, pos: int) -> DecisionSet:
    return _toward(*_occupied_neighbors(p, pos))


MOVES = {
    TaskId.T1: move_m1,
    TaskId.T2: move_m2,
    TaskId.T3: move_m3,
    TaskId.T4: move_m4,
    TaskId.T5: move_m5,
    TaskId.T6: move_m6,
    TaskId.T7: move_m7,
}


def move_name(task: TaskId) -> str:
    return "nil" if task == TaskId.T8 else f"m{int(task)}"


@lru_cache(maxsize=None)
def compute(p: OccupancyPattern, pos: int) -> DecisionSet:
    """Compute phase of an activated robot at ``pos`` that sensed ``p``."""
    if not p.bits[pos]:
        raise ValueError(f"activated robot at unoccupied vertex {pos}")
    task = classify_task(p)
    if task == TaskId.T8:
        return NIL
    return MOVES[task](p, pos)
