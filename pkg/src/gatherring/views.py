"""Basic boolean variables of a sensed pattern and the task predicate cascade."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .ring import OccupancyPattern, holes


class TaskId(enum.IntEnum):
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7
    T8 = 8

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> TaskId:
        return cls[text.strip().upper()]


@dataclass(frozen=True)
class BasicVars:
    b4: bool
    b5: bool
    f: bool
    h: bool
    o1: bool
    o2: bool
    o3: bool
    p: bool


@lru_cache(maxsize=None)
def basic_vars(p: OccupancyPattern) -> BasicVars:
    n = p.n
    hole_lens = [s.length for s in holes(p)]
    occ = p.occupied
    n_occ = len(occ)

    one_hole = len(hole_lens) == 1
    two_holes = len(hole_lens) == 2
    o2 = o3 = pv = False
    if n_occ == 2:
        a, b = occ
        gap = min(b - a, n - (b - a))
        o2 = gap == 1
        pv = gap == 2
    elif n_occ == 3:
        # three consecutive vertices leave a single hole of n-3 (or none when n=3)
        o3 = n == 3 or hole_lens == [n - 3]
    return BasicVars(
        b4=one_hole and hole_lens[0] <= 4,
        b5=one_hole and hole_lens[0] >= 5,
        f=not hole_lens,
        h=two_holes and min(hole_lens) == 1 and max(hole_lens) > 1,
        o1=n_occ == 1,
        o2=o2,
        o3=o3,
        p=pv,
    )


def preconditions(p: OccupancyPattern) -> tuple[bool, ...]:
    """``pre_1 .. pre_8`` in task order."""
    v = basic_vars(p)
    return (True, v.b4 or v.f, v.b5, v.h, v.p, v.o3, v.o2, v.o1)


def predicates(p: OccupancyPattern) -> tuple[bool, ...]:
    """``P_i = pre_i and not (pre_{i+1} or ... or pre_8)`` for i = 1..8."""
    pre = preconditions(p)
    return tuple(pre[i] and not any(pre[i + 1:]) for i in range(8))


@lru_cache(maxsize=None)
def classify_task(p: OccupancyPattern) -> TaskId:
    pre = preconditions(p)
    for i in range(7, -1, -1):
        if pre[i]:
            return TaskId(i + 1)
    raise AssertionError("pre_1 is identically true")
