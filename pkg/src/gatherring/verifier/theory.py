"""Solvability of initial configurations according to the impossibility results."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..ring import RingConfig, islands


class Problem(enum.Enum):
    GATHERING = "gathering"
    DISTINCT = "distinct"


class Reason(enum.Enum):
    TWO_CONSECUTIVE = "TwoConsecutive"
    THREE_CONSECUTIVE = "ThreeConsecutive"
    FULL_RING_WITH_MULTIPLICITY = "FullRingWithMultiplicity"
    FIVE_RING_THREE_VERTICES_ADJ_MULT = "FiveRingThreeVerticesAdjMult"
    FIVE_RING_FOUR_VERTICES = "FiveRingFourVertices"
    FULL_FOUR_RING_DISTINCT = "FullFourRingDistinct"
    FULL_FIVE_RING_DISTINCT = "FullFiveRingDistinct"
    OUTSIDE_THEORY = "OutsideTheory"


@dataclass(frozen=True)
class Verdict:
    solvable: bool
    reason: Reason | None = None

    @property
    def definite(self) -> bool:
        return self.reason is not Reason.OUTSIDE_THEORY

    def __str__(self) -> str:
        if self.solvable:
            return "Solvable"
        if not self.definite:
            return self.reason.value
        return f"Unsolvable: {self.reason.value}"

    def to_json(self) -> dict:
        return {"solvable": self.solvable, "reason": self.reason.value if self.reason else None}


SOLVABLE = Verdict(True)


def _unsolvable(reason: Reason) -> Verdict:
    return Verdict(False, reason)


def _distinct_family(config: RingConfig) -> Reason | None:
    n, k = config.n, config.k
    single_island = len(islands(config.pattern)) == 1
    if k == 3 and single_island and len(config.pattern.occupied) == 3:
        return Reason.THREE_CONSECUTIVE
    if n == 4 and k == 4:
        return Reason.FULL_FOUR_RING_DISTINCT
    if n == 5 and k == 5:
        return Reason.FULL_FIVE_RING_DISTINCT
    return None


def classify_theory(config: RingConfig, problem: Problem = Problem.GATHERING) -> Verdict:
    if problem is Problem.DISTINCT and not config.distinct:
        raise ValueError("distinct gathering requires at most one robot per vertex")
    if config.distinct:
        reason = _distinct_family(config)
        if reason is not None:
            return _unsolvable(reason)
        if problem is Problem.DISTINCT:
            return SOLVABLE

    n, k, counts = config.n, config.k, config.counts
    occupied = config.pattern.occupied
    m = len(occupied)
    single_island = m < n and len(islands(config.pattern)) == 1
    if k >= 3 and m == 2 and single_island:
        return _unsolvable(Reason.TWO_CONSECUTIVE)
    if k >= 3 and m == 3 and (single_island or n == 3):
        return _unsolvable(Reason.THREE_CONSECUTIVE)
    if m == n and k > n:
        return _unsolvable(Reason.FULL_RING_WITH_MULTIPLICITY)
    if n == 5 and m == 3:
        adjacent_mult = any(
            counts[v] >= 2 and (counts[(v - 1) % n] or counts[(v + 1) % n]) for v in occupied
        )
        if adjacent_mult and k >= 5:
            return _unsolvable(Reason.FIVE_RING_THREE_VERTICES_ADJ_MULT)
        if adjacent_mult and k == 4:
            return _unsolvable(Reason.OUTSIDE_THEORY)
    if n == 5 and m == 4 and k >= 5:
        return _unsolvable(Reason.FIVE_RING_FOUR_VERTICES)
    return SOLVABLE
