"""Round-Robin activation, adversary policies and the adaptive SEQ adversary."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .moves import DecisionSet, Direction


def advance(pointer: int, k: int) -> tuple[int, int]:
    """Return the rank to activate and the pointer for the next round."""
    return pointer, (pointer + 1) % k


@dataclass
class RRSchedule:
    assignment: tuple[int, ...]
    pointer: int = 0

    def __post_init__(self) -> None:
        self.assignment = tuple(self.assignment)
        if not self.assignment:
            raise ValueError("Round-Robin schedule needs at least one robot")
        if not 0 <= self.pointer < self.k:
            raise ValueError(f"pointer {self.pointer} out of range for k={self.k}")

    @property
    def k(self) -> int:
        return len(self.assignment)

    def next_activation(self) -> int:
        rank, self.pointer = advance(self.pointer, self.k)
        return rank

    def matches(self, counts: Sequence[int]) -> bool:
        tally = [0] * len(counts)
        for v in self.assignment:
            if not 0 <= v < len(counts):
                return False
            tally[v] += 1
        return tally == list(counts)


def default_assignment(counts: Sequence[int]) -> tuple[int, ...]:
    """Ranks on occupied vertices in increasing index, multiplicities consecutive."""
    return tuple(v for v, c in enumerate(counts) for _ in range(c))


class ScriptExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class FirstOption:
    kind = "first"

    def to_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Seeded:
    seed: int
    kind = "seeded"

    def to_json(self) -> dict:
        return {"kind": self.kind, "seed": self.seed}


@dataclass
class Scripted:
    """Option indices consumed in order, one per multi-option decision."""

    choices: tuple[int, ...]
    cursor: int = field(default=0, compare=False)
    kind = "scripted"

    def __post_init__(self) -> None:
        self.choices = tuple(int(c) for c in self.choices)

    def fresh(self) -> Scripted:
        return Scripted(self.choices)

    def to_json(self) -> dict:
        return {"kind": self.kind, "script": list(self.choices)}


@dataclass(frozen=True)
class BranchAll:
    """Marker for exhaustive exploration; only the verifier understands it."""

    kind = "branch-all"

    def to_json(self) -> dict:
        return {"kind": self.kind}


AdversaryPolicy = FirstOption | Seeded | Scripted | BranchAll


def policy_from_json(data: dict | None) -> AdversaryPolicy:
    if not data:
        return FirstOption()
    kind = data.get("kind", "first")
    if kind == "first":
        return FirstOption()
    if kind == "seeded":
        return Seeded(int(data["seed"]))
    if kind == "scripted":
        return Scripted(tuple(data.get("script", ())))
    raise ValueError(f"unknown adversary kind {kind!r}")


def resolve(d: DecisionSet, policy: AdversaryPolicy, ctx: int) -> Direction:
    """Pick one option of ``d``; ``ctx`` is the round number."""
    if isinstance(policy, BranchAll):
        raise ValueError("branch-all is resolved by exhaustive exploration, not here")
    if len(d) == 1:
        return d.options[0]
    if isinstance(policy, FirstOption):
        return d.options[0]
    if isinstance(policy, Seeded):
        return random.Random(f"{policy.seed}:{ctx}").choice(d.options)
    if isinstance(policy, Scripted):
        if policy.cursor >= len(policy.choices):
            raise ScriptExhausted(f"script exhausted at round {ctx} with options {d.names()}")
        idx = policy.choices[policy.cursor]
        if not 0 <= idx < len(d):
            raise ValueError(f"script choice {idx} out of range for options {d.names()} at round {ctx}")
        policy.cursor += 1
        return d.options[idx]
    raise TypeError(f"not an adversary policy: {policy!r}")


def seq_adaptive_adversary(positions: Sequence[int], idle: Sequence[int], n: int) -> int:
    """Rank to activate next under the sequential adversary of the SEQ impossibility.

    Among robots sharing a vertex, the one idle longest goes first (lowest rank
    on ties), so the multiplicity keeps bouncing between the two vertices.
    ``idle[r]`` counts rounds since rank r was last activated. A rank idle
    for ``2k - 1`` rounds is activated regardless, which bounds every gap by 2k.
    """
    k = len(positions)
    occupied = sorted(set(positions))
    if len(occupied) != 2 or (occupied[1] - occupied[0]) % n not in (1, n - 1):
        raise ValueError("SEQ adversary needs exactly two adjacent occupied vertices")
    starving = [r for r in range(k) if idle[r] >= 2 * k - 1]
    if starving:
        return max(starving, key=lambda r: (idle[r], -r))
    on_mult = [r for r in range(k) if positions.count(positions[r]) >= 2]
    return max(on_mult, key=lambda r: (idle[r], -r))
