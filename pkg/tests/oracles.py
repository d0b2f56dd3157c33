"""Independent brute-force references, sharing nothing with the reduced explorer."""

from __future__ import annotations

import itertools
import sys

from gatherring.moves import compute
from gatherring.ring import OccupancyPattern


def symmetry_classes(n: int, k: int, distinct: bool) -> set[frozenset]:
    """Orbits of count vectors under all rotations and reflections."""
    cap = 1 if distinct else k
    classes = set()
    for counts in itertools.product(range(cap + 1), repeat=n):
        if sum(counts) != k:
            continue
        orbit = set()
        for s in range(n):
            rot = counts[s:] + counts[:s]
            orbit.add(rot)
            orbit.add(tuple(reversed(rot)))
        classes.add(frozenset(orbit))
    return classes


def assignments(counts) -> set[tuple[int, ...]]:
    base = [v for v, c in enumerate(counts) for _ in range(c)]
    return set(itertools.permutations(base))


def worst_case(n: int, counts) -> int | None:
    """Longest number of rounds to gather over every order and tie; None if some run never gathers.

    Plain memoised DFS over concrete (positions, pointer) states.
    """
    sys.setrecursionlimit(100_000)
    k = sum(counts)
    memo: dict = {}
    on_stack: set = set()

    def go(pos: tuple[int, ...], ptr: int) -> int | None:
        if len(set(pos)) == 1:
            return 0
        key = (pos, ptr)
        if key in memo:
            return memo[key]
        if key in on_stack:
            return None
        on_stack.add(key)
        pattern = OccupancyPattern(tuple(v in pos for v in range(n)))
        best = 0
        for d in compute(pattern, pos[ptr]):
            nxt = list(pos)
            nxt[ptr] = (nxt[ptr] + d) % n
            sub = go(tuple(nxt), (ptr + 1) % k)
            if sub is None:
                best = None
                break
            best = max(best, sub + 1)
        on_stack.discard(key)
        memo[key] = best
        return best

    results = [go(a, 0) for a in assignments(counts)]
    if any(r is None for r in results):
        return None
    return max(results)
