"""Exhaustive adversarial exploration of every Round-Robin order and tie choice.

States are rank -> vertex tuples with the Round-Robin pointer normalised to 0
by rotating rank labels, then reduced modulo the ring's rotations and
reflections. Both reductions commute with the dynamics, so a cycle in the
reduced graph is a non-gathering execution and an acyclic reduced graph means
every execution gathers.

Strongly connected components are found with an iterative Tarjan pass; the
per-state summaries below are folded in reverse topological order as each
component completes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from ..engine import CycleDetected, epochs_for, run
from ..moves import compute
from ..ring import OccupancyPattern, RingConfig, multiset_assignments
from ..scheduling import Scripted
from ..views import classify_task

# tasks each task may hand over to in one round (itself included)
ALLOWED_TRANSITIONS: dict[int, frozenset[int]] = {
    1: frozenset({1, 2, 4, 5}),
    2: frozenset({1, 2, 4}),
    3: frozenset({2, 3, 4}),
    4: frozenset({4, 5}),
    5: frozenset({6, 7}),
    6: frozenset({6, 7}),
    7: frozenset({7, 8}),
    8: frozenset({8}),
}

GATHERED = 8
DEFAULT_MAX_STATES = 5_000_000


class BudgetExceeded(RuntimeError):
    pass


def residency_limits(n: int, k: int) -> dict[int, tuple[str, int]]:
    """Per-task bound on consecutive rounds spent in a task: (comparison, rounds)."""
    return {
        1: ("<", n * k),
        2: ("<=", k),
        3: ("<", 2 * k),
        4: ("<=", max(n - 5, 0) * k),
        6: ("<=", k),
        7: ("<=", k),
    }


def within(value: int, limit: tuple[str, int]) -> bool:
    op, bound = limit
    return value < bound if op == "<" else value <= bound


@dataclass(slots=True)
class Summary:
    """Worst case over every execution from one reduced state (acyclic part only)."""

    fails: bool
    rounds: int = 0  # max rounds until gathered
    run: int = 0  # rounds in the current task before leaving it
    max_run: tuple[int, ...] = (0,) * 9  # indexed by task
    bad_transition: tuple[int, int] | None = None
    gather_at: frozenset[int] | None = None  # final vertices, own coordinates; tasks 5-7 only
    t5_violation: str | None = None
    t5_rounds: int = 0  # max rounds from a T5 state to gathered
    edges: int = 0  # bitmask of observed task transitions, bit 9*a + b


FAILS = Summary(fails=True)


def edge_set(mask: int) -> frozenset[tuple[int, int]]:
    return frozenset((i // 9, i % 9) for i in range(81) if mask >> i & 1)


class Explorer:
    """Reduced state graph for one ring size and robot count, shared across configurations."""

    def __init__(self, n: int, k: int, max_states: int = DEFAULT_MAX_STATES) -> None:
        self.n, self.k = n, k
        self.max_states = max_states
        self.task: dict[tuple, int] = {}
        self.edges: dict[tuple, list[tuple]] = {}
        self.summary: dict[tuple, Summary] = {}
        self.scc_of: dict[tuple, int] = {}  # only states on cycles
        self._decisions: dict[tuple, tuple[int, tuple[int, ...]]] = {}

    # -- reduction -------------------------------------------------------
    def canon(self, positions: Sequence[int]) -> tuple[tuple[int, ...], int, int]:
        """Reduced key plus the map ``v -> sign*v + shift`` taking positions to it."""
        n, p0 = self.n, positions[0]
        a = tuple((v - p0) % n for v in positions)
        b = tuple((p0 - v) % n for v in positions)
        return (a, 1, -p0) if a <= b else (b, -1, p0)

    def canon_state(self, positions: Sequence[int], pointer: int) -> tuple[tuple[int, ...], int, int]:
        rotated = tuple(positions[pointer:]) + tuple(positions[:pointer])
        return self.canon(rotated)

    def decide(self, bits: tuple[bool, ...], pos: int) -> tuple[int, tuple[int, ...]]:
        key = (bits, pos)
        hit = self._decisions.get(key)
        if hit is None:
            p = OccupancyPattern(bits)
            hit = (int(classify_task(p)), tuple(int(d) for d in compute(p, pos)))
            self._decisions[key] = hit
        return hit

    def _bits(self, positions: Sequence[int]) -> tuple[bool, ...]:
        occ = [False] * self.n
        for v in positions:
            occ[v] = True
        return tuple(occ)

    def expand(self, key: tuple[int, ...]) -> list[tuple]:
        """Successors of a reduced state as ``(option, next_key|None, sign, shift, vertex)``.

        ``next_key`` is None when the move gathers everyone at ``vertex``.
        """
        out = self.edges.get(key)
        if out is not None:
            return out
        if len(self.task) >= self.max_states:
            raise BudgetExceeded(f"state budget of {self.max_states} exceeded for n={self.n} k={self.k}")
        n = self.n
        bits = self._bits(key)
        v = key[0]
        task, options = self.decide(bits, v)
        self.task[key] = task
        out = []
        for d in options:
            nv = (v + d) % n
            rotated = key[1:] + (nv,)
            if all(x == nv for x in rotated):
                out.append((d, None, 1, 0, nv))
            else:
                nk, sign, shift = self.canon(rotated)
                out.append((d, nk, sign, shift, nv))
        self.edges[key] = out
        return out

    # -- graph analysis --------------------------------------------------
    def analyse(self, roots: Sequence[tuple]) -> None:
        index: dict[tuple, int] = {}
        low: dict[tuple, int] = {}
        stack: list[tuple] = []
        on_stack: set[tuple] = set()
        counter = 0
        for root in roots:
            if root in self.summary or root in index:
                continue
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            work = [(root, iter(self.expand(root)))]
            while work:
                node, it = work[-1]
                descended = False
                for edge in it:
                    w = edge[1]
                    if w is None or w in self.summary:
                        continue
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.expand(w))))
                        descended = True
                        break
                    if w in on_stack:
                        low[node] = min(low[node], index[w])
                if descended:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    members = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        members.append(w)
                        if w == node:
                            break
                    self._finish(members)
                    for w in members:
                        del index[w], low[w]

    def _finish(self, members: list[tuple]) -> None:
        node = members[0]
        cyclic = len(members) > 1 or any(e[1] == node for e in self.edges[node])
        if cyclic:
            scc_id = len(self.scc_of)
            for w in members:
                self.scc_of[w] = scc_id
                self.summary[w] = FAILS
            return
        self.summary[node] = self._fold(node)

    def _fold(self, node: tuple) -> Summary:
        n, k = self.n, self.k
        task = self.task[node]
        edges = self.edges[node]
        succ = [(e, self.summary[e[1]] if e[1] is not None else None) for e in edges]
        if any(s is not None and s.fails for _, s in succ):
            return FAILS

        rounds = 0
        run = 1
        max_run = [0] * 9
        bad = None
        seen_edges = 0
        gather_at: set[int] | None = set() if task in (5, 6, 7) else None
        t5_violation = None
        t5_rounds = 0
        for (d, nk, sign, shift, v), s in succ:
            nxt = GATHERED if nk is None else self.task[nk]
            seen_edges |= 1 << (9 * task + nxt)
            if nxt not in ALLOWED_TRANSITIONS[task] and bad is None:
                bad = (task, nxt)
            if s is None:
                rounds = max(rounds, 1)
                if gather_at is not None:
                    gather_at.add(v)
                continue
            rounds = max(rounds, 1 + s.rounds)
            if nxt == task:
                run = max(run, 1 + s.run)
            max_run = [max(a, b) for a, b in zip(max_run, s.max_run)]
            if bad is None and s.bad_transition is not None:
                bad = s.bad_transition
            seen_edges |= s.edges
            if t5_violation is None:
                t5_violation = s.t5_violation
            t5_rounds = max(t5_rounds, s.t5_rounds)
            if gather_at is not None:
                if s.gather_at is None:
                    gather_at = None
                else:
                    # reduced coordinates back to this state's coordinates
                    gather_at.update((sign * (c - shift)) % n for c in s.gather_at)
        max_run[task] = max(max_run[task], run)

        if task == 5:
            a, b = sorted(set(node))
            separations = {
                x for x in range(n)
                if x not in (a, b) and all((x - y) % n in (1, n - 1) for y in (a, b))
            }
            t5_rounds = max(t5_rounds, rounds)
            if t5_violation is None:
                if gather_at is None or not gather_at <= separations:
                    t5_violation = f"T5 state {node}: gathers at {sorted(gather_at or [])}, separation {sorted(separations)}"
                elif rounds > 2 * k:
                    t5_violation = f"T5 state {node}: {rounds} rounds to gather > {2 * k}"
        return Summary(
            fails=False,
            rounds=rounds,
            run=run,
            max_run=tuple(max_run),
            bad_transition=bad,
            gather_at=frozenset(gather_at) if gather_at is not None else None,
            t5_violation=t5_violation,
            t5_rounds=t5_rounds,
            edges=seen_edges,
        )

    # -- witnesses -------------------------------------------------------
    def lasso(self, roots: Sequence[tuple]) -> tuple[list[tuple], list[int], list[tuple], list[int]]:
        """Shortest path from a root to a cycle, then the shortest cycle through its end.

        Returns (prefix states, prefix option indices, cycle states, cycle option indices);
        the cycle list starts and ends at the same state.
        """
        parent: dict[tuple, tuple | None] = {}
        queue = deque()
        for r in sorted(roots):
            if r not in parent:
                parent[r] = None
                queue.append(r)
        target = None
        while queue:
            node = queue.popleft()
            if node in self.scc_of:
                target = node
                break
            for i, e in enumerate(self.edges[node]):
                w = e[1]
                if w is not None and w not in parent:
                    parent[w] = (node, i)
                    queue.append(w)
        if target is None:
            raise ValueError("no reachable cycle")
        prefix, picks = [target], []
        while parent[prefix[-1]] is not None:
            prev, i = parent[prefix[-1]]
            prefix.append(prev)
            picks.append(i)
        prefix.reverse()
        picks.reverse()

        scc = self.scc_of[target]
        back: dict[tuple, tuple] = {}
        queue = deque([target])
        found = None
        while queue and found is None:
            node = queue.popleft()
            for i, e in enumerate(self.edges[node]):
                w = e[1]
                if w is None or self.scc_of.get(w) != scc:
                    continue
                if w == target:
                    found = (node, i)
                    break
                if w not in back:
                    back[w] = (node, i)
                    queue.append(w)
        cycle, cpicks = [target], [found[1]]
        node = found[0]
        while node != target:
            cycle.append(node)
            prev, i = back[node]
            cpicks.append(i)
            node = prev
        cycle.append(target)
        cycle.reverse()
        cpicks.reverse()
        return prefix, picks, cycle, cpicks


@dataclass(frozen=True)
class Witness:
    assignment: tuple[int, ...]
    script: tuple[int, ...]
    period: int
    prefix: int

    def to_json(self) -> dict:
        return {"assignment": list(self.assignment), "script": list(self.script), "period": self.period, "prefix": self.prefix}


@dataclass
class AlwaysGathers:
    max_epochs: int
    max_rounds: int
    max_residency: dict[int, int] = field(default_factory=dict)
    bad_transition: tuple[int, int] | None = None
    t5_violation: str | None = None
    t5_rounds: int = 0
    transitions: frozenset[tuple[int, int]] = frozenset()
    kind = "always_gathers"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "max_epochs": self.max_epochs,
            "max_rounds": self.max_rounds,
            "max_residency": {f"T{t}": r for t, r in sorted(self.max_residency.items())},
            "bad_transition": [f"T{t}" for t in self.bad_transition] if self.bad_transition else None,
            "t5_violation": self.t5_violation,
            "t5_rounds": self.t5_rounds,
        }


@dataclass
class ExistsFailure:
    witness: Witness
    kind = "exists_failure"

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness.to_json()}


ExploreResult = AlwaysGathers | ExistsFailure


def _roots(config: RingConfig, explorer: Explorer) -> dict[tuple, tuple[int, ...]]:
    roots: dict[tuple, tuple[int, ...]] = {}
    for assignment in multiset_assignments(config):
        key, _, _ = explorer.canon(assignment)
        roots.setdefault(key, assignment)
    return roots


def explore_all(
    config: RingConfig,
    explorer: Explorer | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> ExploreResult:
    """Every Round-Robin order crossed with every adversarial tie choice."""
    k = config.k
    if sum(1 for c in config.counts if c) == 1:
        return AlwaysGathers(0, 0)
    if explorer is None:
        explorer = Explorer(config.n, k, max_states)
    elif (explorer.n, explorer.k) != (config.n, k):
        raise ValueError("explorer built for a different ring size or robot count")
    roots = _roots(config, explorer)
    explorer.analyse(list(roots))
    summaries = [explorer.summary[r] for r in roots]
    if any(s.fails for s in summaries):
        failing = [r for r, s in zip(roots, summaries) if s.fails]
        return ExistsFailure(build_witness(config, explorer, failing, roots))

    max_rounds = max(s.rounds for s in summaries)
    residency = {t: max(s.max_run[t] for s in summaries) for t in range(1, 8)}
    bad = next((s.bad_transition for s in summaries if s.bad_transition), None)
    t5 = next((s.t5_violation for s in summaries if s.t5_violation), None)
    mask = 0
    for s in summaries:
        mask |= s.edges
    return AlwaysGathers(
        max_epochs=epochs_for(max_rounds, k),
        max_rounds=max_rounds,
        max_residency=residency,
        bad_transition=bad,
        t5_violation=t5,
        t5_rounds=max(s.t5_rounds for s in summaries),
        transitions=edge_set(mask),
    )


def build_witness(
    config: RingConfig, explorer: Explorer, failing: Sequence[tuple], roots: dict[tuple, tuple[int, ...]]
) -> Witness:
    """Unfold a reduced lasso into concrete rounds until a concrete state repeats."""
    n, k = config.n, config.k
    prefix, _, cycle, _ = explorer.lasso(failing)
    expected = prefix[1:]
    loop = cycle[1:]
    assignment = roots[prefix[0]]
    # the stored assignment may reach prefix[0] through a symmetry; that is fine,
    # only reduced keys are compared below
    positions, pointer = list(assignment), 0
    seen = {(tuple(positions), pointer): 0}
    script: list[int] = []
    limit = len(prefix) + len(loop) * 4 * n * k + 1
    for round_no in range(1, limit + 1):
        target = expected[round_no - 1] if round_no - 1 < len(expected) else loop[(round_no - 1 - len(expected)) % len(loop)]
        v = positions[pointer]
        p = OccupancyPattern(explorer._bits(positions))
        options = compute(p, v)
        pick = None
        for i, d in enumerate(options):
            trial = list(positions)
            trial[pointer] = (v + d) % n
            if len(set(trial)) > 1 and explorer.canon_state(trial, (pointer + 1) % k)[0] == target:
                pick = i
                break
        if pick is None:
            raise RuntimeError("reduced lasso does not lift to a concrete execution")
        if len(options) > 1:
            script.append(pick)
        positions[pointer] = (v + options.options[pick]) % n
        pointer = (pointer + 1) % k
        state = (tuple(positions), pointer)
        if state in seen:
            break
        seen[state] = round_no
    else:
        raise RuntimeError("concrete unfolding did not close a cycle")

    result = run(config, assignment, Scripted(tuple(script)), max_epochs=epochs_for(round_no, k) + 1)
    if not isinstance(result.outcome, CycleDetected):
        raise RuntimeError(f"witness replay ended with {result.outcome}")
    return Witness(tuple(assignment), tuple(script), result.outcome.period, result.outcome.prefix)


def replay_witness(config: RingConfig, witness: Witness):
    k = config.k
    rounds = witness.prefix + witness.period
    return run(config, witness.assignment, Scripted(witness.script), max_epochs=epochs_for(rounds, k) + 1)


__all__ = [
    "ALLOWED_TRANSITIONS",
    "AlwaysGathers",
    "BudgetExceeded",
    "ExistsFailure",
    "Explorer",
    "Witness",
    "build_witness",
    "explore_all",
    "replay_witness",
    "residency_limits",
    "within",
    "edge_set",
]
