"""Round-by-round execution of the gathering algorithm under Round-Robin."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .moves import DecisionSet, Direction, compute, move_name
from .ring import OccupancyPattern, RingConfig
from .scheduling import (
    AdversaryPolicy,
    FirstOption,
    Scripted,
    Seeded,
    advance,
    default_assignment,
    resolve,
)
from .views import TaskId, classify_task


@dataclass(frozen=True)
class SimState:
    n: int
    positions: tuple[int, ...]
    pointer: int = 0

    @property
    def k(self) -> int:
        return len(self.positions)

    @property
    def counts(self) -> tuple[int, ...]:
        counts = [0] * self.n
        for v in self.positions:
            counts[v] += 1
        return tuple(counts)

    @property
    def pattern(self) -> OccupancyPattern:
        return OccupancyPattern(tuple(c > 0 for c in self.counts))

    @property
    def gathered(self) -> bool:
        return len(set(self.positions)) == 1

    def key(self) -> tuple:
        return self.positions, self.pointer


@dataclass(frozen=True)
class TraceEvent:
    round: int
    epoch: int
    rank: int
    vertex_before: int
    task: TaskId
    move: str
    options: DecisionSet
    chosen: Direction
    vertex_after: int
    occupancy_after: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "round": self.round,
            "epoch": self.epoch,
            "rank": self.rank,
            "vertex_before": self.vertex_before,
            "task": str(self.task),
            "move": self.move,
            "options": self.options.names(),
            "chosen": str(self.chosen),
            "vertex_after": self.vertex_after,
            "occupancy_after": list(self.occupancy_after),
        }

    @classmethod
    def from_json(cls, data: dict) -> TraceEvent:
        return cls(
            round=data["round"],
            epoch=data["epoch"],
            rank=data["rank"],
            vertex_before=data["vertex_before"],
            task=TaskId.parse(data["task"]),
            move=data["move"],
            options=DecisionSet(tuple(Direction.parse(o) for o in data["options"])),
            chosen=Direction.parse(data["chosen"]),
            vertex_after=data["vertex_after"],
            occupancy_after=tuple(data["occupancy_after"]),
        )


@dataclass(frozen=True)
class Gathered:
    vertex: int
    epochs_used: int
    rounds: int
    kind = "gathered"

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertex": self.vertex, "epochs_used": self.epochs_used, "rounds": self.rounds}


@dataclass(frozen=True)
class CycleDetected:
    period: int
    first_repeat_round: int
    kind = "cycle"

    @property
    def prefix(self) -> int:
        return self.first_repeat_round - self.period

    def to_json(self) -> dict:
        return {"kind": self.kind, "period": self.period, "first_repeat_round": self.first_repeat_round}


@dataclass(frozen=True)
class EpochBudgetExhausted:
    rounds: int
    kind = "budget"

    def to_json(self) -> dict:
        return {"kind": self.kind, "rounds": self.rounds}


Outcome = Gathered | CycleDetected | EpochBudgetExhausted


def epoch_of(round_no: int, k: int) -> int:
    return (round_no - 1) // k + 1


def epochs_for(rounds: int, k: int) -> int:
    """Epochs needed for ``rounds`` rounds; epoch e covers rounds (e-1)k+1 .. ek."""
    return -(-rounds // k)


def activate(state: SimState, rank: int, choose) -> tuple[tuple[int, ...], TaskId, DecisionSet, Direction]:
    """Look-Compute-Move for one robot; ``choose(options)`` resolves ambiguity."""
    before = state.positions[rank]
    pattern = state.pattern
    if not pattern.bits[before]:
        raise RuntimeError(f"rank {rank} sits on unoccupied vertex {before}")
    task = classify_task(pattern)
    options = compute(pattern, before)
    chosen = choose(options)
    if chosen not in options:
        raise RuntimeError(f"adversary chose {chosen} outside {options.names()}")
    positions = list(state.positions)
    positions[rank] = (before + chosen) % state.n
    return tuple(positions), task, options, chosen


def step(state: SimState, policy: AdversaryPolicy, round_no: int = 1) -> tuple[SimState, TraceEvent]:
    if state.gathered:
        raise ValueError("configuration already gathered; no further steps")
    rank, pointer = advance(state.pointer, state.k)
    positions, task, options, chosen = activate(state, rank, lambda d: resolve(d, policy, round_no))
    nxt = SimState(state.n, positions, pointer)
    event = TraceEvent(
        round=round_no,
        epoch=epoch_of(round_no, state.k),
        rank=rank,
        vertex_before=state.positions[rank],
        task=task,
        move=move_name(task) if chosen != Direction.STAY else "nil",
        options=options,
        chosen=chosen,
        vertex_after=positions[rank],
        occupancy_after=nxt.counts,
    )
    return nxt, event


def check_assignment(config: RingConfig, assignment: Sequence[int] | None) -> tuple[int, ...]:
    if assignment is None:
        return default_assignment(config.counts)
    assignment = tuple(int(v) for v in assignment)
    if RingConfig.from_positions(config.n, assignment).counts != config.counts:
        raise ValueError(f"assignment {list(assignment)} does not match counts {list(config.counts)}")
    return assignment


@dataclass
class RunResult:
    config: RingConfig
    assignment: tuple[int, ...]
    policy: dict
    outcome: Outcome
    trace: list[TraceEvent] = field(default_factory=list)

    def header(self) -> dict:
        return {"n": self.config.n, "k": self.config.k, "assignment": list(self.assignment), "policy": self.policy}

    def jsonl(self) -> str:
        lines = [self.header()] + [e.to_json() for e in self.trace] + [{"outcome": self.outcome.to_json()}]
        return "".join(json.dumps(x, separators=(",", ":")) + "\n" for x in lines)

    def configs(self) -> list[tuple[int, ...]]:
        """Count vectors before the first round and after every round."""
        return [self.config.counts] + [e.occupancy_after for e in self.trace]


def run(
    config: RingConfig,
    assignment: Sequence[int] | None = None,
    policy: AdversaryPolicy | None = None,
    max_epochs: int | None = None,
) -> RunResult:
    assignment = check_assignment(config, assignment)
    policy = policy or FirstOption()
    if isinstance(policy, Scripted):
        policy = policy.fresh()
    if max_epochs is None:
        max_epochs = config.n + 2
    if max_epochs < 1:
        raise ValueError("max_epochs must be at least 1")
    k = config.k
    state = SimState(config.n, assignment, 0)
    trace: list[TraceEvent] = []
    seen = {state.key(): 0}
    detect_cycles = not isinstance(policy, Seeded)
    outcome: Outcome | None = None
    round_no = 0
    while outcome is None:
        if state.gathered:
            outcome = Gathered(state.positions[0], epochs_for(round_no, k), round_no)
            break
        if round_no >= max_epochs * k:
            outcome = EpochBudgetExhausted(round_no)
            break
        round_no += 1
        state, event = step(state, policy, round_no)
        trace.append(event)
        if detect_cycles and not state.gathered:
            key = state.key()
            if key in seen:
                outcome = CycleDetected(round_no - seen[key], round_no)
            seen[key] = round_no
    return RunResult(config, assignment, policy.to_json(), outcome, trace)


def script_from_trace(trace: Iterable[TraceEvent]) -> tuple[int, ...]:
    """Option indices of every multi-option decision, suitable for ``Scripted``."""
    return tuple(e.options.options.index(e.chosen) for e in trace if len(e.options) > 1)


def parse_jsonl(text: str) -> tuple[dict, list[TraceEvent], dict | None]:
    header, events, outcome = None, [], None
    for line in text.splitlines():
        if not line.strip():
            continue
        data = json.loads(line)
        if header is None:
            header = data
        elif "outcome" in data:
            outcome = data["outcome"]
        else:
            events.append(TraceEvent.from_json(data))
    if header is None:
        raise ValueError("trace has no header line")
    return header, events, outcome
