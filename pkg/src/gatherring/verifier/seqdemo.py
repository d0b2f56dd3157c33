"""Three robots on two adjacent vertices, scheduled by an adaptive sequential adversary."""

from __future__ import annotations

from typing import Sequence

from ..engine import CycleDetected, EpochBudgetExhausted, Gathered, SimState, TraceEvent, activate
from ..moves import Direction, move_name
from ..scheduling import seq_adaptive_adversary


def seq_demo(n: int, max_rounds: int = 1000) -> tuple[CycleDetected | Gathered | EpochBudgetExhausted, list[TraceEvent]]:
    if n < 3:
        raise ValueError(f"ring needs at least 3 vertices, got n={n}")
    positions: tuple[int, ...] = (0, 0, 1)
    k = len(positions)
    idle = (0,) * k
    seen = {(positions, idle): 0}
    trace: list[TraceEvent] = []
    epoch, pending = 1, set(range(k))
    for round_no in range(1, max_rounds + 1):
        state = SimState(n, positions)
        rank = seq_adaptive_adversary(positions, idle, n)
        new_positions, task, options, chosen = activate(state, rank, lambda d: d.options[0])
        if not pending:
            epoch, pending = epoch + 1, set(range(k))
        pending.discard(rank)
        after = SimState(n, new_positions)
        trace.append(
            TraceEvent(
                round=round_no,
                epoch=epoch,
                rank=rank,
                vertex_before=positions[rank],
                task=task,
                move=move_name(task) if chosen != Direction.STAY else "nil",
                options=options,
                chosen=chosen,
                vertex_after=new_positions[rank],
                occupancy_after=after.counts,
            )
        )
        positions = new_positions
        idle = tuple(0 if r == rank else i + 1 for r, i in enumerate(idle))
        if after.gathered:
            return Gathered(positions[0], epoch, round_no), trace
        key = (positions, idle)
        if key in seen:
            return CycleDetected(round_no - seen[key], round_no), trace
        seen[key] = round_no
    return EpochBudgetExhausted(max_rounds), trace


def fairness_gaps(ranks: Sequence[int], k: int) -> dict[int, int]:
    """Longest stretch of rounds without activating each rank, edges of the trace included."""
    total = len(ranks)
    last = {r: 0 for r in range(k)}
    gaps = {r: 0 for r in range(k)}
    for t, r in enumerate(ranks, start=1):
        gaps[r] = max(gaps[r], t - last[r] - 1)
        last[r] = t
    for r in range(k):
        gaps[r] = max(gaps[r], total - last[r])
    return gaps


def fair_within(ranks: Sequence[int], k: int, window: int) -> bool:
    """Every window of ``window`` consecutive rounds activates every rank."""
    return all(g < window for g in fairness_gaps(ranks, k).values())
