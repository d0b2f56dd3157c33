"""Simulator and exhaustive checker for oblivious robots gathering on a ring under Round-Robin."""

from __future__ import annotations

from .engine import CycleDetected, EpochBudgetExhausted, Gathered, RunResult, SimState, run, step
from .moves import DecisionSet, Direction, compute
from .ring import OccupancyPattern, RingConfig, canonicalize, enumerate_initial, holes, islands
from .scheduling import FirstOption, Scripted, Seeded
from .views import TaskId, classify_task, predicates

__version__ = "0.1.0"

__all__ = [
    "CycleDetected", "DecisionSet", "Direction", "EpochBudgetExhausted", "FirstOption", "Gathered",
    "OccupancyPattern", "RingConfig", "RunResult", "Scripted", "Seeded", "SimState", "TaskId",
    "canonicalize", "classify_task", "compute", "enumerate_initial", "holes", "islands",
    "predicates", "run", "step",
]
