"""Solvability theory, exhaustive exploration and sweeps."""

from __future__ import annotations

from .explore import AlwaysGathers, BudgetExceeded, ExistsFailure, Explorer, Witness, explore_all, replay_witness
from .seqdemo import fair_within, fairness_gaps, seq_demo
from .sweep import Report, Violation, epoch_bound, sweep
from .theory import Problem, Reason, Verdict, classify_theory

__all__ = [
    "AlwaysGathers", "BudgetExceeded", "ExistsFailure", "Explorer", "Problem", "Reason", "Report",
    "Verdict", "Violation", "Witness", "classify_theory", "epoch_bound", "explore_all",
    "fair_within", "fairness_gaps", "replay_witness", "seq_demo", "sweep",
]
