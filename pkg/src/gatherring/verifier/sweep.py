"""Cross-check the solvability theory against exhaustive behaviour over ranges of n and k."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..ring import RingConfig, enumerate_initial
from .explore import (
    DEFAULT_MAX_STATES,
    AlwaysGathers,
    ExistsFailure,
    Explorer,
    explore_all,
    residency_limits,
    within,
)
from .theory import Problem, Verdict, classify_theory


def epoch_bound(n: int) -> int:
    return n - 3 if n >= 6 else max(n - 3, 2)


@dataclass
class Violation:
    category: str  # theory | epochs | transition | residency | t5
    config: RingConfig
    detail: str

    def to_json(self) -> dict:
        return {"category": self.category, "config": self.config.to_json(), "detail": self.detail}

    def __str__(self) -> str:
        return f"[{self.category}] {self.config.label()}: {self.detail}"


@dataclass
class Row:
    config: RingConfig
    verdict: Verdict
    result: AlwaysGathers | ExistsFailure
    violations: list[Violation] = field(default_factory=list)

    @property
    def max_epochs(self) -> int | None:
        return self.result.max_epochs if isinstance(self.result, AlwaysGathers) else None

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "label": self.config.label(),
            "verdict": self.verdict.to_json(),
            "result": self.result.to_json(),
            "max_epochs": self.max_epochs,
        }


def check_row(config: RingConfig, verdict: Verdict, result) -> list[Violation]:
    n, k = config.n, config.k
    out = []
    gathers = isinstance(result, AlwaysGathers)
    if not verdict.definite:
        return out
    if verdict.solvable and not gathers:
        w = result.witness
        out.append(Violation("theory", config, f"theory Solvable but adversary cycles: {w.to_json()}"))
    if not verdict.solvable and gathers:
        out.append(Violation("theory", config, f"theory {verdict} but every execution gathers"))
    if not (verdict.solvable and gathers):
        return out
    bound = epoch_bound(n)
    if result.max_epochs > bound:
        out.append(Violation("epochs", config, f"{result.max_epochs} epochs > bound {bound}"))
    if result.bad_transition:
        a, b = result.bad_transition
        out.append(Violation("transition", config, f"T{a} -> T{b} not in the transition table"))
    for task, limit in residency_limits(n, k).items():
        seen = result.max_residency.get(task, 0)
        if not within(seen, limit):
            out.append(Violation("residency", config, f"T{task} held {seen} rounds, bound {limit[0]} {limit[1]}"))
    if result.t5_violation:
        out.append(Violation("t5", config, result.t5_violation))
    return out


def _group(n: int, k: int, problem: Problem, max_states: int) -> list[Row]:
    if problem is Problem.DISTINCT and k > n:
        return []
    explorer = Explorer(n, k, max_states)
    rows = []
    for config in enumerate_initial(n, k, distinct=problem is Problem.DISTINCT):
        verdict = classify_theory(config, problem)
        result = explore_all(config, explorer)
        rows.append(Row(config, verdict, result, check_row(config, verdict, result)))
    return rows


@dataclass
class Report:
    problem: Problem
    rows: list[Row]

    @property
    def violations(self) -> list[Violation]:
        return [v for r in self.rows for v in r.violations]

    def by_category(self, category: str) -> list[Violation]:
        return [v for v in self.violations if v.category == category]

    def epochs_per_n(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.rows:
            if r.verdict.solvable and r.max_epochs is not None:
                out[r.config.n] = max(out.get(r.config.n, 0), r.max_epochs)
        return out

    def transitions(self) -> set[tuple[int, int]]:
        edges = set()
        for r in self.rows:
            if r.verdict.solvable and isinstance(r.result, AlwaysGathers):
                edges |= r.result.transitions
        return edges

    def aggregates(self) -> list[dict]:
        observed = self.epochs_per_n()
        return [
            {"n": n, "max_epochs": e, "bound": n - 3, "checked_bound": epoch_bound(n), "lower_bound_ref": n // 2}
            for n, e in sorted(observed.items())
        ]

    def to_json(self) -> dict:
        return {
            "problem": self.problem.value,
            "rows": [r.to_json() for r in self.rows],
            "aggregates": self.aggregates(),
            "transitions": sorted(f"T{a}->T{b}" for a, b in self.transitions()),
            "violations": [v.to_json() for v in self.violations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        lines = [f"problem: {self.problem.value}", f"{'configuration':<40} {'theory':<36} {'explored':<16} epochs"]
        for r in self.rows:
            got = "AlwaysGathers" if isinstance(r.result, AlwaysGathers) else "ExistsFailure"
            ep = "-" if r.max_epochs is None else str(r.max_epochs)
            flag = "  !" if r.violations else ""
            lines.append(f"{r.config.label():<40} {str(r.verdict):<36} {got:<16} {ep}{flag}")
        lines.append("")
        lines.append(f"{'n':>3} {'max epochs':>10} {'n-3':>5} {'checked':>8} {'floor(n/2) (reference)':>24}")
        for agg in self.aggregates():
            lines.append(
                f"{agg['n']:>3} {agg['max_epochs']:>10} {agg['bound']:>5} {agg['checked_bound']:>8} {agg['lower_bound_ref']:>24}"
            )
        lines.append("")
        viol = self.violations
        lines.append(f"violations: {len(viol)}")
        lines.extend(f"  {v}" for v in viol)
        return "\n".join(lines)


def sweep(
    n_range: Iterable[int],
    k_range: Iterable[int] | Callable[[int], Iterable[int]],
    problem: Problem = Problem.GATHERING,
    jobs: int = 1,
    max_states: int = DEFAULT_MAX_STATES,
) -> Report:
    groups = []
    for n in n_range:
        ks = k_range(n) if callable(k_range) else k_range
        groups.extend((n, k) for k in ks)
    if jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_group, n, k, problem, max_states) for n, k in groups]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_group(n, k, problem, max_states) for n, k in groups]
    return Report(problem, [row for chunk in chunks for row in chunk])
