"""The six-ring running example: five robots gathering through every task.

The eight panels fix the configurations but not the Round-Robin order, so the
order and the adversary's choices are recovered by a bounded search and kept
as a fixture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from .engine import Gathered, RunResult, SimState, run
from .moves import compute
from .ring import RingConfig, multiset_assignments
from .scheduling import Scripted
from .views import TaskId, classify_task

N = 6
START = (0, 1, 1, 0, 1, 2)
TARGET_VERTEX = 5
MAX_ROUNDS = 15  # three epochs of five robots

# (label, counts on v1..v6, task the configuration belongs to)
PANELS: tuple[tuple[str, tuple[int, ...], TaskId], ...] = (
    ("a", (0, 1, 1, 0, 1, 2), TaskId.T1),
    ("b", (1, 1, 1, 0, 1, 1), TaskId.T2),
    ("c", (2, 1, 1, 0, 1, 0), TaskId.T1),
    ("d", (2, 2, 0, 0, 1, 0), TaskId.T4),
    ("e", (4, 0, 0, 0, 1, 0), TaskId.T5),
    ("f", (2, 0, 0, 0, 1, 2), TaskId.T6),
    ("g", (2, 0, 0, 0, 0, 3), TaskId.T7),
    ("h", (0, 0, 0, 0, 0, 5), TaskId.T8),
)

SCENARIO_FILE = "fig5_scenario.json"
TRACE_FILE = "fig5_trace.jsonl"


def _task(counts: tuple[int, ...]) -> TaskId:
    return classify_task(RingConfig(N, counts).pattern)


def match_panels(configs: list[tuple[int, ...]]) -> list[int] | None:
    """Index in ``configs`` where each panel is shown, or None if the run does not follow the panels.

    The task of consecutive configurations, with repeats collapsed, must read
    exactly as the panel tasks, and every panel must occur within its own task run.
    """
    runs: list[list[int]] = []
    last = None
    for i, c in enumerate(configs):
        t = _task(c)
        if t != last:
            runs.append([])
            last = t
        runs[-1].append(i)
    if len(runs) != len(PANELS):
        return None
    hits = []
    for run_idx, (_, counts, task) in zip(runs, PANELS):
        if _task(configs[run_idx[0]]) != task:
            return None
        where = [i for i in run_idx if configs[i] == counts]
        if not where:
            return None
        hits.append(where[0])
    return hits


@dataclass(frozen=True)
class GoldenScenario:
    assignment: tuple[int, ...]
    script: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n": N,
            "counts": list(START),
            "rr_assignment": list(self.assignment),
            "adversary": {"kind": "scripted", "script": list(self.script)},
        }

    def run(self) -> RunResult:
        return run(RingConfig(N, START), self.assignment, Scripted(self.script), max_epochs=N + 2)


def _dfs(state: SimState, configs: list, choices: list, run_no: int, matched: bool) -> Iterator[tuple[int, ...]]:
    """Yield scripts whose runs follow the panels; ``run_no`` indexes the current task run."""
    if state.gathered:
        if run_no == len(PANELS) - 1 and matched and state.positions[0] == TARGET_VERTEX:
            yield tuple(choices)
        return
    if len(configs) - 1 >= MAX_ROUNDS:
        return
    rank = state.pointer
    pattern = state.pattern
    options = compute(pattern, state.positions[rank])
    for idx, d in enumerate(options):
        positions = list(state.positions)
        positions[rank] = (positions[rank] + d) % N
        nxt = SimState(N, tuple(positions), (state.pointer + 1) % state.k)
        counts = nxt.counts
        task = _task(counts)
        cur = PANELS[run_no][2]
        if task == cur:
            nrun, nmatched = run_no, matched or counts == PANELS[run_no][1]
        elif matched and run_no + 1 < len(PANELS) and task == PANELS[run_no + 1][2]:
            nrun, nmatched = run_no + 1, counts == PANELS[run_no + 1][1]
        else:
            continue
        picks = choices + [idx] if len(options) > 1 else choices
        yield from _dfs(nxt, configs + [counts], picks, nrun, nmatched)


def search_golden() -> GoldenScenario | None:
    """First assignment (in lexicographic order) and script whose run reproduces the panels."""
    config = RingConfig(N, START)
    for assignment in multiset_assignments(config):
        state = SimState(N, assignment, 0)
        for script in _dfs(state, [START], [], 0, START == PANELS[0][1]):
            return GoldenScenario(assignment, script)
    return None


def render_trace(result: RunResult) -> str:
    return result.jsonl()


def load_fixture() -> tuple[GoldenScenario, str]:
    data = resources.files("gatherring") / "data"
    scenario = json.loads((data / SCENARIO_FILE).read_text())
    trace = (data / TRACE_FILE).read_text()
    golden = GoldenScenario(tuple(scenario["rr_assignment"]), tuple(scenario["adversary"]["script"]))
    return golden, trace


@dataclass
class Fig5Report:
    golden: GoldenScenario
    result: RunResult
    panel_rounds: list[int] | None
    fixture_equal: bool | None

    @property
    def ok(self) -> bool:
        out = self.result.outcome
        return (
            self.panel_rounds is not None
            and isinstance(out, Gathered)
            and out.vertex == TARGET_VERTEX
            and out.epochs_used <= N - 3
            and self.fixture_equal is not False
        )

    def summary(self) -> str:
        out = self.result.outcome
        if self.panel_rounds is None:
            return "panels not matched"
        where = ", ".join(f"({p[0]}) round {r}" for p, r in zip(PANELS, self.panel_rounds))
        lines = [f"{len(PANELS)} panels matched, gathering at v{out.vertex + 1}" if isinstance(out, Gathered) else "no gathering"]
        lines.append(f"panels: {where}")
        lines.append(f"assignment (v1..v6 per rank): {[v + 1 for v in self.golden.assignment]}, script {list(self.golden.script)}")
        if isinstance(out, Gathered):
            lines.append(f"rounds {out.rounds}, epochs {out.epochs_used} (bound {N - 3})")
        if self.fixture_equal is not None:
            lines.append("fixture trace: " + ("identical" if self.fixture_equal else "DIFFERS"))
        return "\n".join(lines)


def repro_fig5(use_fixture: bool = True) -> Fig5Report:
    """Replay the committed golden scenario (or search afresh) and check it against the panels."""
    expected = None
    if use_fixture:
        try:
            golden, expected = load_fixture()
        except FileNotFoundError:
            golden = None
    else:
        golden = None
    if golden is None:
        golden = search_golden()
        if golden is None:
            raise RuntimeError("no Round-Robin order reproduces the panels within the round budget")
    result = golden.run()
    panels = match_panels(result.configs())
    equal = None if expected is None else render_trace(result) == expected
    return Fig5Report(golden, result, panels, equal)


def write_fixture(golden: GoldenScenario, directory) -> None:
    directory = Path(directory)
    (directory / SCENARIO_FILE).write_text(json.dumps(golden.to_json(), indent=2) + "\n")
    (directory / TRACE_FILE).write_text(render_trace(golden.run()))

