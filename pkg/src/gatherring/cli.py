"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import CycleDetected, EpochBudgetExhausted, Gathered, TraceEvent, parse_jsonl, run
from .ring import RingConfig, enumerate_initial
from .scheduling import Scripted, Seeded, policy_from_json
from .verifier import BudgetExceeded, Problem, classify_theory, seq_demo, sweep
from .verifier.explore import ALLOWED_TRANSITIONS, DEFAULT_MAX_STATES
from .verifier.seqdemo import fair_within
from .views import classify_task

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _counts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"--counts must be a comma-separated list of integers: {text!r}") from exc


def _config(n: int, counts: tuple[int, ...], problem: Problem) -> RingConfig:
    try:
        config = RingConfig(n, counts)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if problem is Problem.DISTINCT and not config.distinct:
        raise InputError("distinct gathering requires at most one robot per vertex")
    return config


def v(i: int) -> str:
    return f"v{i + 1}"


def outcome_exit(outcome) -> int:
    return EXIT_OK if isinstance(outcome, Gathered) else EXIT_FAIL


def describe_outcome(outcome) -> str:
    if isinstance(outcome, Gathered):
        return f"Gathered at {v(outcome.vertex)} after {outcome.rounds} rounds ({outcome.epochs_used} epochs)"
    if isinstance(outcome, CycleDetected):
        return f"CycleDetected: period {outcome.period}, first repeat at round {outcome.first_repeat_round}"
    if isinstance(outcome, EpochBudgetExhausted):
        return f"EpochBudgetExhausted after {outcome.rounds} rounds"
    return str(outcome)


def describe_event(e: TraceEvent) -> str:
    occ = " ".join(str(c) for c in e.occupancy_after)
    return (
        f"round {e.round:>3} epoch {e.epoch:>2} rank {e.rank:>2} {v(e.vertex_before):>4} -> {v(e.vertex_after):<4}"
        f" {e.task} {e.move:<3} options={{{', '.join(e.options.names())}}}  [{occ}]"
    )


def load_scenario(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read scenario {path}: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "counts" not in data:
        raise InputError("scenario must be a JSON object with 'n' and 'counts'")
    return data


def cmd_simulate(args) -> int:
    data = load_scenario(args.scenario)
    try:
        problem = Problem(data.get("problem", "gathering"))
        config = _config(int(data["n"]), tuple(data["counts"]), problem)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    try:
        policy = policy_from_json(data.get("adversary"))
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    if args.seed is not None:
        policy = Seeded(args.seed)
    if args.script is not None:
        policy = Scripted(_counts(args.script))
    max_epochs = args.max_epochs if args.max_epochs is not None else data.get("max_epochs")
    try:
        result = run(config, data.get("rr_assignment"), policy, max_epochs)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.format == "json":
        sys.stdout.write(result.jsonl())
    else:
        print(f"{config.label()}  ranks on {[v(x) for x in result.assignment]}  adversary {result.policy['kind']}")
        for e in result.trace:
            print(describe_event(e))
        print(describe_outcome(result.outcome))
    return outcome_exit(result.outcome)


def cmd_classify(args) -> int:
    problem = Problem(args.problem)
    config = _config(args.n, _counts(args.counts), problem)
    verdict = classify_theory(config, problem)
    if args.format == "json":
        print(json.dumps({"config": config.to_json(), "problem": problem.value, "verdict": verdict.to_json(), "text": str(verdict)}))
    else:
        print(verdict)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = Problem(args.problem)
    if args.n_min < 3 or args.n_max < args.n_min:
        raise InputError("need 3 <= n-min <= n-max")

    def ks(n: int) -> range:
        default_hi = n if problem is Problem.DISTINCT else n + 1
        hi = default_hi if args.k_max is None else min(args.k_max, default_hi)
        return range(args.k_min, hi + 1)

    try:
        report = sweep(range(args.n_min, args.n_max + 1), ks, problem, jobs=args.jobs, max_states=args.max_states)
    except BudgetExceeded as exc:
        print(f"state budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.dumps() if args.format == "json" else report.table())
    return EXIT_FAIL if report.violations else EXIT_OK


def cmd_repro_fig5(args) -> int:
    from .fig5 import PANELS, repro_fig5, write_fixture

    report = repro_fig5(use_fixture=not args.search)
    if args.write:
        write_fixture(report.golden, args.write)
    if args.format == "json":
        print(json.dumps({
            "ok": report.ok,
            "scenario": report.golden.to_json(),
            "panel_rounds": report.panel_rounds,
            "outcome": report.result.outcome.to_json(),
            "fixture_equal": report.fixture_equal,
        }))
    else:
        print(report.summary())
    if not report.ok:
        configs = report.result.configs()
        for label, counts, _ in PANELS:
            if counts not in configs:
                print(f"first divergent panel: ({label})", file=sys.stderr)
                break
        return EXIT_FAIL
    return EXIT_OK


def cmd_seq_demo(args) -> int:
    if args.n < 3:
        raise InputError("n must be at least 3")
    outcome, trace = seq_demo(args.n)
    fair = fair_within([e.rank for e in trace], 3, 6)
    if args.format == "json":
        for e in trace:
            print(json.dumps(e.to_json(), separators=(",", ":")))
        print(json.dumps({"outcome": outcome.to_json(), "fair_within_2k": fair}, separators=(",", ":")))
    else:
        for e in trace:
            print(describe_event(e))
        print(describe_outcome(outcome))
        print(f"every robot activated within each {2 * 3} rounds: {fair}")
    return EXIT_OK if isinstance(outcome, CycleDetected) and fair else EXIT_FAIL


def cmd_transitions(args) -> int:
    edges: set[tuple[int, int]] = set()
    for path in args.traces:
        try:
            header, events, _ = parse_jsonl(Path(path).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot read trace {path}: {exc}") from exc
        n = header["n"]
        for e in events:
            after = RingConfig(n, e.occupancy_after)
            edges.add((int(e.task), int(classify_task(after.pattern))))
    bad = sorted((a, b) for a, b in edges if b not in ALLOWED_TRANSITIONS[a])
    if bad:
        for a, b in bad:
            print(f"edge T{a} -> T{b} is not an allowed transition", file=sys.stderr)
        return EXIT_FAIL
    print("digraph transitions {")
    for a in range(1, 9):
        print(f"  T{a};")
    for a, b in sorted(edges):
        print(f"  T{a} -> T{b};")
    print("}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    problem = Problem(args.problem)
    try:
        configs = enumerate_initial(args.n, args.k, distinct=problem is Problem.DISTINCT)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    for c in configs:
        print(json.dumps(c.to_json()) if args.format == "json" else c.label())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gatherring", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default="text"):
        p.add_argument("--format", choices=("json", "text"), default=default)

    def problem(p):
        p.add_argument("--problem", choices=[x.value for x in Problem], default="gathering")

    p = sub.add_parser("simulate", help="run one scenario and print its trace")
    p.add_argument("scenario", help="scenario JSON file, or - for stdin")
    p.add_argument("--seed", type=int, help="resolve ties with a seeded random adversary")
    p.add_argument("--script", help="comma-separated option indices for ties")
    p.add_argument("--max-epochs", type=int)
    fmt(p, "json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="solvability verdict of a configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--counts", required=True)
    problem(p)
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="exhaustive sweep over ranges of n and k")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    problem(p)
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("repro-fig5", help="replay the six-ring running example against its panels")
    p.add_argument("--search", action="store_true", help="search for the schedule instead of loading the fixture")
    p.add_argument("--write", metavar="DIR", help="store the scenario and trace fixtures in DIR")
    fmt(p)
    p.set_defaults(func=cmd_repro_fig5)

    p = sub.add_parser("seq-demo", help="three robots defeated by an adaptive sequential scheduler")
    p.add_argument("n", type=int)
    fmt(p)
    p.set_defaults(func=cmd_seq_demo)

    p = sub.add_parser("transitions", help="DOT graph of task transitions observed in trace files")
    p.add_argument("traces", nargs="+")
    p.set_defaults(func=cmd_transitions)

    p = sub.add_parser("enumerate", help="list initial configurations up to rotation and reflection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    problem(p)
    fmt(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_epochs", None) is not None and args.max_epochs < 1:
        print("error: --max-epochs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
