"""Command-line front end.

Subcommands: clock (pointwise algebra on canonical clock texts), run
(scenario execution), check (graph-vs-clock equivalence), peano-bench
(unary numeral cost table). Exit status: 0 success, 1 assertion or
equivalence failure, 2 usage or parse error. Clocks cross this boundary
only as canonical text; booleans print as lowercase true/false.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import codec, oracle
from .core import FixedClock, PruneBounds, VClock, compare, descends, increment, merge, prune
from .simulator import ScenarioError, load_scenario, run_scenario

# an early-2014 UNIX timestamp: the standing example of a value whose unary
# encoding is hopeless at full scale
BENCH_TIMESTAMP = 1_390_525_760

_BENCH_GRID = [10**k for k in range(2, 8)]


class _UsageError(Exception):
    pass


def _decode_arg(name: str, text: str) -> VClock:
    try:
        return codec.decode(text)
    except codec.DecodeError as exc:
        raise _UsageError(f"argument {name}: {exc}") from exc


def _cmd_clock(args: argparse.Namespace) -> int:
    op = args.clock_op
    try:
        if op == "compare":
            left = _decode_arg("left", args.left)
            right = _decode_arg("right", args.right)
            print(compare(left, right).value)
        elif op == "merge":
            left = _decode_arg("left", args.left)
            right = _decode_arg("right", args.right)
            print(codec.encode(merge(left, right)))
        elif op == "descends":
            left = _decode_arg("left", args.left)
            right = _decode_arg("right", args.right)
            print("true" if descends(left, right) else "false")
        elif op == "increment":
            v = _decode_arg("clock", args.clock)
            try:
                result = increment(args.actor, v, FixedClock(args.at))
            except ValueError as exc:
                raise _UsageError(f"argument actor/--at: {exc}") from exc
            print(codec.encode(result))
        elif op == "prune":
            v = _decode_arg("clock", args.clock)
            try:
                bounds = PruneBounds(args.small, args.large, args.young, args.old)
            except ValueError as exc:
                raise _UsageError(f"argument --small/--large/--young/--old: {exc}") from exc
            if args.now < 0:
                raise _UsageError("argument --now: must be >= 0")
            print(codec.encode(prune(v, args.now, bounds)))
        else:  # pragma: no cover - argparse restricts choices
            raise AssertionError(op)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return 2
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(scenario, collapse=not args.no_collapse)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(report.text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(report.text)
    return 0 if report.ok else 1


def _cmd_check(args: argparse.Namespace) -> int:
    rendered: list[str] = []
    checked = 0
    try:
        if args.exhaustive is not None:
            max_events, max_actors = args.exhaustive
            for history in oracle.enumerate_histories(max_events, max_actors):
                violations = oracle.check_equivalence(history)
                if violations:
                    print(f"# history #{checked} over {history.actors}", file=sys.stderr)
                    rendered.extend(v.render() for v in violations)
                checked += 1
        else:
            seeds, events, actors = args.random
            if seeds < 1:
                print("error: need at least one seed", file=sys.stderr)
                return 2
            for seed in range(seeds):
                history = oracle.random_history(seed, events, actors)
                violations = oracle.check_equivalence(history)
                if violations:
                    print(f"# seed {seed}", file=sys.stderr)
                    rendered.extend(v.render() for v in violations)
                checked += 1
    except oracle.EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in sorted(rendered):
        print(line)
    print(f"checked {checked} histories: {len(rendered)} violation line(s)", file=sys.stderr)
    return 0 if not rendered else 1


def _best_micros(fn, repeats: int = 3) -> float:
    best = None
    for _ in range(repeats):
        start = time.perf_counter_ns()
        fn()
        elapsed = time.perf_counter_ns() - start
        if best is None or elapsed < best:
            best = elapsed
    return best / 1000.0


def _cmd_peano_bench(args: argparse.Namespace) -> int:
    max_n = args.max_n
    if max_n < 0 or max_n > codec.MATERIALIZATION_LIMIT:
        print(
            f"error: max_n must be between 0 and {codec.MATERIALIZATION_LIMIT}",
            file=sys.stderr,
        )
        return 2
    print("n,nodes,encode_micros,decode_micros")
    for n in _BENCH_GRID:
        if n > max_n:
            break
        numeral = codec.natural_to_peano(n)
        enc = _best_micros(lambda: codec.natural_to_peano(n))
        dec = _best_micros(lambda: codec.peano_to_natural(numeral))
        print(f"{n},{codec.peano_cost(n)},{enc:.1f},{dec:.1f}")
        del numeral
    nodes = codec.peano_cost(BENCH_TIMESTAMP)
    per_node = sys.getsizeof(codec.Successor(codec.ZERO))
    floor_gib = nodes / 2**30
    est_gib = nodes * per_node / 2**30
    print(
        f"extrapolation: encoding {BENCH_TIMESTAMP} requires {nodes} nodes; "
        f">= {floor_gib:.1f} GiB at 1 byte/node; "
        f"~{est_gib:.1f} GiB at the measured {per_node} bytes/node"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vclock",
        description="Vector clock algebra, scenario runner, causality checker, numeral benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    clock = sub.add_parser("clock", help="operations on canonical clock texts")
    clock_sub = clock.add_subparsers(dest="clock_op", required=True)
    p = clock_sub.add_parser("compare", help="four-way comparison")
    p.add_argument("left")
    p.add_argument("right")
    p = clock_sub.add_parser("merge", help="per-actor maximum")
    p.add_argument("left")
    p.add_argument("right")
    p = clock_sub.add_parser("descends", help="left covers right?")
    p.add_argument("left")
    p.add_argument("right")
    p = clock_sub.add_parser("increment", help="advance one actor")
    p.add_argument("actor")
    p.add_argument("clock")
    p.add_argument("--at", type=int, required=True, help="timestamp for the new entry")
    p = clock_sub.add_parser("prune", help="apply the size/age pruning rule")
    p.add_argument("clock")
    p.add_argument("--now", type=int, required=True)
    p.add_argument("--small", type=int, required=True)
    p.add_argument("--large", type=int, required=True)
    p.add_argument("--young", type=int, required=True)
    p.add_argument("--old", type=int, required=True)
    clock.set_defaults(func=_cmd_clock)

    run = sub.add_parser("run", help="execute a scenario script")
    run.add_argument("scenario", help="path to the scenario file")
    run.add_argument("--no-collapse", action="store_true", help="keep superseded siblings on update")
    run.add_argument("--report", help="write the run report to this path instead of stdout")
    run.set_defaults(func=_cmd_run)

    check = sub.add_parser("check", help="verify clock order against graph causality")
    mode = check.add_mutually_exclusive_group(required=True)
    mode.add_argument(
        "--exhaustive",
        nargs=2,
        type=int,
        metavar=("EVENTS", "ACTORS"),
        help="enumerate every history within the bounds",
    )
    mode.add_argument(
        "--random",
        nargs=3,
        type=int,
        metavar=("SEEDS", "EVENTS", "ACTORS"),
        help="check seeded random histories for seeds 0..SEEDS-1",
    )
    check.set_defaults(func=_cmd_check)

    bench = sub.add_parser("peano-bench", help="unary numeral encode/decode cost table")
    bench.add_argument("max_n", type=int, help="largest grid point to materialize")
    bench.set_defaults(func=_cmd_peano_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
