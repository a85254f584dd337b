"""Command-line front end: solve, validate, oracle, and bench subcommands."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .colony import AcoParams, InitMode, run_colony
from .harness import load_config, sweep
from .instances import known_optimum, resolve_instance
from .oracle import DEFAULT_CAP, SequenceCapExceeded, exhaustive_optimum
from .schedule import decode, render_gantt, schedule_from_json, schedule_to_json, validate


class CliError(Exception):
    """User-facing error; the CLI reports it and exits with status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    # Flag defaults are the baseline parameter row.
    base = AcoParams()
    parser.add_argument("--iterations", type=int, default=base.iterations)
    parser.add_argument("--ants", type=int, default=base.n_ants)
    parser.add_argument("--elitism", action="store_true")
    parser.add_argument("--alpha", type=float, default=base.alpha)
    parser.add_argument("--beta", type=float, default=base.beta)
    parser.add_argument("--evap", type=float, default=base.evaporation)
    parser.add_argument("--q", type=float, default=base.q)
    parser.add_argument(
        "--init", type=int, choices=[0, 1, 2], default=int(base.init_mode),
        help="start placement: 0 random, 1 random then fixed, 2 one ant per job",
    )
    parser.add_argument(
        "--inc", type=int, choices=[0, 1], default=int(base.inc_mode),
        help="deposit: 0 uniform, 1 positional",
    )
    parser.add_argument("--seed", type=int, default=base.seed)
    parser.add_argument("--pheromone-init", type=float, default=base.pheromone_init)
    parser.add_argument("--pheromone-floor", type=float, default=base.pheromone_floor)


def _params_from_args(args: argparse.Namespace) -> AcoParams:
    return AcoParams(
        iterations=args.iterations,
        n_ants=args.ants,
        elitism=args.elitism,
        alpha=args.alpha,
        beta=args.beta,
        evaporation=args.evap,
        q=args.q,
        init_mode=args.init,
        inc_mode=args.inc,
        seed=args.seed,
        pheromone_init=args.pheromone_init,
        pheromone_floor=args.pheromone_floor,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = resolve_instance(args.instance)
    params = _params_from_args(args)
    result = run_colony(inst, params)
    ants = (
        sum(1 for ops in inst.jobs if ops)
        if params.init_mode is InitMode.ONE_PER_JOB
        else params.n_ants
    )
    print(
        f"instance: {inst.name or args.instance} "
        f"({inst.n_jobs} jobs, {inst.n_machines} machines, {inst.n_ops} operations)"
    )
    print(
        f"iterations: {params.iterations}  ants: {ants}  "
        f"elitism: {'on' if params.elitism else 'off'}  seed: {params.seed}"
    )
    best = result.best_path.makespan
    print(f"best makespan: {best}")
    optimum = known_optimum(inst.name)
    if optimum is None:
        print("optimum: unknown")
    else:
        print(f"optimum: {optimum}")
        if optimum > 0:
            print(f"gap: {100.0 * (best - optimum) / optimum:.2f}%")
    schedule = decode(inst, result.best_path.sequence)
    if args.gantt:
        print(render_gantt(schedule))
    if args.json:
        Path(args.json).write_text(schedule_to_json(schedule))
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "best_makespan"])
            writer.writerows(enumerate(result.best_makespan_per_iteration))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    inst = resolve_instance(args.instance)
    try:
        text = Path(args.schedule).read_text()
    except OSError as exc:
        raise CliError(f"cannot read schedule: {exc}") from None
    schedule = schedule_from_json(inst, text)
    violation = validate(schedule)
    if violation is None:
        print(f"valid, makespan={schedule.makespan}")
        return 0
    print(f"invalid: {violation}")
    return 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    inst = resolve_instance(args.instance)
    result = exhaustive_optimum(inst, cap=args.cap, prune=not args.no_prune)
    print(f"optimum: {result.optimum}")
    print(f"sequences: {result.n_sequences}")
    witness = " ".join(f"J{op.job}.{op.step}" for op in result.optimal_sequence)
    print(f"witness: {witness}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    configs = [load_config(path) for path in args.configs]
    rows = sweep(
        configs, args.out, workers=args.workers, trace_dir=args.trace_dir
    )
    header = f"{'label':<16} {'instance':<10} {'min':>6} {'avg':>9} {'max':>6} {'std':>8}  note"
    print(header)
    for row in rows:
        note = row["error"] or f"{row['wall_time_seconds']}s"
        print(
            f"{row['label']:<16} {row['instance']:<10} "
            f"{row['minimum']:>6} {row['average']:>9} {row['maximum']:>6} "
            f"{row['std']:>8}  {note}"
        )
    print(f"wrote {args.out}")
    if all(row["error"] for row in rows):
        raise CliError("every configuration failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="antshop",
        description="Ant-colony search for job-shop schedules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the colony on one instance")
    solve.add_argument("instance", help="instance file or bundled name")
    _add_param_flags(solve)
    solve.add_argument("--gantt", action="store_true", help="print the schedule")
    solve.add_argument("--json", metavar="PATH", help="write the schedule as JSON")
    solve.add_argument(
        "--trace", metavar="PATH", help="write best makespan per iteration as CSV"
    )
    solve.set_defaults(func=_cmd_solve)

    val = sub.add_parser("validate", help="check a schedule JSON against an instance")
    val.add_argument("instance", help="instance file or bundled name")
    val.add_argument("schedule", help="schedule JSON produced by solve --json")
    val.set_defaults(func=_cmd_validate)

    orc = sub.add_parser("oracle", help="exhaustive optimum of a tiny instance")
    orc.add_argument("instance", help="instance file or bundled name")
    orc.add_argument(
        "--cap", type=int, default=DEFAULT_CAP,
        help="refuse instances with more interleavings than this",
    )
    orc.add_argument(
        "--no-prune", action="store_true",
        help="visit every interleaving instead of bounding",
    )
    orc.set_defaults(func=_cmd_oracle)

    bench = sub.add_parser("bench", help="run experiment configs and write a CSV")
    bench.add_argument("configs", nargs="+", metavar="CONFIG")
    bench.add_argument("--out", required=True, metavar="PATH")
    bench.add_argument(
        "--workers", type=int, default=None,
        help="execution pool size (default: ANTSHOP_WORKERS env or CPU count)",
    )
    bench.add_argument("--trace-dir", metavar="DIR", default=None)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, ValueError, SequenceCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # anything else is a bug in this package
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
