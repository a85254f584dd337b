"""Multi-execution benchmark harness.

An experiment is one instance plus one parameter set run `executions` times
with seeds base, base+1, ..., so a whole experiment reproduces from a single
seed. Executions are independent and run on a bounded process pool; the
aggregate statistics do not depend on completion order.

sup_std and inf_std are the upper and lower semideviations: the population
standard deviation computed over the samples at or above (respectively at or
below) the mean.
"""

from __future__ import annotations

import csv
import math
import os
import re
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from .colony import AcoParams, run_colony
from .instances import Instance, known_optimum, resolve_instance

WORKERS_ENV = "ANTSHOP_WORKERS"

CSV_COLUMNS = [
    "label",
    "instance",
    "optimum",
    "minimum",
    "maximum",
    "average",
    "std",
    "sup_std",
    "inf_std",
    "wall_time_seconds",
    "error",
]

_CSV_PREAMBLE = (
    "# sup_std/inf_std: population semideviation over the samples at or "
    "above/below the mean\n"
)

# Config keys follow the parameter-table column names.
_CONFIG_KEYS = {
    "ite",
    "ants",
    "elit",
    "alpha",
    "beta",
    "evap",
    "q",
    "init",
    "inc",
    "exec",
    "seed",
    "instance",
    "label",
}


@dataclass(frozen=True)
class ExperimentConfig:
    instance: str  # file path or bundled instance name
    params: AcoParams
    executions: int = 30
    label: str = ""

    def __post_init__(self):
        if self.executions < 1:
            raise ValueError("executions must be at least 1")


@dataclass(frozen=True)
class RunStats:
    minimum: int
    maximum: int
    average: float
    std: float
    sup_std: float
    inf_std: float
    per_execution: tuple[int, ...]


def _semideviation(values: Sequence[int], mean: float, upper: bool) -> float:
    side = [v for v in values if (v >= mean if upper else v <= mean)]
    return math.sqrt(statistics.fmean((v - mean) ** 2 for v in side))


def compute_stats(values: Sequence[int]) -> RunStats:
    """Aggregate per-execution best makespans; population-form deviations."""
    if not values:
        raise ValueError("cannot compute statistics of an empty sample")
    vals = list(values)
    mean = statistics.fmean(vals)
    return RunStats(
        minimum=min(vals),
        maximum=max(vals),
        average=mean,
        std=statistics.pstdev(vals),
        sup_std=_semideviation(vals, mean, upper=True),
        inf_std=_semideviation(vals, mean, upper=False),
        per_execution=tuple(vals),
    )


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}")
        if value < 1:
            raise ValueError(f"{WORKERS_ENV} must be at least 1, got {value}")
        return value
    return os.cpu_count() or 1


def _execute(inst: Instance, params: AcoParams) -> tuple[int, tuple[int, ...]]:
    result = run_colony(inst, params)
    return result.best_path.makespan, result.best_makespan_per_iteration


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text) or "run"


def run_experiment(
    config: ExperimentConfig,
    workers: int | None = None,
    trace_dir: str | Path | None = None,
) -> RunStats:
    """Run every execution of one experiment and aggregate the results.

    Execution i uses seed params.seed + i. With trace_dir set, each
    execution's best-makespan-per-iteration curve lands in one CSV there.
    """
    inst = resolve_instance(config.instance)
    if workers is None:
        workers = default_workers()
    tasks = [
        replace(config.params, seed=config.params.seed + i)
        for i in range(config.executions)
    ]
    if workers <= 1 or config.executions == 1:
        outcomes = [_execute(inst, p) for p in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_execute, [inst] * len(tasks), tasks))
    if trace_dir is not None:
        trace_dir = Path(trace_dir)
        trace_dir.mkdir(parents=True, exist_ok=True)
        stem = _slug(config.label or inst.name or "run")
        for i, (_, trace) in enumerate(outcomes):
            out = trace_dir / f"{stem}_exec{i:02d}.csv"
            with out.open("w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["iteration", "best_makespan"])
                writer.writerows(enumerate(trace))
    return compute_stats([makespan for makespan, _ in outcomes])


def load_config(path: str | Path) -> ExperimentConfig:
    """Read one experiment from a flat key=value file.

    Keys: instance (required), label, seed, exec, and the parameter-table
    columns ite, ants, elit, alpha, beta, evap, q, init, inc. '#' lines are
    comments. Relative instance paths resolve against the config's folder.
    """
    path = Path(path)
    raw: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(
                f"{path}:{lineno}: unknown key {key!r} "
                f"(known: {', '.join(sorted(_CONFIG_KEYS))})"
            )
        if key in raw:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    if "instance" not in raw:
        raise ValueError(f"{path}: missing required key 'instance'")

    def number(key: str, cast, default):
        if key not in raw:
            return default
        try:
            return cast(raw[key])
        except ValueError:
            raise ValueError(
                f"{path}: key {key!r} has non-numeric value {raw[key]!r}"
            ) from None

    base = AcoParams()
    try:
        params = AcoParams(
            iterations=number("ite", int, base.iterations),
            n_ants=number("ants", int, base.n_ants),
            elitism=bool(number("elit", int, int(base.elitism))),
            alpha=number("alpha", float, base.alpha),
            beta=number("beta", float, base.beta),
            evaporation=number("evap", float, base.evaporation),
            q=number("q", float, base.q),
            init_mode=number("init", int, int(base.init_mode)),
            inc_mode=number("inc", int, int(base.inc_mode)),
            seed=number("seed", int, base.seed),
        )
        executions = number("exec", int, 30)
        instance = raw["instance"]
        candidate = path.parent / instance
        if candidate.is_file():
            instance = str(candidate)
        return ExperimentConfig(
            instance=instance,
            params=params,
            executions=executions,
            label=raw.get("label", path.stem),
        )
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def _format_cell(value: float) -> str:
    return format(value, ".6g")


def sweep(
    configs: Sequence[ExperimentConfig],
    out_path: str | Path,
    workers: int | None = None,
    trace_dir: str | Path | None = None,
) -> list[dict[str, str]]:
    """Run each config in order and write one CSV row per config.

    A failing config contributes a row with the error message in the final
    column; the remaining configs still run. Returns the written rows.
    """
    rows: list[dict[str, str]] = []
    for config in configs:
        row = dict.fromkeys(CSV_COLUMNS, "")
        row["label"] = config.label
        row["instance"] = config.instance
        started = time.perf_counter()
        try:
            inst = resolve_instance(config.instance)
            row["instance"] = inst.name or config.instance
            optimum = known_optimum(inst.name)
            if optimum is not None:
                row["optimum"] = str(optimum)
            stats = run_experiment(config, workers=workers, trace_dir=trace_dir)
        except Exception as exc:
            row["error"] = str(exc)
        else:
            row["minimum"] = str(stats.minimum)
            row["maximum"] = str(stats.maximum)
            row["average"] = _format_cell(stats.average)
            row["std"] = _format_cell(stats.std)
            row["sup_std"] = _format_cell(stats.sup_std)
            row["inf_std"] = _format_cell(stats.inf_std)
        row["wall_time_seconds"] = format(time.perf_counter() - started, ".3f")
        rows.append(row)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", newline="") as fh:
        fh.write(_CSV_PREAMBLE)
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return rows
