"""Elitist ant-colony search over the complete task graph.

Each ant builds a full schedule one operation at a time. From the current
vertex it weighs every frontier operation by pheromone**alpha times
attractiveness**beta, where attractiveness is 1/(1 + delta makespan), and
samples the next vertex by roulette wheel. Ants within an iteration all read
the same frozen pheromone snapshot; evaporation and deposits happen once per
iteration after every ant has finished. With elitism on, the global best
path deposits again every iteration on top of the regular ant deposits.

Two deposit policies exist: `uniform` adds q/L to every arc of a path of
makespan L, and `positional` adds (q/L)**(len(path)-1-i) to the i-th arc, so
later arcs of the path receive exponentially stronger reinforcement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .instances import Instance, OpId


class InitMode(IntEnum):
    """Where each ant starts its path."""

    RANDOM = 0  # fresh uniform pick over job heads every iteration
    RANDOM_THEN_FIXED = 1  # uniform pick at iteration 0, reused afterwards
    ONE_PER_JOB = 2  # ant k starts at job k's head; ant count becomes n_jobs


class IncMode(IntEnum):
    """How a finished path deposits pheromone."""

    UNIFORM = 0
    POSITIONAL = 1


@dataclass(frozen=True)
class AcoParams:
    iterations: int = 1000
    n_ants: int = 100
    elitism: bool = False
    alpha: float = 1.0
    beta: float = 1.0
    evaporation: float = 0.1
    q: float = 1.0
    init_mode: InitMode = InitMode.RANDOM
    inc_mode: IncMode = IncMode.UNIFORM
    seed: int = 1
    pheromone_init: float = 1.0
    pheromone_floor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "init_mode", InitMode(self.init_mode))
        object.__setattr__(self, "inc_mode", IncMode(self.inc_mode))
        object.__setattr__(self, "elitism", bool(self.elitism))
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.n_ants < 1:
            raise ValueError("n_ants must be at least 1")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if not 0.0 <= self.evaporation <= 1.0:
            raise ValueError("evaporation must lie in [0, 1]")
        if self.q <= 0:
            raise ValueError("q must be positive")
        if self.pheromone_floor <= 0:
            raise ValueError("pheromone floor must be positive")
        if self.pheromone_init < self.pheromone_floor:
            raise ValueError("initial pheromone must not sit below the floor")


@dataclass(frozen=True)
class AntPath:
    sequence: tuple[OpId, ...]
    makespan: int


@dataclass(frozen=True)
class ColonyResult:
    best_path: AntPath
    best_makespan_per_iteration: tuple[int, ...]


class PheromoneMatrix:
    """Dense arc pheromone with a hard lower bound.

    Entry [i, j] is the pheromone on the arc from operation i to operation j
    (flat indices). Evaporation never takes a value below `floor`.
    """

    def __init__(self, n_ops: int, init: float = 1.0, floor: float = 1.0):
        if floor <= 0:
            raise ValueError("floor must be positive")
        if init < floor:
            raise ValueError("init must not sit below the floor")
        self.floor = floor
        self.tau = np.full((n_ops, n_ops), float(init))

    def evaporate(self, rate: float) -> None:
        """tau <- (1 - rate) * tau, clamped at the floor."""
        if not 0.0 <= rate <= 1.0:
            raise ValueError("rate must lie in [0, 1]")
        self.tau *= 1.0 - rate
        np.maximum(self.tau, self.floor, out=self.tau)

    def deposit_uniform(self, paths: Iterable[AntPath], q: float) -> None:
        """Every arc of each path gains q / makespan."""
        for path in paths:
            flats = self._arc_flats(path)
            if flats is None:
                continue
            np.add.at(self.tau, (flats[:-1], flats[1:]), q / path.makespan)

    def deposit_positional(self, paths: Iterable[AntPath], q: float) -> None:
        """Arc i of each path gains (q / makespan) ** (len(path) - 1 - i).

        The final arc's exponent is exactly 1; earlier arcs take higher
        powers, which for q/makespan < 1 vanish toward the path's start.
        """
        for path in paths:
            flats = self._arc_flats(path)
            if flats is None:
                continue
            base = q / path.makespan
            exponents = np.arange(len(flats) - 1, 0, -1, dtype=np.float64)
            np.add.at(
                self.tau, (flats[:-1], flats[1:]), base**exponents
            )

    def _arc_flats(self, path: AntPath) -> np.ndarray | None:
        if len(path.sequence) < 2:
            return None
        if path.makespan <= 0:
            raise ValueError(
                "cannot deposit for a path with non-positive makespan"
            )
        return np.fromiter(
            (op.flat for op in path.sequence),
            dtype=np.intp,
            count=len(path.sequence),
        )


def transition_probabilities(
    tau_row: Sequence[float], etas: Sequence[float], alpha: float, beta: float
) -> np.ndarray:
    """Normalized move distribution over the current candidates.

    Weight of candidate j is tau_row[j]**alpha * etas[j]**beta; the result
    divides by the total weight, which must be positive and finite.
    """
    tau_arr = np.asarray(tau_row, dtype=np.float64)
    eta_arr = np.asarray(etas, dtype=np.float64)
    if tau_arr.shape != eta_arr.shape or tau_arr.ndim != 1:
        raise ValueError("tau_row and etas must be 1-d and the same length")
    if tau_arr.size == 0:
        raise ValueError("no candidates to choose from")
    weights = tau_arr**alpha * eta_arr**beta
    total = float(weights.sum())
    if not 0.0 < total < np.inf:
        raise ValueError(f"degenerate weight total {total}")
    return weights / total


def select_next(probabilities: Sequence[float], rng) -> int:
    """Roulette-wheel draw: index i wins when the uniform draw lands in
    [cum[i-1], cum[i]). The final bucket absorbs any rounding residue."""
    p = np.asarray(probabilities, dtype=np.float64)
    if p.size == 0:
        raise ValueError("no candidates to choose from")
    cumulative = np.cumsum(p)
    draw = rng.random()
    idx = int(np.searchsorted(cumulative, draw, side="right"))
    return min(idx, p.size - 1)


def _construct_path(
    job_base: list[int],
    job_len: list[int],
    op_machine: list[int],
    op_duration: list[int],
    n_jobs: int,
    n_machines: int,
    tau_rows: list[list[float]],
    alpha: float,
    beta: float,
    start_job: int,
    rand,
) -> tuple[list[int], int]:
    """One ant's full walk; returns (flat sequence, makespan).

    Hot loop: candidate scoring is inlined and common alpha/beta exponents
    take multiply shortcuts instead of float pow.
    """
    next_step = [0] * n_jobs
    job_ready = [0] * n_jobs
    machine_ready = [0] * n_machines
    unfinished = [j for j in range(n_jobs) if job_len[j] > 0]

    start_flat = job_base[start_job]
    machine = op_machine[start_flat]
    end = op_duration[start_flat]
    job_ready[start_job] = end
    machine_ready[machine] = end
    next_step[start_job] = 1
    pm = end
    seq = [start_flat]
    if job_len[start_job] == 1:
        unfinished.remove(start_job)
    cur = start_flat

    while unfinished:
        row = tau_rows[cur]
        total = 0.0
        weights = []
        add_weight = weights.append
        for j in unfinished:
            flat = job_base[j] + next_step[j]
            m = op_machine[flat]
            s = job_ready[j]
            mr = machine_ready[m]
            if mr > s:
                s = mr
            delta = s + op_duration[flat] - pm
            eta = 1.0 if delta <= 0 else 1.0 / (1.0 + delta)
            if beta == 1.0:
                w = eta
            elif beta == 2.0:
                w = eta * eta
            elif beta == 0.0:
                w = 1.0
            else:
                w = eta**beta
            t = row[flat]
            if alpha == 1.0:
                w *= t
            elif alpha == 2.0:
                w *= t * t
            elif alpha != 0.0:
                w *= t**alpha
            total += w
            add_weight(w)
        k = len(weights)
        if total < np.inf:
            if total > 0.0:
                draw = rand() * total
                idx = k - 1
                acc = 0.0
                for i, w in enumerate(weights):
                    acc += w
                    if draw < acc:
                        idx = i
                        break
            else:
                # All weights underflowed to zero; fall back to uniform.
                idx = min(int(rand() * k), k - 1)
        else:
            # Overflow; the infinite weight dominates every finite one.
            idx = max(range(k), key=weights.__getitem__)
        j = unfinished[idx]
        flat = job_base[j] + next_step[j]
        m = op_machine[flat]
        s = job_ready[j]
        mr = machine_ready[m]
        if mr > s:
            s = mr
        end = s + op_duration[flat]
        job_ready[j] = end
        machine_ready[m] = end
        step = next_step[j] + 1
        next_step[j] = step
        if end > pm:
            pm = end
        seq.append(flat)
        cur = flat
        if step == job_len[j]:
            unfinished[idx] = unfinished[-1]
            unfinished.pop()
    return seq, pm


def run_colony(inst: Instance, params: AcoParams) -> ColonyResult:
    """Run one colony to completion; fully determined by params.seed.

    Each (iteration, ant) pair draws from its own named random stream, so
    results do not depend on scheduling order and repeat exactly for a seed.
    """
    if inst.n_ops == 0:
        empty = AntPath((), 0)
        return ColonyResult(empty, (0,) * params.iterations)

    ids = tuple(inst.op_ids())
    job_base = list(inst.job_base)
    job_len = [len(ops) for ops in inst.jobs]
    op_machine = [op.machine for ops in inst.jobs for op in ops]
    op_duration = [op.duration for ops in inst.jobs for op in ops]
    heads = [j for j in range(inst.n_jobs) if job_len[j] > 0]

    if params.init_mode is InitMode.ONE_PER_JOB:
        n_ants = len(heads)
    else:
        n_ants = params.n_ants

    matrix = PheromoneMatrix(
        inst.n_ops, params.pheromone_init, params.pheromone_floor
    )
    alpha, beta, q = params.alpha, params.beta, params.q
    fixed_starts: list[int | None] = [None] * n_ants
    best_path: AntPath | None = None
    best_makespan = None
    trace: list[int] = []

    for iteration in range(params.iterations):
        tau_rows = matrix.tau.tolist()
        paths: list[AntPath] = []
        for ant in range(n_ants):
            rng = random.Random(f"{params.seed}:{iteration}:{ant}")
            if params.init_mode is InitMode.ONE_PER_JOB:
                start_job = heads[ant]
            elif (
                params.init_mode is InitMode.RANDOM_THEN_FIXED
                and iteration > 0
            ):
                start_job = fixed_starts[ant]
            else:
                start_job = heads[rng.randrange(len(heads))]
                if params.init_mode is InitMode.RANDOM_THEN_FIXED:
                    fixed_starts[ant] = start_job
            flats, makespan = _construct_path(
                job_base,
                job_len,
                op_machine,
                op_duration,
                inst.n_jobs,
                inst.n_machines,
                tau_rows,
                alpha,
                beta,
                start_job,
                rng.random,
            )
            path = AntPath(tuple(ids[f] for f in flats), makespan)
            paths.append(path)
            if best_makespan is None or makespan < best_makespan:
                best_makespan = makespan
                best_path = path
        matrix.evaporate(params.evaporation)
        deposit = (
            matrix.deposit_positional
            if params.inc_mode is IncMode.POSITIONAL
            else matrix.deposit_uniform
        )
        deposit(paths, q)
        if params.elitism:
            deposit([best_path], q)
        trace.append(best_makespan)

    return ColonyResult(best_path, tuple(trace))
