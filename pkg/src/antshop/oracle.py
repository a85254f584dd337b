"""Brute-force reference optimizer.

Walks every feasible interleaving of an instance's operations by depth-first
search and returns the true minimum makespan. Intended for tiny instances
only; a multinomial count guard refuses anything with more interleavings
than `cap` before the walk starts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .instances import Instance, OpId

DEFAULT_CAP = 10_000_000


class SequenceCapExceeded(RuntimeError):
    """The instance has more interleavings than the configured cap."""


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    n_sequences: int  # complete leaves visited; see exhaustive_optimum
    optimal_sequence: tuple[OpId, ...]


def sequence_count(inst: Instance) -> int:
    """Number of feasible interleavings: multinomial over job lengths."""
    count = math.factorial(inst.n_ops)
    for ops in inst.jobs:
        count //= math.factorial(len(ops))
    return count


def exhaustive_optimum(
    inst: Instance, cap: int = DEFAULT_CAP, prune: bool = True
) -> OracleResult:
    """True optimum by enumerating interleavings.

    With prune=True, branches that cannot beat the incumbent are skipped and
    n_sequences counts only the leaves actually reached. With prune=False,
    n_sequences equals sequence_count(inst) exactly.
    """
    expected = sequence_count(inst)
    if expected > cap:
        raise SequenceCapExceeded(
            f"{inst.name or 'instance'} has {expected} interleavings, "
            f"cap is {cap}"
        )
    total = inst.n_ops
    if total == 0:
        return OracleResult(0, 1, ())
    n_jobs = inst.n_jobs
    job_base = inst.job_base
    job_len = [len(ops) for ops in inst.jobs]
    op_machine = [op.machine for ops in inst.jobs for op in ops]
    op_duration = [op.duration for ops in inst.jobs for op in ops]
    next_step = [0] * n_jobs
    job_ready = [0] * n_jobs
    machine_ready = [0] * inst.n_machines
    seq: list[int] = []
    best = math.inf
    best_seq: tuple[int, ...] = ()
    leaves = 0

    def walk(pm: int) -> None:
        nonlocal best, best_seq, leaves
        if len(seq) == total:
            leaves += 1
            if pm < best:
                best = pm
                best_seq = tuple(seq)
            return
        for job in range(n_jobs):
            step = next_step[job]
            if step >= job_len[job]:
                continue
            flat = job_base[job] + step
            machine = op_machine[flat]
            start = max(job_ready[job], machine_ready[machine])
            end = start + op_duration[flat]
            new_pm = end if end > pm else pm
            if prune and new_pm >= best:
                continue
            saved_job, saved_machine = job_ready[job], machine_ready[machine]
            next_step[job] = step + 1
            job_ready[job] = end
            machine_ready[machine] = end
            seq.append(flat)
            walk(new_pm)
            seq.pop()
            next_step[job] = step
            job_ready[job] = saved_job
            machine_ready[machine] = saved_machine

    walk(0)
    ids = tuple(inst.op_ids())
    return OracleResult(int(best), leaves, tuple(ids[f] for f in best_seq))
