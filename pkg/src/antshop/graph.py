"""Incremental construction state over the complete task graph.

Every unscheduled operation whose job predecessor is done is reachable from
any vertex, so the frontier is one candidate per unfinished job. Advancing
an operation places it at the earliest feasible start, max(job ready,
machine ready), and the placement arithmetic here is shared verbatim by the
schedule decoder so a finished path and its decoded schedule always agree.
"""

from __future__ import annotations

from .instances import Instance, OpId


class InfeasibleMoveError(ValueError):
    """Raised when an advance would break job order or reuse an operation."""


def attractiveness(delta: int) -> float:
    """Desirability of a move that grows the partial makespan by `delta`."""
    return 1.0 / (1.0 + delta)


class SearchState:
    """Mutable partial schedule built one operation at a time."""

    __slots__ = (
        "inst",
        "path",
        "next_step",
        "job_ready",
        "machine_ready",
        "op_start",
        "partial_makespan",
    )

    def __init__(self, inst: Instance):
        self.inst = inst
        self.path: list[OpId] = []
        self.next_step = [0] * inst.n_jobs
        self.job_ready = [0] * inst.n_jobs
        self.machine_ready = [0] * inst.n_machines
        self.op_start: list[int | None] = [None] * inst.n_ops
        self.partial_makespan = 0

    def clone(self) -> "SearchState":
        other = SearchState.__new__(SearchState)
        other.inst = self.inst
        other.path = list(self.path)
        other.next_step = list(self.next_step)
        other.job_ready = list(self.job_ready)
        other.machine_ready = list(self.machine_ready)
        other.op_start = list(self.op_start)
        other.partial_makespan = self.partial_makespan
        return other

    def is_complete(self) -> bool:
        return len(self.path) == self.inst.n_ops

    def candidates(self) -> list[OpId]:
        """Next unscheduled operation of every unfinished job."""
        out = []
        for job, step in enumerate(self.next_step):
            if step < len(self.inst.jobs[job]):
                out.append(OpId(job, step, self.inst.job_base[job] + step))
        return out

    def _placement(self, op: OpId) -> tuple[int, int]:
        """(start, end) the operation would get if advanced now."""
        machine, duration = self.inst.jobs[op.job][op.step]
        start = self.job_ready[op.job]
        ready = self.machine_ready[machine]
        if ready > start:
            start = ready
        return start, start + duration

    def delta_makespan(self, op: OpId) -> int:
        """Growth of the partial makespan if `op` were scheduled next."""
        self._check(op)
        _, end = self._placement(op)
        grown = end - self.partial_makespan
        return grown if grown > 0 else 0

    def heuristic_value(self, op: OpId) -> float:
        return attractiveness(self.delta_makespan(op))

    def advance(self, op: OpId) -> None:
        """Schedule `op` at its earliest feasible start."""
        self._check(op)
        machine = self.inst.jobs[op.job][op.step].machine
        start, end = self._placement(op)
        self.op_start[op.flat] = start
        self.job_ready[op.job] = end
        self.machine_ready[machine] = end
        self.next_step[op.job] = op.step + 1
        if end > self.partial_makespan:
            self.partial_makespan = end
        self.path.append(op)

    def _check(self, op: OpId) -> None:
        if not 0 <= op.job < self.inst.n_jobs:
            raise InfeasibleMoveError(f"job {op.job} outside instance")
        expected = self.next_step[op.job]
        if op.step != expected:
            if op.step < expected:
                raise InfeasibleMoveError(
                    f"operation (job {op.job}, step {op.step}) already scheduled"
                )
            raise InfeasibleMoveError(
                f"job {op.job} is at step {expected}, cannot jump to {op.step}"
            )
        if op.step >= len(self.inst.jobs[op.job]):
            raise InfeasibleMoveError(f"job {op.job} has no step {op.step}")
        expected_flat = self.inst.job_base[op.job] + op.step
        if op.flat != expected_flat:
            raise InfeasibleMoveError(
                f"flat index {op.flat} does not match (job {op.job}, "
                f"step {op.step})"
            )
