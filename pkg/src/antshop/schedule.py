"""Schedules: decoding operation sequences, validation, and rendering.

decode() replays a full interleaving through the same placement arithmetic
as graph.SearchState.advance, so the makespan a construction run reports is
exactly the makespan of its decoded schedule. validate() rechecks a finished
schedule from nothing but start times, which makes it an independent judge
of anything the search produces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .graph import SearchState
from .instances import Instance, OpId


class DecodeError(ValueError):
    """Bad operation sequence. `position` is the offending 0-based index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class Schedule:
    inst: Instance
    start: tuple[int | None, ...]  # by flat operation index
    makespan: int

    def start_of(self, op: OpId) -> int | None:
        return self.start[op.flat]


@dataclass(frozen=True)
class Violation:
    kind: str  # "coverage" | "precedence" | "machine_overlap" | "makespan"
    message: str
    ops: tuple[OpId, ...]

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def decode(inst: Instance, sequence: Sequence[OpId]) -> Schedule:
    """Place every operation of `sequence` in order at its earliest start.

    The sequence must cover each operation exactly once and respect job
    order; otherwise DecodeError pinpoints the first bad position.
    """
    state = SearchState(inst)
    for pos, op in enumerate(sequence):
        try:
            state.advance(op)
        except ValueError as exc:
            raise DecodeError(str(exc), pos) from None
    if not state.is_complete():
        raise DecodeError(
            f"sequence covers {len(state.path)} of {inst.n_ops} operations",
            len(sequence),
        )
    return Schedule(inst, tuple(state.op_start), state.partial_makespan)


def validate(schedule: Schedule) -> Violation | None:
    """Recheck a schedule from scratch; None means every constraint holds."""
    inst = schedule.inst
    if len(schedule.start) != inst.n_ops:
        return Violation(
            "coverage",
            f"schedule holds {len(schedule.start)} start times, "
            f"instance has {inst.n_ops} operations",
            (),
        )
    for op in inst.op_ids():
        start = schedule.start[op.flat]
        if start is None:
            return Violation(
                "coverage",
                f"operation (job {op.job}, step {op.step}) has no start time",
                (op,),
            )
        if start < 0:
            return Violation(
                "coverage",
                f"operation (job {op.job}, step {op.step}) starts at {start}",
                (op,),
            )
    by_machine: dict[int, list[tuple[int, int, OpId]]] = {}
    completion = 0
    for op in inst.op_ids():
        machine, duration = inst.jobs[op.job][op.step]
        start = schedule.start[op.flat]
        end = start + duration
        completion = max(completion, end)
        by_machine.setdefault(machine, []).append((start, end, op))
        if op.step > 0:
            prev = inst.op_id(op.job, op.step - 1)
            prev_end = schedule.start[prev.flat] + inst.jobs[op.job][op.step - 1].duration
            if start < prev_end:
                return Violation(
                    "precedence",
                    f"job {op.job}: step {op.step} starts at {start} before "
                    f"step {op.step - 1} finishes at {prev_end}",
                    (prev, op),
                )
    for machine, intervals in sorted(by_machine.items()):
        intervals.sort(key=lambda item: (item[0], item[1]))
        for (s0, e0, a), (s1, _, b) in zip(intervals, intervals[1:]):
            # Zero-duration ops may share an instant; real overlap needs s1 < e0.
            if s1 < e0:
                return Violation(
                    "machine_overlap",
                    f"machine {machine}: (job {a.job}, step {a.step}) "
                    f"[{s0},{e0}) overlaps (job {b.job}, step {b.step}) "
                    f"starting at {s1}",
                    (a, b),
                )
    if schedule.makespan != completion:
        return Violation(
            "makespan",
            f"recorded makespan {schedule.makespan}, completions end at "
            f"{completion}",
            (),
        )
    return None


def render_gantt(schedule: Schedule) -> str:
    """One line per machine: 'M0: J0.0[0,3) J1.1[3,7)', ordered by start."""
    inst = schedule.inst
    rows: dict[int, list[tuple[int, int, OpId]]] = {
        m: [] for m in range(inst.n_machines)
    }
    for op in inst.op_ids():
        machine, duration = inst.jobs[op.job][op.step]
        start = schedule.start[op.flat]
        if start is None:
            raise ValueError(
                f"cannot render: (job {op.job}, step {op.step}) is unscheduled"
            )
        rows[machine].append((start, start + duration, op))
    lines = []
    for machine in range(inst.n_machines):
        cells = " ".join(
            f"J{op.job}.{op.step}[{s},{e})"
            for s, e, op in sorted(rows[machine], key=lambda item: (item[0], item[1]))
        )
        lines.append(f"M{machine}: {cells}".rstrip())
    return "\n".join(lines)


def schedule_to_json(schedule: Schedule) -> str:
    inst = schedule.inst
    ops = [
        {
            "job": op.job,
            "step": op.step,
            "machine": inst.jobs[op.job][op.step].machine,
            "duration": inst.jobs[op.job][op.step].duration,
            "start": schedule.start[op.flat],
        }
        for op in inst.op_ids()
        if schedule.start[op.flat] is not None
    ]
    payload = {
        "instance": inst.name,
        "makespan": schedule.makespan,
        "operations": ops,
    }
    return json.dumps(payload, indent=2) + "\n"


def schedule_from_json(inst: Instance, text: str) -> Schedule:
    """Rebuild a Schedule against `inst`.

    Structural problems (bad JSON, unknown operations, machine or duration
    that contradicts the instance) raise ValueError. Missing operations are
    kept as unscheduled so validate() reports them as coverage violations.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ValueError("malformed JSON: top level must be an object")
    for key in ("instance", "makespan", "operations"):
        if key not in payload:
            raise ValueError(f"malformed JSON: missing key {key!r}")
    if payload["instance"] and inst.name and payload["instance"] != inst.name:
        raise ValueError(
            f"schedule is for instance {payload['instance']!r}, not {inst.name!r}"
        )
    start: list[int | None] = [None] * inst.n_ops
    for rec in payload["operations"]:
        try:
            job, step = int(rec["job"]), int(rec["step"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"malformed operation record: {rec!r}") from None
        try:
            op = inst.op_id(job, step)
        except IndexError as exc:
            raise ValueError(str(exc)) from None
        expected = inst.jobs[job][step]
        if "machine" in rec and rec["machine"] != expected.machine:
            raise ValueError(
                f"(job {job}, step {step}) runs on machine {expected.machine}, "
                f"record says {rec['machine']}"
            )
        if "duration" in rec and rec["duration"] != expected.duration:
            raise ValueError(
                f"(job {job}, step {step}) lasts {expected.duration}, "
                f"record says {rec['duration']}"
            )
        if start[op.flat] is not None:
            raise ValueError(f"duplicate record for (job {job}, step {step})")
        try:
            start[op.flat] = int(rec["start"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(
                f"(job {job}, step {step}) has no usable start time"
            ) from None
    return Schedule(inst, tuple(start), int(payload["makespan"]))
