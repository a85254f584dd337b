"""Job-shop instances and the plain-text format they are stored in.

An instance is a set of jobs, each an ordered list of (machine, duration)
operations. The text format is one header line "n_jobs n_machines" followed
by one line per job holding n_machines whitespace-separated integer pairs.
Lines starting with '#' are comments; a "# name: X" comment names the
instance.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, NamedTuple


class ParseError(ValueError):
    """Malformed instance text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Op(NamedTuple):
    machine: int
    duration: int


class OpId(NamedTuple):
    """Identifies one operation: step `step` of job `job`.

    `flat` is the operation's index in job-major order, used to address
    pheromone matrix rows and schedule arrays.
    """

    job: int
    step: int
    flat: int


@dataclass(frozen=True)
class Instance:
    name: str
    n_jobs: int
    n_machines: int
    jobs: tuple[tuple[Op, ...], ...]

    def __post_init__(self):
        if self.n_jobs != len(self.jobs):
            raise ValueError(f"n_jobs={self.n_jobs} but {len(self.jobs)} job rows")
        if self.n_machines < 0:
            raise ValueError("n_machines must be non-negative")
        for j, ops in enumerate(self.jobs):
            for s, op in enumerate(ops):
                if not 0 <= op.machine < self.n_machines:
                    raise ValueError(
                        f"job {j} step {s}: machine {op.machine} outside "
                        f"0..{self.n_machines - 1}"
                    )
                if op.duration < 0:
                    raise ValueError(f"job {j} step {s}: negative duration")
        # Flat index of each job's first operation, cached for OpId lookups.
        base = []
        acc = 0
        for ops in self.jobs:
            base.append(acc)
            acc += len(ops)
        object.__setattr__(self, "_job_base", tuple(base))
        object.__setattr__(self, "_n_ops", acc)

    @property
    def n_ops(self) -> int:
        return self._n_ops

    @property
    def job_base(self) -> tuple[int, ...]:
        return self._job_base

    def op(self, job: int, step: int) -> Op:
        return self.jobs[job][step]

    def op_id(self, job: int, step: int) -> OpId:
        if not 0 <= job < self.n_jobs:
            raise IndexError(f"job {job} outside 0..{self.n_jobs - 1}")
        if not 0 <= step < len(self.jobs[job]):
            raise IndexError(f"job {job} has no step {step}")
        return OpId(job, step, self._job_base[job] + step)

    def op_ids(self) -> Iterator[OpId]:
        """All operations in job-major order; flat fields run 0..n_ops-1."""
        flat = 0
        for job, ops in enumerate(self.jobs):
            for step in range(len(ops)):
                yield OpId(job, step, flat)
                flat += 1


def parse_instance(text: str, name: str = "") -> Instance:
    """Parse the text format. Raises ParseError with a 1-based line number."""
    header: tuple[int, int] | None = None
    jobs: list[tuple[Op, ...]] = []
    comment_name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:") and not comment_name:
                comment_name = body[len("name:"):].strip()
            continue
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer token in {tokens!r}", lineno) from None
        if header is None:
            if len(values) != 2:
                raise ParseError(
                    f"header must be 'n_jobs n_machines', got {len(values)} values",
                    lineno,
                )
            if values[0] < 0 or values[1] < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (values[0], values[1])
            continue
        n_jobs, n_machines = header
        if len(jobs) >= n_jobs:
            raise ParseError(f"unexpected data after {n_jobs} job lines", lineno)
        if len(values) != 2 * n_machines:
            raise ParseError(
                f"job line must hold {n_machines} (machine, duration) pairs, "
                f"got {len(values)} values",
                lineno,
            )
        ops = []
        for k in range(n_machines):
            machine, duration = values[2 * k], values[2 * k + 1]
            if not 0 <= machine < n_machines:
                raise ParseError(
                    f"pair {k}: machine {machine} outside 0..{n_machines - 1}",
                    lineno,
                )
            if duration < 0:
                raise ParseError(f"pair {k}: negative duration {duration}", lineno)
            ops.append(Op(machine, duration))
        jobs.append(tuple(ops))
    final = lineno if text else 1
    if header is None:
        raise ParseError("missing 'n_jobs n_machines' header", final)
    if len(jobs) != header[0]:
        raise ParseError(
            f"expected {header[0]} job lines, found {len(jobs)}", final
        )
    return Instance(
        name=name or comment_name,
        n_jobs=header[0],
        n_machines=header[1],
        jobs=tuple(jobs),
    )


def serialize_instance(inst: Instance) -> str:
    """Inverse of parse_instance: parse(serialize(inst)) == inst."""
    lines = []
    if inst.name:
        lines.append(f"# name: {inst.name}")
    lines.append(f"{inst.n_jobs} {inst.n_machines}")
    for ops in inst.jobs:
        lines.append(" ".join(f"{op.machine} {op.duration}" for op in ops))
    return "\n".join(lines) + "\n"


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    inst = parse_instance(path.read_text(), name="")
    if not inst.name:
        inst = Instance(path.stem, inst.n_jobs, inst.n_machines, inst.jobs)
    return inst


def _data_root():
    return resources.files("antshop") / "data"


def bundled_names() -> list[str]:
    """Names of instances shipped with the package."""
    return sorted(
        p.name[: -len(".txt")]
        for p in _data_root().iterdir()
        if p.name.endswith(".txt")
    )


def load_bundled(name: str) -> Instance:
    entry = _data_root() / f"{name}.txt"
    if not entry.is_file():
        raise FileNotFoundError(
            f"no bundled instance {name!r}; bundled: {', '.join(bundled_names())}"
        )
    return parse_instance(entry.read_text(), name=name)


def resolve_instance(ref: str | Path, base_dir: str | Path | None = None) -> Instance:
    """Load `ref` as a file path if one exists, else as a bundled name."""
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        candidate = Path(base_dir) / path
        if candidate.is_file():
            return load_instance(candidate)
    if path.is_file():
        return load_instance(path)
    ref = str(ref)
    if "/" not in ref and not ref.endswith(".txt"):
        try:
            return load_bundled(ref)
        except FileNotFoundError:
            pass
    raise FileNotFoundError(
        f"no instance file {ref!r} and no bundled instance of that name "
        f"(bundled: {', '.join(bundled_names())})"
    )


class ManifestRow(NamedTuple):
    name: str
    n_jobs: int
    n_machines: int
    known_optimum: int


def load_manifest() -> dict[str, ManifestRow]:
    """Catalog of well-known benchmark instances and their best makespans."""
    text = (_data_root() / "manifest.csv").read_text()
    rows = {}
    for rec in csv.DictReader(text.splitlines()):
        row = ManifestRow(
            name=rec["name"],
            n_jobs=int(rec["n_jobs"]),
            n_machines=int(rec["n_machines"]),
            known_optimum=int(rec["known_optimum"]),
        )
        rows[row.name] = row
    return rows


def known_optimum(name: str) -> int | None:
    row = load_manifest().get(name)
    return row.known_optimum if row else None
