"""Job-shop instance model and file parsers.

Two text formats are supported:

* OR-Library layout: a ``n m`` header followed by n lines of exactly
  2m integers, alternating 0-based machine index and duration.  Every
  job visits m machines.
* Extended layout: a ``n m`` header followed by n lines of the form
  ``L machine dur machine dur ...`` with 2L tokens after the count.
  Jobs may have different lengths and may revisit machines; durations
  may carry up to two decimal places, in which case all durations are
  stored as integer centiunits and ``Instance.scale`` is set to 100.

Lines whose first non-blank character is ``#`` are comments.  All
durations are kept as non-negative integers internally so makespan
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadOpCount,
    MachineOutOfRange,
    MalformedHeader,
    NegativeDuration,
    WrongTokenCount,
)


@dataclass(frozen=True)
class OperationSpec:
    """One processing step: which machine, and for how many time units."""

    machine: int
    duration: int

    def __post_init__(self):
        if self.machine < 0:
            raise MachineOutOfRange(f"machine index {self.machine} is negative")
        if self.duration < 0:
            raise NegativeDuration(f"duration {self.duration} is negative")


@dataclass(frozen=True)
class Job:
    """Ordered technological route of one job."""

    ops: tuple[OperationSpec, ...]

    def __post_init__(self):
        if not self.ops:
            raise BadOpCount("a job must have at least one operation")

    @property
    def length(self) -> int:
        return sum(op.duration for op in self.ops)


@dataclass(frozen=True)
class Instance:
    """Immutable job-shop instance.

    ``scale`` records the fixed-point factor applied to durations by the
    extended parser (1 for integral input, 100 for centiunit storage);
    reported times should be divided by it for display.
    """

    name: str
    n: int
    m: int
    jobs: tuple[Job, ...]
    scale: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise MalformedHeader(f"need n >= 1 and m >= 1, got n={self.n} m={self.m}")
        if self.n != len(self.jobs):
            raise MalformedHeader(f"header says {self.n} jobs, found {len(self.jobs)}")
        for j, job in enumerate(self.jobs):
            for op in job.ops:
                if op.machine >= self.m:
                    raise MachineOutOfRange(
                        f"job {j} references machine {op.machine}, only {self.m} machines"
                    )

    @property
    def total_ops(self) -> int:
        return sum(len(job.ops) for job in self.jobs)

    @property
    def max_ops_per_job(self) -> int:
        return max(len(job.ops) for job in self.jobs)

    def op(self, job: int, r: int) -> OperationSpec:
        return self.jobs[job].ops[r]

    def display(self, value: int | float) -> float | int:
        """Convert an internal time value back to display units."""
        if self.scale == 1:
            return value
        return value / self.scale


@dataclass(frozen=True)
class FlatInstance:
    """Flattened per-operation arrays for the solver hot path."""

    offsets: tuple[int, ...]   # first flat index of each job
    machines: tuple[int, ...]  # machine per flat op index
    durations: tuple[int, ...]

    @property
    def total_ops(self) -> int:
        return len(self.machines)


def flatten(inst: Instance) -> FlatInstance:
    offsets = []
    machines = []
    durations = []
    off = 0
    for job in inst.jobs:
        offsets.append(off)
        for op in job.ops:
            machines.append(op.machine)
            durations.append(op.duration)
        off += len(job.ops)
    return FlatInstance(tuple(offsets), tuple(machines), tuple(durations))


def _data_lines(text: str) -> list[tuple[int, str]]:
    """Non-blank, non-comment lines paired with their 1-based line numbers."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((i, stripped))
    return out


def _parse_header(lines: list[tuple[int, str]]) -> tuple[int, int, int]:
    if not lines:
        raise MalformedHeader("empty input, expected a 'n m' header")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2:
        raise MalformedHeader(f"expected 'n m', got {header!r}", line=lineno)
    try:
        n, m = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MalformedHeader(f"expected two integers, got {header!r}", line=lineno) from None
    if n < 1 or m < 1:
        raise MalformedHeader(f"n and m must be positive, got {n} {m}", line=lineno)
    return n, m, lineno


def parse_orlib(text: str, name: str = "") -> Instance:
    """Parse the fixed-layout OR-Library job-shop format."""
    lines = _data_lines(text)
    n, m, _ = _parse_header(lines)
    body = lines[1:]
    if len(body) < n:
        raise WrongTokenCount(
            f"header says {n} jobs but only {len(body)} data lines follow",
            line=lines[0][0],
        )
    jobs = []
    for j in range(n):
        lineno, line = body[j]
        tokens = line.split()
        if len(tokens) != 2 * m:
            raise WrongTokenCount(
                f"job {j}: expected {2 * m} tokens, got {len(tokens)}", line=lineno
            )
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise WrongTokenCount(f"job {j}: non-integer token in {line!r}", line=lineno) from None
        ops = []
        for machine, duration in zip(values[0::2], values[1::2]):
            if machine < 0 or machine >= m:
                raise MachineOutOfRange(f"job {j}: machine {machine} not in [0, {m})", line=lineno)
            if duration < 0:
                raise NegativeDuration(f"job {j}: duration {duration} < 0", line=lineno)
            ops.append(OperationSpec(machine, duration))
        jobs.append(Job(tuple(ops)))
    return Instance(name=name, n=n, m=m, jobs=tuple(jobs))


def _parse_duration_token(token: str, lineno: int) -> tuple[int, bool]:
    """Return (value in centiunits, had_fraction)."""
    if "." in token:
        whole, _, frac = token.partition(".")
        if not frac or len(frac) > 2 or not frac.isdigit():
            raise WrongTokenCount(
                f"duration {token!r} has more than two decimal places", line=lineno
            )
        sign = -1 if whole.startswith("-") else 1
        whole = whole.lstrip("+-") or "0"
        if not whole.isdigit():
            raise WrongTokenCount(f"bad duration token {token!r}", line=lineno)
        cents = int(whole) * 100 + int(frac.ljust(2, "0"))
        return sign * cents, True
    try:
        return int(token) * 100, False
    except ValueError:
        raise WrongTokenCount(f"bad duration token {token!r}", line=lineno) from None


def parse_extended(text: str, name: str = "") -> Instance:
    """Parse the variable-length format with optional decimal durations."""
    lines = _data_lines(text)
    n, m, _ = _parse_header(lines)
    body = lines[1:]
    if len(body) < n:
        raise BadOpCount(
            f"header says {n} jobs but only {len(body)} data lines follow",
            line=lines[0][0],
        )
    raw_jobs: list[list[tuple[int, int]]] = []  # (machine, centiunits)
    any_fraction = False
    for j in range(n):
        lineno, line = body[j]
        tokens = line.split()
        try:
            count = int(tokens[0])
        except ValueError:
            raise BadOpCount(f"job {j}: op count {tokens[0]!r} is not an integer", line=lineno) from None
        if count <= 0:
            raise BadOpCount(f"job {j}: op count must be positive, got {count}", line=lineno)
        if len(tokens) != 1 + 2 * count:
            raise BadOpCount(
                f"job {j}: expected {2 * count} tokens after the count, got {len(tokens) - 1}",
                line=lineno,
            )
        ops = []
        for r in range(count):
            machine_tok = tokens[1 + 2 * r]
            dur_tok = tokens[2 + 2 * r]
            try:
                machine = int(machine_tok)
            except ValueError:
                raise WrongTokenCount(f"job {j}: bad machine token {machine_tok!r}", line=lineno) from None
            if machine < 0 or machine >= m:
                raise MachineOutOfRange(f"job {j}: machine {machine} not in [0, {m})", line=lineno)
            cents, had_fraction = _parse_duration_token(dur_tok, lineno)
            any_fraction = any_fraction or had_fraction
            if cents < 0:
                raise NegativeDuration(f"job {j}: duration {dur_tok} < 0", line=lineno)
            ops.append((machine, cents))
        raw_jobs.append(ops)
    scale = 100 if any_fraction else 1
    jobs = []
    for ops in raw_jobs:
        if scale == 100:
            specs = tuple(OperationSpec(mach, cents) for mach, cents in ops)
        else:
            specs = tuple(OperationSpec(mach, cents // 100) for mach, cents in ops)
        jobs.append(Job(specs))
    return Instance(name=name, n=n, m=m, jobs=tuple(jobs), scale=scale)


def to_extended(inst: Instance, comment: str = "") -> str:
    """Serialize to the extended format; inverse of :func:`parse_extended`."""
    out = []
    if comment:
        for line in comment.splitlines():
            out.append(f"# {line}")
    out.append(f"{inst.n} {inst.m}")
    for job in inst.jobs:
        parts = [str(len(job.ops))]
        for op in job.ops:
            parts.append(str(op.machine))
            if inst.scale == 1:
                parts.append(str(op.duration))
            else:
                parts.append(f"{op.duration / inst.scale:.2f}")
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def lower_bound(inst: Instance) -> int:
    """max(heaviest machine load, longest job); a valid makespan floor."""
    machine_load = [0] * inst.m
    best_job = 0
    for job in inst.jobs:
        length = 0
        for op in job.ops:
            machine_load[op.machine] += op.duration
            length += op.duration
        if length > best_job:
            best_job = length
    return max(max(machine_load), best_job)
