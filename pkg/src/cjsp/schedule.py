"""Permutation encoding, semi-active decoding and schedule validation.

Candidate solutions are operation-based permutations with repetition:
a sequence over job indices in which job j appears once per operation,
the r-th occurrence standing for job j's r-th operation.  Any swap of
two positions yields another valid encoding, which is what makes the
annealer's move closed over the search space.

Decoding is semi-active: operations are appended greedily in sequence
order, each starting at the later of its job predecessor's completion
and its machine's current frontier.  No gap-filling is attempted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import PermutationMismatch
from .instance import Instance, flatten


@dataclass(frozen=True)
class OperationPermutation:
    """Sequence of job indices with repetition over some instance."""

    seq: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.seq)


def required_counts(inst: Instance) -> list[int]:
    return [len(job.ops) for job in inst.jobs]


def check_permutation(inst: Instance, perm: OperationPermutation) -> None:
    """Raise PermutationMismatch unless the occurrence multiset is exact."""
    counts = [0] * inst.n
    for j in perm.seq:
        if not 0 <= j < inst.n:
            raise PermutationMismatch(f"job index {j} not in [0, {inst.n})")
        counts[j] += 1
    expected = required_counts(inst)
    if counts != expected:
        for j, (got, want) in enumerate(zip(counts, expected)):
            if got != want:
                raise PermutationMismatch(
                    f"job {j} occurs {got} times, needs {want}"
                )


def canonical_permutation(inst: Instance) -> OperationPermutation:
    """Each job's occurrences contiguous, in ascending job order."""
    seq = []
    for j, job in enumerate(inst.jobs):
        seq.extend([j] * len(job.ops))
    return OperationPermutation(tuple(seq))


def swap(perm: OperationPermutation, r1: int, r2: int) -> OperationPermutation:
    """Exchange positions r1 and r2; involutive, multiset-preserving."""
    size = len(perm.seq)
    for r in (r1, r2):
        if not 0 <= r < size:
            raise IndexError(f"position {r} not in [0, {size})")
    if r1 == r2:
        return perm
    seq = list(perm.seq)
    seq[r1], seq[r2] = seq[r2], seq[r1]
    return OperationPermutation(tuple(seq))


def replicate(perm: OperationPermutation, k: int) -> OperationPermutation:
    """Repeat a base-instance permutation once per copy, remapped copy-major.

    Block c maps base job j to expanded index j*k + c, so the decoded
    schedule of the result can never exceed k times the base makespan
    (each block may only start earlier than in the back-to-back plan).
    """
    seq = []
    for c in range(k):
        seq.extend(j * k + c for j in perm.seq)
    return OperationPermutation(tuple(seq))


@dataclass(frozen=True)
class ScheduleEntry:
    job: int
    op: int
    machine: int
    start: int
    end: int


@dataclass(frozen=True)
class Schedule:
    """Start/end times per operation plus the resulting makespan."""

    entries: tuple[ScheduleEntry, ...]
    makespan: int


def decode(inst: Instance, perm: OperationPermutation) -> Schedule:
    """Semi-active greedy placement of the permutation's operations."""
    check_permutation(inst, perm)
    flat = flatten(inst)
    offsets, machines, durations = flat.offsets, flat.machines, flat.durations
    job_avail = [0] * inst.n
    mach_avail = [0] * inst.m
    next_op = [0] * inst.n
    entries = []
    for j in perm.seq:
        r = next_op[j]
        next_op[j] = r + 1
        o = offsets[j] + r
        machine = machines[o]
        start = max(job_avail[j], mach_avail[machine])
        end = start + durations[o]
        job_avail[j] = end
        mach_avail[machine] = end
        entries.append(ScheduleEntry(job=j, op=r, machine=machine, start=start, end=end))
    makespan = max(mach_avail) if entries else 0
    return Schedule(entries=tuple(entries), makespan=makespan)


def makespan_of(inst: Instance, perm: OperationPermutation) -> int:
    """Makespan of decode(inst, perm) without building entry objects."""
    check_permutation(inst, perm)
    flat = flatten(inst)
    offsets, machines, durations = flat.offsets, flat.machines, flat.durations
    job_avail = [0] * inst.n
    mach_avail = [0] * inst.m
    next_op = [0] * inst.n
    for j in perm.seq:
        r = next_op[j]
        next_op[j] = r + 1
        o = offsets[j] + r
        machine = machines[o]
        t = job_avail[j]
        u = mach_avail[machine]
        e = (t if t > u else u) + durations[o]
        job_avail[j] = e
        mach_avail[machine] = e
    return max(mach_avail)


@dataclass(frozen=True)
class Violation:
    """One broken constraint: its class and the entries involved."""

    kind: str  # duration | route | job-precedence | machine-overlap | completeness | makespan
    detail: str


def validate(inst: Instance, sched: Schedule) -> list[Violation]:
    """Check every schedule invariant; an empty list means feasible."""
    violations = []
    seen: dict[tuple[int, int], ScheduleEntry] = {}
    for e in sched.entries:
        key = (e.job, e.op)
        if key in seen:
            violations.append(Violation("completeness", f"operation {key} scheduled twice"))
            continue
        if not (0 <= e.job < inst.n) or not (0 <= e.op < len(inst.jobs[e.job].ops)):
            violations.append(Violation("completeness", f"unknown operation {key}"))
            continue
        seen[key] = e
        spec = inst.op(e.job, e.op)
        if e.machine != spec.machine:
            violations.append(
                Violation("route", f"operation {key} on machine {e.machine}, route says {spec.machine}")
            )
        if e.end - e.start != spec.duration:
            violations.append(
                Violation(
                    "duration",
                    f"operation {key} spans [{e.start}, {e.end}), duration should be {spec.duration}",
                )
            )
        if e.start < 0:
            violations.append(Violation("duration", f"operation {key} starts at {e.start} < 0"))
    for j, job in enumerate(inst.jobs):
        for r in range(len(job.ops)):
            if (j, r) not in seen:
                violations.append(Violation("completeness", f"operation ({j}, {r}) missing"))
        for r in range(1, len(job.ops)):
            a, b = seen.get((j, r - 1)), seen.get((j, r))
            if a and b and b.start < a.end:
                violations.append(
                    Violation(
                        "job-precedence",
                        f"job {j}: op {r} starts at {b.start} before op {r - 1} ends at {a.end}",
                    )
                )
    by_machine: dict[int, list[ScheduleEntry]] = {}
    for e in seen.values():
        by_machine.setdefault(e.machine, []).append(e)
    for machine, entries in sorted(by_machine.items()):
        entries.sort(key=lambda e: (e.start, e.end))
        for prev, cur in zip(entries, entries[1:]):
            if cur.start < prev.end:
                violations.append(
                    Violation(
                        "machine-overlap",
                        f"machine {machine}: ops ({prev.job}, {prev.op}) and ({cur.job}, {cur.op}) "
                        f"overlap on [{cur.start}, {min(prev.end, cur.end)})",
                    )
                )
    if sched.entries:
        true_makespan = max(e.end for e in sched.entries)
        if sched.makespan != true_makespan:
            violations.append(
                Violation("makespan", f"recorded makespan {sched.makespan}, entries end at {true_makespan}")
            )
    return violations


def schedule_to_json(
    sched: Schedule,
    instance_name: str,
    order: int = 1,
    scale: int = 1,
) -> str:
    """Stable JSON rendering; `base_job`/`copy` decompose expanded job indices."""
    entries = []
    for e in sorted(sched.entries, key=lambda e: (e.job, e.op)):
        base_job, copy = divmod(e.job, order) if order > 1 else (e.job, 0)
        entries.append(
            {
                "job": e.job,
                "base_job": base_job,
                "copy": copy,
                "op": e.op,
                "machine": e.machine,
                "start": e.start,
                "end": e.end,
            }
        )
    doc = {
        "instance": instance_name,
        "order": order,
        "scale": scale,
        "makespan": sched.makespan,
        "entries": entries,
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def schedule_from_json(text: str) -> tuple[Schedule, dict]:
    """Parse schedule JSON; returns the schedule and the header fields."""
    doc = json.loads(text)
    entries = tuple(
        ScheduleEntry(
            job=int(e["job"]),
            op=int(e["op"]),
            machine=int(e["machine"]),
            start=int(e["start"]),
            end=int(e["end"]),
        )
        for e in doc["entries"]
    )
    sched = Schedule(entries=entries, makespan=int(doc["makespan"]))
    meta = {
        "instance": doc.get("instance", ""),
        "order": int(doc.get("order", 1)),
        "scale": int(doc.get("scale", 1)),
    }
    return sched, meta
