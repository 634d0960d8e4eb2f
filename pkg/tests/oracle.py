"""Exhaustive search helpers used as independent references in tests."""

from __future__ import annotations

from cjsp import Instance, OperationPermutation, makespan_of


def distinct_permutations(inst: Instance):
    """Yield every distinct operation permutation of the instance."""
    counts = [len(job.ops) for job in inst.jobs]
    total = sum(counts)
    seq: list[int] = []

    def walk():
        if len(seq) == total:
            yield tuple(seq)
            return
        for j, left in enumerate(counts):
            if left:
                counts[j] -= 1
                seq.append(j)
                yield from walk()
                seq.pop()
                counts[j] += 1

    yield from walk()


def brute_force_optimum(inst: Instance) -> int:
    """Minimum makespan over every valid permutation, via the decoder."""
    best = None
    for seq in distinct_permutations(inst):
        ms = makespan_of(inst, OperationPermutation(seq))
        if best is None or ms < best:
            best = ms
    assert best is not None
    return best


def count_distinct_permutations(inst: Instance) -> int:
    return sum(1 for _ in distinct_permutations(inst))
