"""Cyclic job-shop problem of order k: replicate every job k times.

Producing k identical consignments is modelled by expanding the base
instance into one with n*k independent jobs.  Copies carry no added
precedence between each other, so the solver is free to interleave
them; with k = 1 the expansion is the original problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OrderZero
from .instance import Instance


@dataclass(frozen=True)
class CyclicInstance:
    """A base instance together with its order-k expansion.

    Expanded jobs are ordered copy-major: all k copies of base job 0
    first, then job 1, and so on.  The mapping is pure arithmetic:
    expanded index = base_job * k + copy.
    """

    base: Instance
    order: int
    expanded: Instance

    def copy_of(self, expanded_job: int) -> tuple[int, int]:
        """Return (base job index, copy number) for an expanded job index."""
        return divmod(expanded_job, self.order)

    def expanded_index(self, base_job: int, copy: int) -> int:
        return base_job * self.order + copy


def expand(inst: Instance, k: int) -> CyclicInstance:
    """Build the order-k problem: k structurally identical copies of each job."""
    if k < 1:
        raise OrderZero(f"order must be >= 1, got {k}")
    if k == 1:
        expanded = inst
    else:
        jobs = tuple(inst.jobs[j] for j in range(inst.n) for _ in range(k))
        expanded = Instance(
            name=f"{inst.name}-k{k}" if inst.name else f"k{k}",
            n=inst.n * k,
            m=inst.m,
            jobs=jobs,
            scale=inst.scale,
        )
    return CyclicInstance(base=inst, order=k, expanded=expanded)
