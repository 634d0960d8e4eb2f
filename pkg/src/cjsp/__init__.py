"""Cyclic job-shop scheduling solver and benchmark harness."""

from .cyclic import CyclicInstance, expand
from .errors import CjspError
from .instance import Instance, Job, OperationSpec, lower_bound, parse_extended, parse_orlib, to_extended
from .sa import SAConfig, SAResult, acceptance_probability, anneal
from .schedule import (
    OperationPermutation,
    Schedule,
    canonical_permutation,
    decode,
    makespan_of,
    replicate,
    swap,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CjspError",
    "CyclicInstance",
    "Instance",
    "Job",
    "OperationSpec",
    "OperationPermutation",
    "SAConfig",
    "SAResult",
    "Schedule",
    "acceptance_probability",
    "anneal",
    "canonical_permutation",
    "decode",
    "expand",
    "lower_bound",
    "makespan_of",
    "parse_extended",
    "parse_orlib",
    "replicate",
    "swap",
    "to_extended",
    "validate",
    "__version__",
]
