from __future__ import annotations

import random

import pytest

from cjsp import Instance, Job, OperationSpec
from cjsp.corpus import load_bundled_instance

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_acceptance(label: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((label, "PASS" if passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{verdict}  {label}")


@pytest.fixture(scope="session")
def ft06() -> Instance:
    return load_bundled_instance("ft06")


@pytest.fixture(scope="session")
def la01() -> Instance:
    return load_bundled_instance("la01")


@pytest.fixture(scope="session")
def lw10x10() -> Instance:
    return load_bundled_instance("lw10x10")


@pytest.fixture(scope="session")
def demo4x4() -> Instance:
    return load_bundled_instance("demo4x4")


def build_instance(rows: list[list[tuple[int, int]]], m: int, name: str = "") -> Instance:
    jobs = tuple(Job(tuple(OperationSpec(mc, d) for mc, d in row)) for row in rows)
    return Instance(name=name, n=len(jobs), m=m, jobs=jobs)


def random_instance(rng: random.Random, max_jobs: int = 4, max_ops: int = 4,
                    max_machines: int = 4, max_duration: int = 9,
                    max_total_ops: int | None = None) -> Instance:
    """Small random instance; routes may revisit machines."""
    while True:
        n = rng.randint(1, max_jobs)
        m = rng.randint(1, max_machines)
        rows = []
        for _ in range(n):
            ops = rng.randint(1, max_ops)
            rows.append([(rng.randrange(m), rng.randint(0, max_duration)) for _ in range(ops)])
        inst = build_instance(rows, m)
        if max_total_ops is None or inst.total_ops <= max_total_ops:
            return inst


@pytest.fixture
def crossing_pair() -> Instance:
    """Two jobs crossing two machines; optimum 4 by full enumeration."""
    return build_instance([[(0, 2), (1, 2)], [(1, 2), (0, 2)]], m=2)
