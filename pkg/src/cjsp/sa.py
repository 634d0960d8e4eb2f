"""Simulated annealing over operation permutations.

Control flow per run: an outer loop of ``cooling_steps`` iterations
multiplies the temperature by ``cooling_fraction``, then an inner loop
of ``steps_per_temp`` swap moves evaluates one full decode each.  An
improving move (delta < 0) is always taken; a non-improving one is
taken when exp((-delta / current) / (kt * temperature)) beats a uniform
draw, otherwise the swap is undone.  After each inner loop the
temperature decrement is inverted once if the current value improved
over the value recorded at the top of that outer iteration, so the
cooling schedule slows down while progress lasts.  The loop is counter
driven and always terminates after ``cooling_steps`` iterations.

Every random draw comes from one generator seeded from the config, so
a run is reproducible bit for bit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from random import Random

from .errors import InvalidConfig, NonPositiveDenominator
from .instance import Instance, flatten
from .schedule import OperationPermutation, canonical_permutation

#: Coefficients used for all headline runs (initial temperature, outer
#: steps, cooling fraction, inner steps, kt).
DEFAULT_INITIAL_TEMPERATURE = 1.0
DEFAULT_COOLING_STEPS = 3000
DEFAULT_COOLING_FRACTION = 0.97
DEFAULT_STEPS_PER_TEMP = 3000
DEFAULT_KT = 0.01

#: Orders at or above this get a larger step budget when none is set.
HIGH_ORDER_THRESHOLD = 6
HIGH_ORDER_STEPS = 6000


@dataclass(frozen=True)
class SAConfig:
    """Annealer coefficients; None fields fall back to the defaults above.

    ``cooling_steps`` and ``steps_per_temp`` default to 3000, raised to
    6000 when resolving for a cyclic order >= 6.
    """

    initial_temperature: float = DEFAULT_INITIAL_TEMPERATURE
    cooling_steps: int | None = None
    cooling_fraction: float = DEFAULT_COOLING_FRACTION
    steps_per_temp: int | None = None
    kt: float = DEFAULT_KT
    seed: int = 0
    time_limit: float | None = None

    def resolved(self, order: int = 1) -> "SAConfig":
        """Fill unset step counts for the given cyclic order and validate."""
        steps = HIGH_ORDER_STEPS if order >= HIGH_ORDER_THRESHOLD else DEFAULT_COOLING_STEPS
        cfg = replace(
            self,
            cooling_steps=self.cooling_steps if self.cooling_steps is not None else steps,
            steps_per_temp=self.steps_per_temp if self.steps_per_temp is not None else steps,
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_text(cls, text: str) -> "SAConfig":
        """Parse a ``key = value`` profile; unknown keys are rejected.

        Recognized keys match the field names; ``#`` starts a comment.
        """
        field_types = {
            "initial_temperature": float,
            "cooling_steps": int,
            "cooling_fraction": float,
            "steps_per_temp": int,
            "kt": float,
            "seed": int,
            "time_limit": float,
        }
        values: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in field_types or not value:
                raise InvalidConfig(f"config line {lineno}: expected 'key = value', got {raw!r}")
            try:
                values[key] = field_types[key](value)
            except ValueError:
                raise InvalidConfig(f"config line {lineno}: bad value {value!r} for {key}") from None
        return cls(**values)

    def validate(self) -> None:
        if self.initial_temperature <= 0:
            raise InvalidConfig(f"initial_temperature must be > 0, got {self.initial_temperature}")
        if not 0.0 < self.cooling_fraction < 1.0:
            raise InvalidConfig(f"cooling_fraction must be in (0, 1), got {self.cooling_fraction}")
        if self.cooling_steps is not None and self.cooling_steps < 1:
            raise InvalidConfig(f"cooling_steps must be >= 1, got {self.cooling_steps}")
        if self.steps_per_temp is not None and self.steps_per_temp < 1:
            raise InvalidConfig(f"steps_per_temp must be >= 1, got {self.steps_per_temp}")
        if self.kt <= 0:
            raise InvalidConfig(f"kt must be > 0, got {self.kt}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidConfig(f"time_limit must be > 0, got {self.time_limit}")


@dataclass(frozen=True)
class TracePoint:
    step: int
    temperature: float
    current_value: int
    best_value: int


@dataclass(frozen=True)
class SAResult:
    best_perm: OperationPermutation
    best_makespan: int
    evaluations: int
    elapsed: float
    timed_out: bool = False
    trace: tuple[TracePoint, ...] | None = None


def acceptance_probability(delta: float, current_value: float, temperature: float, kt: float) -> float:
    """exp((-delta / current_value) / (kt * temperature)), capped at 1."""
    if current_value <= 0 or temperature <= 0 or kt <= 0:
        raise NonPositiveDenominator(
            f"need current_value, temperature and kt > 0, got "
            f"{current_value}, {temperature}, {kt}"
        )
    exponent = (-delta / current_value) / (kt * temperature)
    if exponent >= 0:
        return 1.0
    return math.exp(exponent)


def random_permutation(inst: Instance, rng: Random) -> OperationPermutation:
    """Uniform shuffle of the canonical permutation."""
    seq = list(canonical_permutation(inst).seq)
    rng.shuffle(seq)
    return OperationPermutation(tuple(seq))


def anneal(inst: Instance, cfg: SAConfig, collect_trace: bool = False) -> SAResult:
    """Run one annealing chain and return the best solution ever seen.

    Evaluation count is cooling_steps * steps_per_temp (one decode per
    move) unless the time limit fires, in which case the result carries
    the best-so-far and is flagged.  Instances with a single operation
    have nothing to swap and return the only permutation immediately.
    """
    cfg = cfg.resolved()
    started = time.perf_counter()
    rng = Random(cfg.seed)
    rnd = rng.random
    exp = math.exp

    flat = flatten(inst)
    offsets, machines, durations = list(flat.offsets), list(flat.machines), list(flat.durations)
    size = flat.total_ops
    n, m = inst.n, inst.m

    seq = list(canonical_permutation(inst).seq)
    rng.shuffle(seq)

    zeros_n = [0] * n
    zeros_m = [0] * m
    job_avail = [0] * n
    mach_avail = [0] * m
    next_op = [0] * n

    def evaluate() -> int:
        job_avail[:] = zeros_n
        mach_avail[:] = zeros_m
        next_op[:] = zeros_n
        for j in seq:
            r = next_op[j]
            next_op[j] = r + 1
            o = offsets[j] + r
            mc = machines[o]
            t = job_avail[j]
            u = mach_avail[mc]
            e = (t if t > u else u) + durations[o]
            job_avail[j] = e
            mach_avail[mc] = e
        return max(mach_avail)

    current_value = evaluate()
    best_value = current_value
    best_seq = list(seq)
    evaluations = 0
    timed_out = False
    trace: list[TracePoint] | None = [] if collect_trace else None

    temperature = cfg.initial_temperature
    cooling_fraction = cfg.cooling_fraction
    kt = cfg.kt
    deadline = None if cfg.time_limit is None else started + cfg.time_limit

    if size >= 2:
        for step in range(cfg.cooling_steps):
            temperature *= cooling_fraction
            start_value = current_value
            kt_t = kt * temperature
            for _ in range(cfg.steps_per_temp):
                r1 = int(rnd() * size)
                r2 = int(rnd() * size)
                while r2 == r1:
                    r2 = int(rnd() * size)
                seq[r1], seq[r2] = seq[r2], seq[r1]

                # inline decode of the swapped sequence
                job_avail[:] = zeros_n
                mach_avail[:] = zeros_m
                next_op[:] = zeros_n
                for j in seq:
                    r = next_op[j]
                    next_op[j] = r + 1
                    o = offsets[j] + r
                    mc = machines[o]
                    t = job_avail[j]
                    u = mach_avail[mc]
                    e = (t if t > u else u) + durations[o]
                    job_avail[j] = e
                    mach_avail[mc] = e
                new_value = max(mach_avail)
                evaluations += 1

                delta = new_value - current_value
                if delta < 0:
                    current_value = new_value
                    if new_value < best_value:
                        best_value = new_value
                        best_seq = list(seq)
                else:
                    try:
                        ex = exp((-delta / current_value) / kt_t)
                    except ZeroDivisionError:
                        ex = 1.0 if delta == 0 else 0.0
                    if ex > rnd():
                        current_value = new_value
                    else:
                        seq[r1], seq[r2] = seq[r2], seq[r1]
            if current_value - start_value < 0.0:
                temperature /= cooling_fraction
            if trace is not None:
                trace.append(TracePoint(step, temperature, current_value, best_value))
            if deadline is not None and time.perf_counter() > deadline:
                timed_out = True
                break

    elapsed = time.perf_counter() - started
    return SAResult(
        best_perm=OperationPermutation(tuple(best_seq)),
        best_makespan=best_value,
        evaluations=evaluations,
        elapsed=elapsed,
        timed_out=timed_out,
        trace=tuple(trace) if trace is not None else None,
    )


def best_of_seeds(inst: Instance, cfg: SAConfig, seeds: int) -> tuple[SAResult, list[SAResult]]:
    """Run `seeds` chains with seed, seed+1, ... and return the best and all."""
    results = []
    for i in range(seeds):
        results.append(anneal(inst, replace(cfg, seed=cfg.seed + i)))
    best = min(results, key=lambda r: r.best_makespan)
    return best, results
