from __future__ import annotations

import math
import random

import pytest

from cjsp import acceptance_probability, anneal, lower_bound, makespan_of
from cjsp.errors import InvalidConfig, NonPositiveDenominator
from cjsp.sa import SAConfig, best_of_seeds, random_permutation

from conftest import build_instance, random_instance
from oracle import brute_force_optimum

SMALL = SAConfig(cooling_steps=60, steps_per_temp=60, seed=0)


class TestAcceptanceProbability:
    def test_zero_delta_is_certain(self):
        assert acceptance_probability(0, 100, 1.0, 0.01) == 1.0

    def test_analytic_identity(self):
        cv, kt, temp = 840.0, 0.02, 0.5
        delta = cv * kt * temp
        assert acceptance_probability(delta, cv, temp, kt) == pytest.approx(math.exp(-1), abs=1e-12)

    def test_reference_point(self):
        assert acceptance_probability(10, 1000, 1.0, 0.01) == pytest.approx(math.exp(-1), abs=1e-12)

    def test_improvement_capped_at_one(self):
        assert acceptance_probability(-50, 100, 1.0, 0.01) == 1.0

    def test_monotone_in_delta(self):
        probs = [acceptance_probability(d, 500, 0.8, 0.01) for d in range(0, 200, 10)]
        assert all(a >= b for a, b in zip(probs, probs[1:]))

    def test_monotone_in_temperature(self):
        probs = [acceptance_probability(25, 500, t / 100, 0.01) for t in range(1, 100, 7)]
        assert all(a <= b for a, b in zip(probs, probs[1:]))

    def test_rejects_bad_denominators(self):
        with pytest.raises(NonPositiveDenominator):
            acceptance_probability(1, 0, 1.0, 0.01)
        with pytest.raises(NonPositiveDenominator):
            acceptance_probability(1, 10, 0.0, 0.01)
        with pytest.raises(NonPositiveDenominator):
            acceptance_probability(1, 10, 1.0, -0.5)


class TestConfig:
    def test_defaults_resolve_to_stock_values(self):
        cfg = SAConfig().resolved()
        assert cfg.initial_temperature == 1.0
        assert cfg.cooling_steps == 3000
        assert cfg.cooling_fraction == 0.97
        assert cfg.steps_per_temp == 3000
        assert cfg.kt == 0.01

    def test_high_order_bump(self):
        cfg = SAConfig().resolved(order=6)
        assert cfg.cooling_steps == 6000
        assert cfg.steps_per_temp == 6000
        # explicit values are never overridden
        cfg = SAConfig(cooling_steps=100, steps_per_temp=200).resolved(order=8)
        assert (cfg.cooling_steps, cfg.steps_per_temp) == (100, 200)

    def test_order_five_keeps_stock_steps(self):
        cfg = SAConfig().resolved(order=5)
        assert cfg.cooling_steps == 3000

    def test_from_text(self):
        cfg = SAConfig.from_text(
            "initial_temperature = 2.0\n"
            "cooling_fraction = 0.9   # slower\n"
            "\n"
            "kt = 0.02\n"
            "seed = 11\n"
        )
        assert cfg.initial_temperature == 2.0
        assert cfg.cooling_fraction == 0.9
        assert cfg.kt == 0.02
        assert cfg.seed == 11
        assert cfg.cooling_steps is None  # untouched fields keep defaults

    def test_from_text_rejects_unknown_keys(self):
        with pytest.raises(InvalidConfig):
            SAConfig.from_text("volume = 11\n")
        with pytest.raises(InvalidConfig):
            SAConfig.from_text("kt = loud\n")

    def test_invalid_configs(self):
        for bad in (
            SAConfig(initial_temperature=0.0),
            SAConfig(cooling_fraction=1.0),
            SAConfig(cooling_fraction=0.0),
            SAConfig(cooling_steps=0),
            SAConfig(steps_per_temp=-1),
            SAConfig(kt=0.0),
            SAConfig(time_limit=0.0),
        ):
            with pytest.raises(InvalidConfig):
                bad.resolved()


class TestAnneal:
    def test_deterministic(self, ft06):
        a = anneal(ft06, SMALL, collect_trace=True)
        b = anneal(ft06, SMALL, collect_trace=True)
        assert a.best_perm == b.best_perm
        assert a.best_makespan == b.best_makespan
        assert a.evaluations == b.evaluations
        assert a.trace == b.trace

    def test_seed_changes_run(self, ft06):
        a = anneal(ft06, SMALL)
        b = anneal(ft06, SAConfig(cooling_steps=60, steps_per_temp=60, seed=1))
        assert a.best_perm != b.best_perm

    def test_evaluation_count_exact(self, ft06):
        result = anneal(ft06, SMALL)
        assert result.evaluations == 60 * 60

    def test_best_consistent_with_decode(self, ft06):
        result = anneal(ft06, SMALL)
        assert result.best_makespan == makespan_of(ft06, result.best_perm)

    def test_never_worse_than_initial(self, ft06):
        rng = random.Random(SMALL.seed)
        initial = makespan_of(ft06, random_permutation(ft06, rng))
        assert anneal(ft06, SMALL).best_makespan <= initial

    def test_never_below_lower_bound(self):
        rng = random.Random(17)
        for _ in range(10):
            inst = random_instance(rng)
            result = anneal(inst, SAConfig(cooling_steps=30, steps_per_temp=30, seed=5))
            assert result.best_makespan >= lower_bound(inst)

    def test_single_job_instance(self):
        inst = build_instance([[(0, 3), (1, 4), (0, 2)]], m=2)
        result = anneal(inst, SMALL)
        assert result.best_makespan == 9

    def test_single_op_instance(self):
        inst = build_instance([[(0, 5)]], m=1)
        result = anneal(inst, SMALL)
        assert result.best_makespan == 5

    def test_crossing_pair_reaches_enumeration_optimum(self, crossing_pair):
        result = anneal(crossing_pair, SAConfig(cooling_steps=50, steps_per_temp=50, seed=0))
        assert result.best_makespan == 4 == brute_force_optimum(crossing_pair)

    def test_trace_best_non_increasing(self, ft06):
        result = anneal(ft06, SMALL, collect_trace=True)
        assert result.trace is not None
        bests = [point.best_value for point in result.trace]
        assert all(a >= b for a, b in zip(bests, bests[1:]))
        assert result.trace[-1].best_value == result.best_makespan

    def test_matches_enumeration_on_small_instances(self):
        rng = random.Random(23)
        cfg = SAConfig(cooling_steps=120, steps_per_temp=120, seed=1)
        for _ in range(6):
            inst = random_instance(rng, max_total_ops=7)
            assert anneal(inst, cfg).best_makespan == brute_force_optimum(inst)

    def test_time_limit_flags_result(self, lw10x10):
        result = anneal(lw10x10, SAConfig(seed=0, time_limit=0.05))
        assert result.timed_out
        assert result.evaluations < 9_000_000
        assert result.best_makespan >= lower_bound(lw10x10)

    def test_best_of_seeds(self, crossing_pair):
        best, results = best_of_seeds(crossing_pair, SAConfig(cooling_steps=30, steps_per_temp=30, seed=7), 3)
        assert len(results) == 3
        assert best.best_makespan == min(r.best_makespan for r in results)
