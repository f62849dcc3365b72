"""EPR singlet runs and the partially determining pair."""
import math

import pytest

from hangon import ConfigError, outcome_probability
from hangon.rng import RngStream
from hangon.scenarios import (
    ORDERS,
    build_epr_universe,
    build_partial_pair_universe,
    epr_joint_distribution,
    partial_pair_joint_distribution,
    partial_pair_state,
    run_epr,
    run_partial_pair,
    singlet_state,
)
from hangon.scenarios.epr import (
    a_spin,
    b_spin,
    first_observable,
    record_observable,
    second_observable,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class TestSinglet:
    def test_amplitudes(self):
        s = singlet_state()
        assert abs(s.amplitude(("+", "-")) - INV_SQRT2) < 1e-15
        assert abs(s.amplitude(("-", "+")) + INV_SQRT2) < 1e-15

    def test_universe_structure(self):
        u = build_epr_universe()
        assert tuple(sub.name for sub in u.subsystems) == ("A", "B")
        assert u.clock == 0

    def test_detector_probabilities(self):
        s = singlet_state()
        for outcome in ("+", "-"):
            assert abs(outcome_probability(s, a_spin(), outcome) - 0.5) < 1e-12

    def test_anticorrelation_after_first_outcome(self):
        u = build_epr_universe()
        o = u.register_observer("alice")
        rng = RngStream(4)
        mine = u.observe(o, a_spin(), rng)
        probs = u.branch_probabilities(o, b_spin())
        assert probs[{"+": "-", "-": "+"}[mine]] == pytest.approx(1.0, abs=1e-12)


class TestRunEpr:
    @pytest.mark.parametrize("order", ORDERS)
    def test_no_same_sign_outcomes(self, order):
        run = run_epr(order, 2000, seed=9)
        assert run.same_sign_count == 0
        assert run.counts[("+", "-")] + run.counts[("-", "+")] == 2000

    @pytest.mark.parametrize("order", ORDERS)
    def test_analytic_joint(self, order):
        joint = epr_joint_distribution(order)
        assert joint[("+", "-")] == pytest.approx(0.5, abs=1e-12)
        assert joint[("-", "+")] == pytest.approx(0.5, abs=1e-12)
        assert joint[("+", "+")] == 0.0
        assert joint[("-", "-")] == 0.0

    def test_orders_agree(self):
        a = epr_joint_distribution("alice_first")
        b = epr_joint_distribution("bob_record_first")
        for key in a:
            assert a[key] == pytest.approx(b[key], abs=1e-12)

    def test_single_run_is_anticorrelated(self):
        run = run_epr("alice_first", 1, seed=0)
        assert sum(run.counts.values()) == 1
        assert run.counts[("+", "-")] + run.counts[("-", "+")] == 1

    def test_reply_after_plus_is_always_minus(self):
        run = run_epr("bob_record_first", 3000, seed=5)
        assert run.counts[("+", "+")] == 0
        assert run.counts[("-", "-")] == 0

    def test_balanced_frequencies(self):
        run = run_epr("bob_record_first", 10_000, seed=6)
        frac = run.counts[("+", "-")] / 10_000
        se = math.sqrt(0.25 / 10_000)
        assert abs(frac - 0.5) < 3 * se

    def test_bad_order_rejected(self):
        with pytest.raises(ConfigError):
            run_epr("meta_observer", 10, seed=1)


class TestPartialPair:
    def test_state_support(self):
        s = partial_pair_state()
        assert s.term_count() == 3
        assert s.amplitude(("Y", "b")) == 0j

    def test_analytic_marginals_and_conditionals(self):
        u = build_partial_pair_universe()
        o = u.register_observer("alice")
        probs = u.branch_probabilities(o, first_observable())
        assert probs["X"] == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert probs["Y"] == pytest.approx(1.0 / 3.0, abs=1e-12)

        joint = partial_pair_joint_distribution()
        assert joint[("X", "a")] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert joint[("X", "b")] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert joint[("Y", "a")] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert joint[("Y", "b")] == 0.0

    def test_conditional_after_y_is_certain(self):
        from hangon.engine import force_observe

        u = build_partial_pair_universe()
        o = u.register_observer("alice")
        force_observe(u, o, first_observable(), "Y")
        probs = u.branch_probabilities(o, second_observable())
        assert probs["a"] == pytest.approx(1.0, abs=1e-12)
        assert probs["b"] == 0.0

    def test_run_counts(self):
        run = run_partial_pair(6000, seed=3)
        assert run.counts[("Y", "b")] == 0
        total = sum(run.counts.values())
        assert total == 6000
        x_frac = (run.counts[("X", "a")] + run.counts[("X", "b")]) / total
        se = math.sqrt((2 / 3) * (1 / 3) / total)
        assert abs(x_frac - 2 / 3) < 3 * se

    def test_record_observable_covers_ready(self):
        obs = record_observable()
        assert set(obs.class_names) == {"ready", "+", "-"}
