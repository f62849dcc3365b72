"""Hang-on engine: universes, observation, communication, branch trees."""
import json
import math

import pytest

from hangon import (
    DuplicateObserver,
    FixedStream,
    RngStream,
    Subsystem,
    Truth,
    create_universe,
    label_observable,
    make_state,
    outcome_probability,
    tensor,
)
from hangon.analysis import (
    born_joint_distribution,
    l1_distance,
    sequential_joint_distribution,
)
from hangon.engine import force_observe

INV_SQRT2 = 1.0 / math.sqrt(2.0)

A = Subsystem("A", ("+", "-"))
B = Subsystem("B", ("+", "-"))
BOB = Subsystem("bob", ("ready", "+", "-"))
A_SPIN = label_observable(A, name="A_spin")
B_SPIN = label_observable(B, name="B_spin")
BOB_RECORD = label_observable(BOB, name="bob_record")


def singlet_universe(with_bob=False):
    s = make_state([A, B], [(("+", "-"), INV_SQRT2), (("-", "+"), -INV_SQRT2)])
    if with_bob:
        s = tensor(s, make_state([BOB], [(("ready",), 1.0)]))
    return create_universe(s)


class TestUniverseBasics:
    def test_creation_structure(self):
        u = singlet_universe()
        assert u.clock == 0
        assert u.root.parent is None
        assert len(u.subsystems) == 2

    def test_single_term_universe_is_certain(self):
        u = create_universe(make_state([A], [(("+",), 1.0)]))
        o = u.register_observer("alice")
        assert u.branch_probabilities(o, A_SPIN) == {"+": 1.0, "-": 0.0}

    def test_register_two_observers(self):
        u = singlet_universe()
        alice = u.register_observer("alice")
        bob = u.register_observer("bob")
        assert alice.node is u.root and bob.node is u.root
        assert len(alice.ledger) == 0

    def test_duplicate_observer(self):
        u = singlet_universe()
        u.register_observer("alice")
        with pytest.raises(DuplicateObserver):
            u.register_observer("alice")

    def test_clock_cannot_go_backwards(self):
        u = singlet_universe()
        u.advance_clock(10)
        with pytest.raises(ValueError):
            u.advance_clock(5)


class TestEntangleStep:
    def test_spin_apparatus_chain(self):
        # (0.6|+> + 0.8|->)|ready>|ready> -> needle entangled -> bob entangled.
        needle = Subsystem("needle", ("ready", "up", "down"))
        watcher = Subsystem("watcher", ("ready", "saw_up", "saw_down"))
        s = make_state([A], [(("+",), 0.6), (("-",), 0.8)])
        s = tensor(s, make_state([needle], [(("ready",), 1.0)]))
        s = tensor(s, make_state([watcher], [(("ready",), 1.0)]))
        u = create_universe(s)
        alice = u.register_observer("alice")

        u.entangle_step(A_SPIN, needle, {"+": "up", "-": "down"})
        assert abs(u.global_state.amplitude(("+", "up", "ready")) - 0.6) < 1e-15
        assert abs(u.global_state.amplitude(("-", "down", "ready")) - 0.8) < 1e-15

        needle_obs = label_observable(needle)
        u.entangle_step(needle_obs, watcher, {"up": "saw_up", "down": "saw_down"})
        assert abs(u.global_state.amplitude(("+", "up", "saw_up")) - 0.6) < 1e-15
        assert abs(u.global_state.amplitude(("-", "down", "saw_down")) - 0.8) < 1e-15

        # No definite result for anyone: no events, no path movement.
        assert len(alice.ledger) == 0
        assert alice.node is u.root
        assert u.clock == 2

    def test_eigenstate_stays_product(self):
        needle = Subsystem("needle", ("ready", "up", "down"))
        s = tensor(
            make_state([A], [(("+",), 1.0)]),
            make_state([needle], [(("ready",), 1.0)]),
        )
        u = create_universe(s)
        u.entangle_step(A_SPIN, needle, {"+": "up", "-": "down"})
        assert u.global_state.term_count() == 1


class TestObserve:
    def test_singlet_frequencies(self):
        u = singlet_universe()
        rng = RngStream(42)
        n = 4000
        plus = 0
        for i in range(n):
            o = u.register_observer(f"o{i}")
            if u.observe(o, A_SPIN, rng) == "+":
                plus += 1
        se = math.sqrt(0.25 / n)
        assert abs(plus / n - 0.5) < 3 * se

    def test_partially_determining_frequencies(self):
        sa = Subsystem("first", ("X", "Y"))
        sb = Subsystem("second", ("a", "b"))
        s = make_state(
            [sa, sb], [(("X", "a"), 1.0), (("X", "b"), 1.0), (("Y", "a"), 1.0)]
        )
        u = create_universe(s)
        rng = RngStream(1)
        n = 6000
        x_count = 0
        for i in range(n):
            o = u.register_observer(f"o{i}")
            if u.observe(o, label_observable(sa), rng) == "X":
                x_count += 1
        se = math.sqrt((2 / 3) * (1 / 3) / n)
        assert abs(x_count / n - 2 / 3) < 3 * se

    def test_repeat_measurement_is_certain(self):
        rng = RngStream(7)
        for i in range(50):
            u = singlet_universe()
            o = u.register_observer("alice")
            first = u.observe(o, A_SPIN, rng)
            again = u.observe(o, A_SPIN, rng)
            assert again == first
            assert u.branch_probabilities(o, A_SPIN)[first] == 1.0

    def test_global_state_untouched_by_observation(self):
        u = singlet_universe(with_bob=True)
        u.entangle_step(B_SPIN, BOB, {"+": "+", "-": "-"})
        before = u.global_state
        rng = RngStream(3)
        o = u.register_observer("alice")
        u.observe(o, A_SPIN, rng)
        u.communicate(o, BOB_RECORD, rng)
        assert u.global_state is before  # not merely equal: the same value

    def test_path_is_monotone_chain(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        rng = RngStream(11)
        nodes = [o.node]
        u.observe(o, A_SPIN, rng)
        nodes.append(o.node)
        u.observe(o, B_SPIN, rng)
        nodes.append(o.node)
        assert nodes[1].parent is nodes[0]
        assert nodes[2].parent is nodes[1]
        assert [n.depth for n in nodes] == [0, 1, 2]

    def test_event_recorded_with_times(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        u.advance_clock(30)
        u.observe(o, A_SPIN, RngStream(0), t_happened=10)
        rec = o.ledger.records[0]
        assert rec.t_determined == 30
        assert rec.proposition.t_happened == 10
        assert rec.proposition.subsystem == "A"

    def test_determinism_same_seed(self):
        def run(seed):
            u = singlet_universe()
            rng = RngStream(seed)
            out = []
            for i in range(30):
                o = u.register_observer(f"o{i}")
                out.append(u.observe(o, A_SPIN, rng))
            return out

        assert run(5) == run(5)
        assert run(5) != run(6)


class TestConditionalState:
    def test_fresh_observer_sees_global(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        assert u.conditional_state(o) == u.global_state

    def test_after_plus_branch(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        force_observe(u, o, A_SPIN, "+")
        cs = u.conditional_state(o)
        assert cs.term_count() == 1
        assert abs(abs(cs.amplitude(("+", "-"))) - 1.0) < 1e-12

    def test_partially_determined_branch_keeps_superposition(self):
        sa = Subsystem("first", ("X", "Y"))
        sb = Subsystem("second", ("a", "b"))
        s = make_state(
            [sa, sb], [(("X", "a"), 1.0), (("X", "b"), 1.0), (("Y", "a"), 1.0)]
        )
        u = create_universe(s)
        o = u.register_observer("alice")
        force_observe(u, o, label_observable(sa), "X")
        cs = u.conditional_state(o)
        assert abs(cs.amplitude(("X", "a")) - INV_SQRT2) < 1e-12
        assert abs(cs.amplitude(("X", "b")) - INV_SQRT2) < 1e-12
        probs = u.branch_probabilities(o, label_observable(sb))
        assert abs(probs["a"] - 0.5) < 1e-12 and abs(probs["b"] - 0.5) < 1e-12


class TestCommunicate:
    def test_reply_matches_askers_branch(self):
        # After the asker saw "+", the record can only answer "-".
        for seed in range(40):
            u = singlet_universe(with_bob=True)
            u.entangle_step(B_SPIN, BOB, {"+": "+", "-": "-"})
            o = u.register_observer("alice")
            rng = RngStream(seed)
            mine = u.observe(o, A_SPIN, rng)
            reply = u.communicate(o, BOB_RECORD, rng)
            assert reply == ("-" if mine == "+" else "+")

    def test_ask_before_measuring_then_agree(self):
        # Asking first: reply is 50/50, and the asker's own later measurement
        # of her particle always agrees with it.
        u0 = singlet_universe(with_bob=True)
        for seed in range(40):
            u = singlet_universe(with_bob=True)
            u.entangle_step(B_SPIN, BOB, {"+": "+", "-": "-"})
            o = u.register_observer("alice")
            probs = u.branch_probabilities(o, BOB_RECORD)
            assert abs(probs["+"] - 0.5) < 1e-12
            assert abs(probs["-"] - 0.5) < 1e-12
            assert probs["ready"] == 0.0
            rng = RngStream(seed)
            reply = u.communicate(o, BOB_RECORD, rng)
            mine = u.observe(o, A_SPIN, rng)
            assert mine == ("-" if reply == "+" else "+")
        assert u0.clock == 0

    def test_askee_still_ready(self):
        # No entangling step ran: the record subsystem answers "ready".
        u = singlet_universe(with_bob=True)
        o = u.register_observer("alice")
        assert u.communicate(o, BOB_RECORD, RngStream(0)) == "ready"


class TestForcedObservation:
    def test_force_returns_probability_and_extends(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        p = force_observe(u, o, A_SPIN, "-")
        assert abs(p - 0.5) < 1e-12
        assert o.path_selectors()[-1][1] == "-"

    def test_force_unsupported_outcome_rejected(self):
        from hangon import EmptyBranch

        u = create_universe(make_state([A], [(("+",), 1.0)]))
        o = u.register_observer("alice")
        with pytest.raises(EmptyBranch):
            force_observe(u, o, A_SPIN, "-")


class TestJointDistributions:
    def test_chain_rule_matches_born_oracle(self):
        rng = RngStream(2024)
        for trial in range(40):
            n_subs = 2 + int(rng.random() * 3)  # 2..4
            subs = []
            for i in range(n_subs):
                n_labels = 2 + int(rng.random() * 2)  # 2..3
                subs.append(Subsystem(f"s{i}", tuple(f"l{j}" for j in range(n_labels))))

            def all_keys(sets):
                if not sets:
                    return [()]
                rest = all_keys(sets[1:])
                return [(l,) + r for l in sets[0] for r in rest]

            terms = []
            for key in all_keys([s.labels for s in subs]):
                re, im = rng.random() * 2 - 1, rng.random() * 2 - 1
                terms.append((key, complex(re, im)))
            state = make_state(subs, terms)
            observables = [label_observable(s) for s in subs]
            chain = sequential_joint_distribution(state, observables)
            oracle = born_joint_distribution(state, observables)
            assert l1_distance(chain, oracle) <= 1e-10

    def test_order_independence_on_disjoint_subsystems(self):
        sa = Subsystem("first", ("X", "Y"))
        sb = Subsystem("second", ("a", "b"))
        s = make_state(
            [sa, sb], [(("X", "a"), 1.0), (("X", "b"), 1.0), (("Y", "a"), 1.0)]
        )
        oa, ob = label_observable(sa), label_observable(sb)
        ab = sequential_joint_distribution(s, [oa, ob])
        ba = sequential_joint_distribution(s, [ob, oa])
        for (x, y), p in ab.items():
            assert abs(ba[(y, x)] - p) <= 1e-12


class TestTrace:
    def test_trace_lines(self):
        u = singlet_universe()
        o = u.register_observer("alice")
        force_observe(u, o, A_SPIN, "+")
        lines = u.trace_json().splitlines()
        assert len(lines) == 1
        doc = json.loads(lines[0])
        assert doc == {
            "observer": "alice",
            "clock": 0,
            "observable": "A_spin",
            "outcome": "+",
            "probability": doc["probability"],
        }
        assert abs(doc["probability"] - 0.5) < 1e-12

    def test_entangle_steps_leave_no_trace(self):
        u = singlet_universe(with_bob=True)
        u.entangle_step(B_SPIN, BOB, {"+": "+", "-": "-"})
        assert u.trace_json() == ""
