from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffreach import (
    MAX_TOKENS,
    NetDefinitionError,
    NotFirableError,
    PetriNet,
    TokenOverflowError,
    Transition,
)

T1, T2, T3 = 0, 1, 2


class TestFirability:
    def test_guarded_transition_enabled(self, n1):
        assert n1.is_firable((1, 0), T2)

    def test_guarded_transition_disabled(self, n1):
        assert not n1.is_firable((0, 1), T2)

    def test_empty_guard_always_enabled(self, n1):
        assert n1.is_firable((0, 0), T1)

    def test_bad_index_raises(self, n1):
        with pytest.raises(IndexError):
            n1.is_firable((0, 0), 3)


class TestFire:
    @pytest.mark.parametrize(
        "marking, t, expected",
        [((0, 0), T1, (1, 0)), ((1, 0), T2, (1, 1)), ((1, 1), T3, (0, 1))],
    )
    def test_single_steps(self, n1, marking, t, expected):
        assert n1.fire(marking, t) == expected

    def test_not_firable_raises(self, n1):
        with pytest.raises(NotFirableError) as exc:
            n1.fire((0, 0), T2)
        assert exc.value.transition == T2

    def test_overflow_raises(self, n1):
        with pytest.raises(TokenOverflowError) as exc:
            n1.fire((MAX_TOKENS, 0), T1)
        assert exc.value.transition == T1

    def test_effect_is_exact(self, n1):
        for t in range(n1.num_transitions):
            m = (3, 3)
            if n1.is_firable(m, t):
                result = n1.fire(m, t)
                assert tuple(r - v for r, v in zip(result, m)) == n1.effect(t)


class TestReplay:
    def test_three_step_path(self, n1):
        final, witness = n1.replay((0, 0), [T1, T2, T3])
        assert final == (0, 1)
        assert witness.total_weight == 3
        assert witness.parikh == (1, 1, 1)

    def test_empty_sequence(self, n1):
        final, witness = n1.replay((0, 0), [])
        assert final == (0, 0)
        assert witness.total_weight == 0

    def test_five_step_path(self, n1):
        final, witness = n1.replay((0, 0), [T1, T1, T2, T3, T3])
        assert final == (0, 1)
        assert witness.total_weight == 5
        assert witness.parikh == (2, 1, 2)

    def test_failure_reports_step(self, n1):
        with pytest.raises(NotFirableError) as exc:
            n1.replay((0, 0), [T1, T3, T3])
        assert exc.value.step == 2

    def test_concatenation_law(self, n1):
        mid, w1 = n1.replay((0, 0), [T1, T1])
        final, w2 = n1.replay(mid, [T2, T3])
        whole_final, whole = n1.replay((0, 0), [T1, T1, T2, T3])
        assert whole_final == final
        assert whole.total_weight == w1.total_weight + w2.total_weight


class TestSuccessors:
    def test_lone_producer(self, n1):
        assert n1.successors((0, 0)) == [(T1, (1, 0))]

    def test_three_way_branching(self, n1):
        assert n1.successors((1, 0)) == [(T1, (2, 0)), (T2, (1, 1)), (T3, (0, 0))]

    def test_matches_exhaustive_guard_check(self, n1):
        expected = [
            (t, n1.fire((0, 1), t))
            for t in range(n1.num_transitions)
            if all(h >= g for h, g in zip((0, 1), n1.transitions[t].guard))
        ]
        assert n1.successors((0, 1)) == expected == [(T1, (1, 1))]


class TestValidation:
    def test_duplicate_place_ids(self):
        with pytest.raises(NetDefinitionError):
            PetriNet(["a", "a"], [])

    def test_duplicate_transition_ids(self):
        t = Transition("t", (0,), (0,))
        with pytest.raises(NetDefinitionError):
            PetriNet(["a"], [t, t])

    def test_vector_length_mismatch(self):
        with pytest.raises(NetDefinitionError):
            PetriNet(["a", "b"], [Transition("t", (0,), (0,))])

    def test_nonpositive_weight(self):
        with pytest.raises(NetDefinitionError):
            Transition.from_maps("t", ["a"], weight=0)

    def test_negative_guard_entry(self):
        with pytest.raises(NetDefinitionError):
            PetriNet(["a"], [Transition("t", (-1,), (0,))])

    def test_weight_default_is_one(self):
        t = Transition.from_maps("t", ["a"], produce={"a": 1})
        assert t.weight == Fraction(1)

    def test_from_maps_rejects_unknown_place(self):
        with pytest.raises(NetDefinitionError):
            Transition.from_maps("t", ["a"], consume={"b": 1})


# A tiny strategy for random sequences over the three-transition net.
@st.composite
def markings_and_sequences(draw):
    m0 = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
    seq = draw(st.lists(st.integers(0, 2), max_size=8))
    return m0, seq


@given(markings_and_sequences())
@settings(max_examples=200, deadline=None)
def test_replay_weight_equals_length_on_unit_weights(case):
    net = PetriNet(
        ["p1", "p2"],
        [
            Transition.from_maps("t1", ["p1", "p2"], produce={"p1": 1}),
            Transition.from_maps("t2", ["p1", "p2"], consume={"p1": 1}, produce={"p1": 1, "p2": 1}),
            Transition.from_maps("t3", ["p1", "p2"], consume={"p1": 1}),
        ],
    )
    m0, seq = case
    try:
        _, witness = net.replay(m0, seq)
    except NotFirableError:
        return
    assert witness.total_weight == len(seq)
    assert sum(witness.parikh) == len(seq)
    for t in range(net.num_transitions):
        assert witness.parikh[t] == seq.count(t)
