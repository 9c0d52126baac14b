import random

import pytest
from hypothesis import given, settings, strategies as st

from bachet_lottery import (
    GameSpec,
    TIE_HIGHEST,
    TIE_LOWEST,
    TIE_RANDOM,
    best_response,
    expected_win_prob,
    finite_set,
    solve,
    validate_lottery,
)
from bachet_lottery.errors import EmptyCandidateSetError

HALF = finite_set([[0.5, 0.5]])


class TestExpectedWinProb:
    def test_all_moves_lose(self):
        assert expected_win_prob(validate_lottery((0.5, 0.5)), (1.0, 1.0)) == 0.0

    def test_mixed_tail(self):
        assert expected_win_prob(validate_lottery((0.5, 0.5)), (0.0, 1.0)) == 0.5

    def test_skewed(self):
        assert expected_win_prob(validate_lottery((0.9, 0.1)), (0.0, 1.0)) == pytest.approx(
            0.9, abs=1e-15
        )


class TestBestResponse:
    CANDS = [validate_lottery((0.9, 0.1)), validate_lottery((0.1, 0.9))]

    def test_prefers_low_continuation(self):
        value, argmax, ties = best_response(self.CANDS, (0.0, 1.0))
        assert value == pytest.approx(0.9, abs=1e-15)
        assert argmax == 0 and ties == (0,)

    def test_prefers_other_side(self):
        value, argmax, _ = best_response(self.CANDS, (0.9, 0.0))
        assert value == pytest.approx(0.91, abs=1e-15)
        assert argmax == 1

    def test_singleton(self):
        single = [validate_lottery((0.5, 0.5))]
        value, argmax, ties = best_response(single, (0.3, 0.8))
        assert value == expected_win_prob(single[0], (0.3, 0.8))
        assert (argmax, ties) == (0, (0,))

    def test_empty_candidates(self):
        with pytest.raises(EmptyCandidateSetError):
            best_response([], (0.0, 1.0))

    @given(
        st.integers(0, 1),
        st.floats(0.0, 1.0),
        st.floats(0.0, 1.0),
        st.floats(0.0, 0.5),
    )
    def test_monotone_tail_sensitivity(self, pos, t0, t1, bump):
        # raising any continuation value can only hurt the mover
        lo, _, _ = best_response(self.CANDS, (t0, t1))
        raised = [t0, t1]
        raised[pos] = min(1.0, raised[pos] + bump)
        hi, _, _ = best_response(self.CANDS, tuple(raised))
        assert hi <= lo + 1e-12


class TestSolve:
    def test_hand_recursion_golden(self):
        vt = solve(GameSpec(6, 2, HALF))
        expect = [0.0, 0.5, 0.75, 0.375, 0.4375, 0.59375]
        for k, want in enumerate(expect, start=1):
            assert vt.p(k) == pytest.approx(want, abs=1e-15)

    def test_boundary_convention(self):
        vt = solve(GameSpec(4, 2, HALF))
        assert vt.p(0) == 1.0 and vt.p(-1) == 1.0
        assert vt.p(1) == 0.0

    def test_classical_pattern(self):
        K = finite_set([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        vt = solve(GameSpec(9, 3, K))
        for k in range(1, 10):
            assert vt.p(k) == (0.0 if k % 4 == 1 else 1.0)

    def test_n1_any_set(self):
        for K in (HALF, finite_set([[0.9, 0.1], [0.1, 0.9]])):
            assert solve(GameSpec(1, 2, K)).p(1) == 0.0

    def test_values_in_unit_interval(self):
        vt = solve(GameSpec(500, 2, finite_set([[0.7, 0.3], [0.2, 0.8]])))
        assert all(0.0 <= vt.p(k) <= 1.0 for k in range(1, 501))

    def test_consistency_with_best_response(self):
        vt = solve(GameSpec(50, 3, finite_set([[0.5, 0.3, 0.2], [0.1, 0.2, 0.7]])))
        for k in range(1, 51):
            tail = tuple(vt.p(k - i) for i in range(1, 4))
            value, _, ties = best_response(vt.candidates, tail)
            assert vt.p(k) == pytest.approx(value, abs=1e-12)
            assert vt.tie_sets[k - 1] == ties

    def test_tie_rule_value_invariance(self):
        K = finite_set([[0.5, 0.5], [0.25, 0.75], [0.75, 0.25]])
        spec = GameSpec(60, 2, K)
        base = solve(spec, TIE_LOWEST)
        for rule, seed in ((TIE_HIGHEST, 0), (TIE_RANDOM, 7), (TIE_RANDOM, 8)):
            other = solve(spec, rule, seed=seed)
            assert all(
                abs(base.p(k) - other.p(k)) <= 1e-12 for k in range(1, 61)
            )

    def test_seeded_random_is_reproducible(self):
        K = finite_set([[0.5, 0.5], [0.5, 0.5]])
        spec = GameSpec(30, 2, K)
        a = solve(spec, TIE_RANDOM, seed=3)
        b = solve(spec, TIE_RANDOM, seed=3)
        assert (a.argmax_index == b.argmax_index).all()

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=2), min_size=1, max_size=4))
    def test_random_sets_stay_bounded(self, raw):
        K = finite_set([[w / sum(v) for w in v] for v in raw])
        vt = solve(GameSpec(40, 2, K))
        assert all(-1e-12 <= vt.p(k) <= 1.0 + 1e-12 for k in range(1, 41))

    def test_policy_and_tie_sets_exposed(self):
        vt = solve(GameSpec(5, 2, HALF))
        assert vt.policy(3).probs == (0.5, 0.5)
        assert vt.tie_sets[0] == (0,)
        vals = vt.values()
        assert vals[-1] == 1.0 and vals[1] == 0.0 and len(vals) == 7
