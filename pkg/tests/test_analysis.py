import math

import pytest
from hypothesis import given, settings, strategies as st

from bachet_lottery import (
    GameSpec,
    check_corridor,
    check_drop_down,
    check_envelope,
    check_km_bound,
    check_monotonicity,
    check_no_long_winning,
    check_plus_minus,
    compute_conditions,
    deviation_series,
    drop_constants,
    finite_set,
    solve,
    truncated_simplex,
)
from bachet_lottery.errors import InvalidEtaNuError, TauOutOfRangeError

HALF = finite_set([[0.5, 0.5]])


@pytest.fixture(scope="module")
def half_table():
    return solve(GameSpec(20, 2, HALF))


@pytest.fixture(scope="module")
def half_series(half_table):
    return deviation_series(half_table)


@pytest.fixture(scope="module")
def trunc_table():
    return solve(GameSpec(10_000, 2, truncated_simplex([0.05, 0.05])))


@pytest.fixture(scope="module")
def trunc_series(trunc_table):
    return deviation_series(trunc_table)


@pytest.fixture(scope="module")
def trunc_constants():
    cond = compute_conditions(truncated_simplex([0.05, 0.05]))
    return drop_constants(cond.eta, cond.nu)


class TestDeviationSeries:
    def test_delta_values(self, half_series):
        expect = [0.5, 0.0, 0.25, 0.125, 0.0625, 0.09375]
        for k, want in enumerate(expect, start=1):
            assert half_series.delta[k - 1] == pytest.approx(want, abs=1e-15)

    def test_window_maxima(self, half_series):
        assert half_series.dbar(2) == 0.5
        assert half_series.dbar(6) == 0.09375

    def test_boundary_window_gives_half(self, half_series):
        # window of k=1 reaches the boundary entries where Delta = 1/2
        assert half_series.dbar(1) == 0.5
        assert half_series.dbar(0) == 0.5
        assert half_series.dbar(-3) == 0.5

    def test_plus_times_minus_is_zero(self, trunc_series):
        assert (trunc_series.delta_plus * trunc_series.delta_minus == 0.0).all()

    def test_delta_is_max_of_signed_parts(self, trunc_series):
        import numpy as np

        assert np.allclose(
            trunc_series.delta,
            np.maximum(trunc_series.delta_plus, trunc_series.delta_minus),
            atol=0,
        )

    def test_bounded_by_half(self, trunc_series):
        assert trunc_series.delta.max() <= 0.5


class TestDropConstants:
    def test_hand_value(self):
        dc = drop_constants(0.5, 0.5, tau=0.5)
        assert dc.delta == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_optimized_tau(self):
        dc = drop_constants(0.5, 0.5)
        assert dc.tau == pytest.approx(0.5, abs=1e-8)
        assert dc.delta == pytest.approx(2.0 / 3.0, abs=1e-9)

    def test_invalid_eta(self):
        with pytest.raises(InvalidEtaNuError):
            drop_constants(1.0, 0.5)
        with pytest.raises(InvalidEtaNuError):
            drop_constants(0.5, 0.0)

    def test_tau_out_of_range(self):
        upper = (0.5 / 0.5) * (2 - 1.0) / (2 - 0.5)
        with pytest.raises(TauOutOfRangeError):
            drop_constants(0.5, 0.5, tau=upper)
        with pytest.raises(TauOutOfRangeError):
            drop_constants(0.5, 0.5, tau=0.0)

    @given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
    @settings(max_examples=50, deadline=None)
    def test_delta_always_below_one(self, eta, nu):
        dc = drop_constants(eta, nu)
        assert 0.0 < dc.delta < 1.0
        assert 0.0 < dc.tau < (nu / (1 - nu)) * (2 - 2 * eta) / (2 - eta)


class TestMonotonicity:
    def test_hand_examples(self, half_series):
        rep = check_monotonicity(half_series)
        assert rep.ok
        assert half_series.delta_at(4) <= half_series.dbar(3)
        assert half_series.delta_at(2) <= half_series.dbar(1)

    def test_large_table(self, trunc_series):
        rep = check_monotonicity(trunc_series)
        assert rep.ok
        assert isinstance(rep.extra["delta_bar_strictly_decreasing_per_step"], bool)

    def test_bar_sequence_sorted_descending(self, trunc_series):
        bars = trunc_series.delta_bar
        assert all(bars[i + 1] <= bars[i] + 1e-12 for i in range(len(bars) - 1))


class TestNoLongWinning:
    def test_classical_pattern(self):
        K = finite_set([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        vt = solve(GameSpec(50, 3, K))
        rep = check_no_long_winning(vt)
        assert rep.ok
        assert rep.checked_k  # runs of three wins do occur

    def test_vacuous_when_no_window_qualifies(self, half_table):
        # with p2 = 0.5 the m=2 window {p3, p2} never satisfies p_j > 1/2 twice in a row early on
        rep = check_no_long_winning(half_table)
        assert rep.ok

    def test_large_table(self, trunc_table):
        assert check_no_long_winning(trunc_table).ok


class TestKmBound:
    def test_grid_of_reports(self, trunc_table, trunc_series):
        reports = check_km_bound(trunc_table, trunc_series)
        assert len(reports) == 9
        assert all(rep.ok for rep in reports)

    def test_rejects_bad_kappa(self, half_table, half_series):
        with pytest.raises(ValueError):
            check_km_bound(half_table, half_series, kappa_grid=[1.0])


class TestCorridor:
    def test_hand_example(self, half_table, half_series):
        # k = 3: p4 = 0.375 < 1/2, window {p3, p2} = {0.75, 0.5}
        ceil = 0.5 + half_series.delta_at(4)
        lhs = max(half_table.p(3) - ceil, half_table.p(2) - ceil)
        rhs = max(ceil - half_table.p(3), ceil - half_table.p(2))
        assert lhs == pytest.approx(0.125, abs=1e-15)
        assert rhs == pytest.approx(0.125, abs=1e-15)
        rep = check_corridor(half_table, half_series, nu=0.5)
        assert rep.ok and 3 in rep.checked_k

    def test_winning_positions_skipped(self, half_table, half_series):
        rep = check_corridor(half_table, half_series, nu=0.5)
        assert 2 not in rep.checked_k  # p3 = 0.75 >= 1/2

    def test_full_scan(self, trunc_table, trunc_series):
        nu = compute_conditions(truncated_simplex([0.05, 0.05])).nu
        assert check_corridor(trunc_table, trunc_series, nu).ok


class TestDropDown:
    def test_three_reports_clean(self, trunc_table, trunc_series, trunc_constants):
        reports = check_drop_down(trunc_table, trunc_series, trunc_constants)
        assert [r.lemma_id for r in reports] == [
            "drop_down_losing",
            "drop_down_2m",
            "drop_down_3m",
        ]
        assert all(r.ok for r in reports)

    def test_hand_block_drop(self):
        vt = solve(GameSpec(8, 2, HALF))
        ds = deviation_series(vt)
        dc = drop_constants(0.5, 0.5, tau=0.5)
        assert ds.dbar(7) <= dc.delta * ds.dbar(1) + 1e-15  # 0.09375 <= 1/3
        reports = check_drop_down(vt, ds, dc)
        assert all(r.ok for r in reports)

    def test_small_k_excluded_from_block_form(self, half_table, half_series):
        dc = drop_constants(0.5, 0.5, tau=0.5)
        block = check_drop_down(half_table, half_series, dc)[2]
        assert min(block.checked_k) == 3 * half_table.m + 1


class TestPlusMinus:
    def test_hand_example(self, half_series):
        # k = 2: DeltaPlus_3 = 0.25, DeltaBarMinus_2 = max(0, 0.5) = 0.5
        assert half_series.delta_plus[2] == 0.25
        assert half_series.dbar_minus(2) == 0.5
        assert check_plus_minus(half_series).ok

    def test_full_scan(self, trunc_series):
        assert check_plus_minus(trunc_series).ok


class TestEnvelope:
    def test_instance_n2(self, half_series):
        dc = drop_constants(0.5, 0.5, tau=0.5)
        rep = check_envelope(half_series, dc, m=2)
        assert rep.ok
        assert half_series.dbar(13) <= 0.5 * (2.0 / 3.0) ** 2 + 1e-12

    def test_convergence_threshold(self, trunc_series, trunc_constants):
        rep = check_envelope(trunc_series, trunc_constants, m=2)
        assert rep.ok
        n_star = 1 + 3 * 2 * math.ceil(math.log(2e-3) / math.log(trunc_constants.delta))
        assert n_star <= trunc_series.n
        assert all(
            trunc_series.delta_at(k) < 1e-3 for k in range(n_star, trunc_series.n + 1)
        )
