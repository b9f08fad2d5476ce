"""Unit tests for simulation generators and the expected-covariance oracle."""

import math

import numpy as np
import pytest

from tick_leadlag.guardrails import OracleGuardError
from tick_leadlag.hycorr import (
    LagGrid,
    cross_correlation_curve,
    extract_summary,
    hy_correlation,
    hy_covariance,
    llr,
)
from tick_leadlag.simkit import (
    SimConfig,
    _closed_equal,
    _closed_unequal,
    expectation_brute_force,
    g_h,
    generate_lagged_pair,
    generate_poisson_pair,
    generate_surrogate,
    oracle_expected_cov,
    oracle_table,
    poisson_grid,
    simulate_estimators,
    synthetic_days,
)


class TestGenerators:
    """Tests for synthetic series generators."""

    def test_poisson_grid_endpoints(self):
        grid = poisson_grid(np.random.default_rng(0), 0.5, 100.0)
        assert grid[0] == 0.0
        assert grid[-1] == 100.0
        assert np.all(np.diff(grid) > 0)

    def test_deterministic_per_seed(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.2, T=600.0, seed=42)
        a = generate_poisson_pair(cfg, rep=3)
        b = generate_poisson_pair(cfg, rep=3)
        np.testing.assert_array_equal(a[0].mid, b[0].mid)
        np.testing.assert_array_equal(a[1].ts, b[1].ts)

    def test_reps_are_independent_streams(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.2, T=600.0, seed=42)
        a, _ = generate_poisson_pair(cfg, rep=0)
        b, _ = generate_poisson_pair(cfg, rep=1)
        assert len(a) != len(b) or not np.array_equal(a.ts, b.ts)

    def test_full_correlation_same_grid(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, rho=1.0, T=600.0, seed=1)
        x, y = generate_poisson_pair(cfg, same_grid=True)
        np.testing.assert_allclose(x.increments, y.increments, atol=1e-12)

    def test_increments_sum_to_path_change(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.2, T=600.0, seed=5)
        x, _ = generate_poisson_pair(cfg)
        assert x.increments.sum() == pytest.approx(x.mid[-1] - x.mid[0], abs=1e-9)

    def test_independent_legs_average_to_zero(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, rho=0.0, T=3600.0, seed=7)
        values = [hy_correlation(*generate_poisson_pair(cfg, rep), 0.0) for rep in range(64)]
        stderr = np.std(values, ddof=1) / math.sqrt(len(values))
        assert abs(np.mean(values)) <= 3 * stderr

    def test_lagged_pair_spread(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, T=600.0, seed=2)
        x, y = generate_lagged_pair(cfg, 1.0, spread=0.01)
        np.testing.assert_allclose(y.ask - y.bid, 0.01)
        assert x.has_quotes

    def test_lagged_pair_rejects_negative_lag(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, T=600.0, seed=2)
        with pytest.raises(ValueError):
            generate_lagged_pair(cfg, -1.0)

    def test_surrogate_keeps_timestamps(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.3, T=600.0, seed=3)
        real_x, real_y = generate_poisson_pair(cfg)
        sx, sy = generate_surrogate(real_x, real_y, 0.5, mesh=1.0, seed=1)
        np.testing.assert_array_equal(sx.ts, real_x.ts)
        np.testing.assert_array_equal(sy.ts, real_y.ts)
        assert sx.mid[0] == real_x.mid[0]

    def test_surrogate_of_itself_is_fully_correlated(self):
        cfg = SimConfig(lambda1=0.2, lambda2=0.2, T=3600.0, seed=3)
        real, _ = generate_poisson_pair(cfg)
        sx, sy = generate_surrogate(real, real, 1.0, mesh=1.0, seed=2)
        assert hy_correlation(sx, sy, 0.0) == pytest.approx(1.0, abs=1e-9)

    def test_synthetic_days_keys(self):
        cfg = SimConfig(lambda1=0.5, lambda2=0.5, T=60.0, seed=2)
        xs, ys = synthetic_days(cfg, 3)
        assert sorted(xs) == ["day0000", "day0001", "day0002"]
        assert sorted(ys) == sorted(xs)


class TestGH:
    """Tests for the binomial partial sums g_h."""

    @pytest.mark.parametrize("n", [1, 2, 7, 40])
    def test_full_sum(self, n):
        assert g_h(n, n, 0.3) == pytest.approx(1.0 / n)

    def test_h_zero(self):
        for i in range(6):
            assert g_h(5, i, 0.0) == pytest.approx(1.0 / 5)

    def test_single_term(self):
        assert g_h(1, 0, 0.25) == pytest.approx(0.75)

    def test_matches_direct_sum(self):
        n, h = 6, 0.4
        for i in range(n + 1):
            direct = math.factorial(n - 1) * sum(
                h**k * (1 - h) ** (n - k) / (math.factorial(k) * math.factorial(n - k))
                for k in range(i + 1)
            )
            assert g_h(n, i, h) == pytest.approx(direct)

    @pytest.mark.parametrize("args", [(0, 0, 0.1), (3, 4, 0.1), (3, 1, 1.0), (3, 1, -0.1)])
    def test_domain_errors(self, args):
        with pytest.raises(ValueError):
            g_h(*args)


class TestOracle:
    """Tests for the closed-form and series oracles."""

    @pytest.mark.parametrize("l1,l2", [(0.3, 0.5), (0.5, 0.5), (1.0, 0.1)])
    def test_unbiased_at_zero(self, l1, l2):
        value = oracle_expected_cov(l1, l2, 0.8, 20.0, 0.0).expected_cov
        assert value == pytest.approx(0.8, abs=1e-9)

    def test_zero_at_horizon(self):
        assert oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 20.0).expected_cov == 0.0

    def test_symmetric_in_lag(self):
        a = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 3.0).expected_cov
        b = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, -3.0).expected_cov
        assert a == b

    def test_linear_in_rho(self):
        a = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 2.0).expected_cov
        b = oracle_expected_cov(0.3, 0.5, 0.4, 20.0, 2.0).expected_cov
        assert a == pytest.approx(2 * b, rel=1e-12)

    def test_decreasing_in_lag(self):
        values = [oracle_expected_cov(0.3, 0.5, 0.8, 20.0, lag).expected_cov for lag in range(6)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("lam", [0.1, 0.4, 1.0])
    @pytest.mark.parametrize("lag", [0.5, 2.0, 7.0])
    def test_equal_branch_continuity(self, lam, lag):
        equal = _closed_equal(lam, 20.0, lag)
        near = _closed_unequal(lam, lam * (1 + 1e-6), 20.0, lag)
        assert abs(near - equal) <= 1e-4 * abs(equal)

    @pytest.mark.parametrize("lag", [0.0, 0.5, 1.0, 2.0, 5.0, 10.0])
    def test_series_agrees_with_closed_form(self, lag):
        closed = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, lag).expected_cov
        series = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, lag, method="series")
        assert series.expected_cov == pytest.approx(closed, abs=1e-8)
        assert series.tail_bound <= 1e-10
        assert series.truncation_n > 0

    def test_overflow_guard(self):
        with pytest.raises(OracleGuardError):
            oracle_expected_cov(10.0, 10.0, 0.8, 100.0, 1.0)

    def test_invalid_method(self):
        with pytest.raises(ValueError):
            oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 1.0, method="spline")

    def test_table_columns(self):
        table = oracle_table(0.3, 0.5, 0.8, 20.0, [0.0, 5.0], n_reps=50, seed=1)
        assert table["closed_form"].iloc[0] == pytest.approx(0.8)
        assert {"series", "mc_mean", "mc_stderr", "z_score"} <= set(table.columns)


class TestBruteForce:
    """Tests for the Monte Carlo oracle."""

    def test_lag_zero_exact(self):
        mc = expectation_brute_force(0.3, 0.5, 0.8, 20.0, 0.0, n_reps=50, seed=0)
        np.testing.assert_allclose(mc.samples, 0.8, atol=1e-12)

    def test_lag_beyond_horizon(self):
        mc = expectation_brute_force(0.3, 0.5, 0.8, 20.0, 25.0, n_reps=20, seed=0)
        assert np.all(mc.samples == 0.0)

    def test_needs_two_reps(self):
        with pytest.raises(ValueError):
            expectation_brute_force(0.3, 0.5, 0.8, 20.0, 1.0, n_reps=1)

    @pytest.mark.slow
    @pytest.mark.parametrize("lag", [0.0, 1.0, 2.0, 5.0, 10.0])
    def test_monte_carlo_matches_oracle(self, lag):
        mc = expectation_brute_force(0.3, 0.5, 0.8, 20.0, lag, n_reps=10_000, seed=123)
        closed = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, lag).expected_cov
        assert abs(mc.mean - closed) <= 3 * mc.stderr + 1e-12

    @pytest.mark.slow
    def test_hy_estimator_matches_oracle(self):
        cfg = SimConfig(lambda1=0.3, lambda2=0.5, rho=0.8, T=20.0, mesh=0.01, seed=9, sigma=1.0)
        samples = []
        for rep in range(4000):
            x, y = generate_lagged_pair(cfg, 0.0, rep=rep)
            samples.append(hy_covariance(x, y, 2.0) / 20.0)
        mean = float(np.mean(samples))
        stderr = float(np.std(samples, ddof=1) / math.sqrt(len(samples)))
        closed = oracle_expected_cov(0.3, 0.5, 0.8, 20.0, 2.0).expected_cov
        assert abs(mean - closed) <= 3 * stderr

    @pytest.mark.slow
    @pytest.mark.parametrize("lambda2", [0.2, 0.1, 0.04, 0.02])
    def test_hy_curve_matches_oracle_short_horizon(self, lambda2):
        cfg = SimConfig(
            lambda1=0.2, lambda2=lambda2, rho=0.8, T=100.0, mesh=0.01, seed=3, sigma=1.0
        )
        lags = (0.0, 5.0, 10.0, 30.0)
        samples = np.empty((2000, len(lags)))
        for rep in range(samples.shape[0]):
            x, y = generate_lagged_pair(cfg, 0.0, rep=rep)
            samples[rep] = [hy_covariance(x, y, lag) / cfg.T for lag in lags]
        means = samples.mean(axis=0)
        stderrs = samples.std(axis=0, ddof=1) / math.sqrt(samples.shape[0])
        for lag, mean, stderr in zip(lags, means, stderrs):
            closed = oracle_expected_cov(0.2, lambda2, 0.8, cfg.T, lag).expected_cov
            assert abs(mean - closed) <= 3 * stderr + 1e-12


class TestEstimatorStudy:
    """Tests for the HY versus previous-tick comparison."""

    def test_result_rows(self):
        cfg = SimConfig(lambda1=0.2, lambda2=0.2, T=1800.0, mesh=5.0, seed=1, n_reps=4)
        grid = LagGrid.from_positive([5.0, 10.0, 20.0])
        results = simulate_estimators(cfg, [0.2, 0.02], grid)
        assert [r.lambda2 for r in results] == [0.2, 0.02]
        row = results[1].summary_row()
        assert row["ratio"] == pytest.approx(10.0)
        assert results[0].hy.n_days == 4

    @pytest.mark.slow
    def test_lagged_pair_max_lag(self):
        cfg = SimConfig(lambda1=2.0, lambda2=2.0, T=3600.0, seed=17)
        xs, ys = synthetic_days(cfg, 64, lag_d=0.6)
        grid = LagGrid.from_positive([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1, 2, 3, 5])
        summary = extract_summary(cross_correlation_curve(xs, ys, grid))
        assert summary.max_lag_s == pytest.approx(0.6, abs=0.2)
        assert summary.llr > 1
        leading = [llr(cross_correlation_curve(xs[d], ys[d], grid)) > 1 for d in xs]
        assert np.mean(leading) >= 0.95

    @pytest.mark.slow
    def test_unlagged_pair_is_statistically_symmetric(self):
        cfg = SimConfig(lambda1=2.0, lambda2=2.0, T=3600.0, seed=23)
        xs, ys = synthetic_days(cfg, 30, lag_d=0.0)
        grid = LagGrid.from_positive([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1, 2, 3, 5])
        summary = extract_summary(cross_correlation_curve(xs, ys, grid))
        assert summary.n_days == 30
        assert abs(summary.llr_mean_days - 1.0) <= summary.llr_ci95
        assert abs(summary.max_lag_mean_days) <= summary.max_lag_ci95

    @pytest.mark.slow
    def test_asynchrony_biases_previous_tick_only(self):
        cfg = SimConfig(lambda1=0.2, lambda2=0.2, rho=0.8, T=30600.0, mesh=5.0, seed=1, n_reps=64)
        grid = LagGrid.from_positive([5.0, 10.0, 15.0, 20.0, 30.0, 60.0])
        results = simulate_estimators(cfg, [0.2, 0.1, 0.04, 0.02], grid)
        for r in results:
            assert r.hy.rho[grid.zero_index] == pytest.approx(0.8, abs=0.03)
            assert 0.9 <= r.hy_llr <= 1.1
        pt_rho0 = [r.previous_tick.rho[grid.zero_index] for r in results]
        pt_llr = [r.previous_tick_llr for r in results]
        assert all(a > b for a, b in zip(pt_rho0, pt_rho0[1:]))
        assert all(a < b for a, b in zip(pt_llr, pt_llr[1:]))
