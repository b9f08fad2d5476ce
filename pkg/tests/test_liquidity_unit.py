"""Unit tests for liquidity indicators and their comparison with lead/lag."""

import math

import numpy as np
import pandas as pd
import pytest

from tick_leadlag.liquidity import (
    TABLE_COLUMNS,
    LiquidityStats,
    compute_liquidity_stats,
    daily_average,
    decile_bins,
    indicator_ratios,
    liquidity_table,
    quadrant_counts,
)
from tick_leadlag.tickdata import InstrumentMeta

META = InstrumentMeta("AAA.PA", 0.01, 0, 20_000)


def _trades():
    return pd.DataFrame(
        {
            "ts_ms": [1000, 6000, 11000],
            "price": [10.0, 10.0, 10.0],
            "qty": [100.0, 100.0, 100.0],
            "trade_through": [False, True, False],
        }
    )


def _quotes():
    return pd.DataFrame(
        {
            "ts_ms": [0, 5500, 10500],
            "bid": [9.99, 10.00, 10.00],
            "bid_qty": [10.0, 10.0, 10.0],
            "ask": [10.01, 10.01, 10.01],
            "ask_qty": [10.0, 10.0, 10.0],
        }
    )


class TestDailyAverage:
    """Tests for the mean of per-day means."""

    def test_days_weigh_equally(self):
        assert daily_average({"d1": [1.0, 2.0, 3.0], "d2": [6.0]}) == pytest.approx(4.0)

    def test_empty_days_ignored(self):
        assert daily_average([[1.0, 2.0], [], [7.0]]) == pytest.approx(4.25)

    def test_no_values_raises(self):
        with pytest.raises(ValueError):
            daily_average({"d1": []})


class TestLiquidityStats:
    """Tests for the per-instrument indicator table."""

    def test_trade_indicators(self):
        stats = compute_liquidity_stats(_trades(), _quotes(), META)
        assert stats.mean_intertrade_s == pytest.approx(5.0)
        assert stats.trade_through_freq == pytest.approx(1 / 3)
        assert stats.turnover_per_trade == pytest.approx(1000.0)
        assert stats.n_days == 1

    def test_quote_indicators(self):
        stats = compute_liquidity_stats(_trades(), _quotes(), META)
        assert stats.spread_in_ticks == pytest.approx(4 / 3)
        assert stats.unit_spread_freq == pytest.approx(2 / 3)
        assert stats.vol_in_ticks == pytest.approx(0.25)
        assert stats.tick_over_mid_bp == pytest.approx(np.mean([10.0, 1e2 / 10.005, 1e2 / 10.005]))

    def test_days_are_averaged_not_pooled(self):
        second = _trades().assign(ts_ms=[1000, 2000, 3000])
        stats = compute_liquidity_stats({"d1": _trades(), "d2": second}, None, META)
        assert stats.mean_intertrade_s == pytest.approx((5.0 + 1.0) / 2)
        assert stats.n_days == 2

    def test_without_quotes(self):
        stats = compute_liquidity_stats(_trades(), None, META)
        assert stats.spread_in_ticks is None
        assert stats.vol_in_ticks is None
        assert stats.currency == "EUR"

    def test_table_column_order(self):
        stats = compute_liquidity_stats(_trades(), _quotes(), META)
        table = liquidity_table([stats])
        assert list(table.columns) == TABLE_COLUMNS
        assert table.loc[0, "ric"] == "AAA.PA"


class TestIndicatorRatios:
    """Tests for leader over lagger indicator ratios."""

    def test_ratio_and_undefined(self):
        a = LiquidityStats("A", 2.0, 0.1, 500.0, spread_in_ticks=1.0)
        b = LiquidityStats("B", 8.0, 0.0, 250.0, spread_in_ticks=None)
        frame = indicator_ratios({"A": a, "B": b}, [("A", "B")])
        row = frame.iloc[0]
        assert row["mean_intertrade_s"] == pytest.approx(0.25)
        assert row["turnover_per_trade"] == pytest.approx(2.0)
        assert math.isnan(row["trade_through_freq"])
        assert math.isnan(row["spread_in_ticks"])


class TestQuadrants:
    """Tests for quadrant counting around (1, 1)."""

    def test_counts(self):
        q = quadrant_counts([(2.0, 2.0), (0.5, 0.5), (2.0, 0.5), (1.0, 3.0)])
        assert q.n_pp == pytest.approx(0.25)
        assert q.n_mm == pytest.approx(0.25)
        assert q.n_pm == pytest.approx(0.25)
        assert q.n_mp == 0.0
        assert q.n_boundary == 1
        assert q.concordant == pytest.approx(0.5)
        assert q.concordant + q.n_pm + q.n_mp + q.boundary_fraction == pytest.approx(1.0)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            quadrant_counts([(1.2, -0.5)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            quadrant_counts([])

    def test_symmetric_cloud_is_half_concordant(self):
        rng = np.random.default_rng(17)
        points = np.exp(rng.normal(size=(4000, 2)))
        q = quadrant_counts(map(tuple, points))
        assert q.concordant == pytest.approx(0.5, abs=0.05)
        assert q.n_boundary == 0

    def test_boundary_points_in_no_quadrant(self):
        q = quadrant_counts([(1.0, 1.0), (1.0, 0.5), (2.0, 1.0), (0.5, 0.5)])
        assert q.n_boundary == 3
        assert q.n_mm == pytest.approx(0.25)
        assert q.n_pp == q.n_pm == q.n_mp == 0.0
        assert q.boundary_fraction == pytest.approx(0.75)


class TestDecileBins:
    """Tests for binned means by ratio quantile."""

    def test_bins(self):
        points = [(float(r), float(r)) for r in range(20, 0, -1)]
        frame = decile_bins(points)
        assert len(frame) == 10
        assert frame["n"].sum() == 20
        first = frame.iloc[0]
        assert first["mean"] == pytest.approx(1.5)
        assert first["ci95"] == pytest.approx(1.96 * 0.5 / math.sqrt(2))
        assert first["ratio_lo"] == pytest.approx(1.0)
        assert frame.iloc[-1]["ratio_hi"] == pytest.approx(20.0)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            decile_bins([(1.0, 0.1)] * 5)

    def test_ties_keep_input_order(self):
        points = [(1.0, float(v)) for v in range(23)]
        frame = decile_bins(points)
        assert frame["n"].tolist() == [3, 3, 3] + [2] * 7
        assert frame.iloc[0]["mean"] == pytest.approx(1.0)
        assert frame.iloc[3]["mean"] == pytest.approx(9.5)
        assert frame.iloc[-1]["mean"] == pytest.approx(21.5)
        assert (frame["ratio_lo"] == 1.0).all()
