"""Liquidity indicators and their relation to lead/lag.

Every statistic is a daily average: per-day means first, then the unweighted
mean over days.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from tick_leadlag.tickdata import InstrumentMeta, build_midquote_series

logger = logging.getLogger(__name__)

Z_95 = 1.96
UNIT_SPREAD_TOL = 1e-9

TABLE_COLUMNS = [
    "ric",
    "mean_intertrade_s",
    "tick_over_mid_bp",
    "spread_in_ticks",
    "unit_spread_freq",
    "trade_through_freq",
    "vol_in_ticks",
    "turnover_per_trade",
    "currency",
]

# indicators compared across pairs; unit-spread frequency duplicates the spread
RATIO_INDICATORS = [
    "mean_intertrade_s",
    "tick_over_mid_bp",
    "spread_in_ticks",
    "trade_through_freq",
    "vol_in_ticks",
    "turnover_per_trade",
]


def daily_average(
    values_by_day: Mapping[str, Sequence[float]] | Iterable[Sequence[float]],
) -> float:
    """Unweighted mean of per-day means; days without values are ignored.

    Raises:
        ValueError: No day carries a value.
    """
    days = values_by_day.values() if isinstance(values_by_day, Mapping) else values_by_day
    arrays = (np.asarray(d, dtype=np.float64) for d in days)
    means = [float(np.mean(v)) for v in arrays if v.size]
    if not means:
        raise ValueError("daily_average needs at least one day with one value")
    return float(np.mean(means))


@dataclass
class LiquidityStats:
    """Daily-averaged liquidity indicators of one instrument.

    Quote-derived fields are None when no quotes are available.
    """

    ric: str
    mean_intertrade_s: float
    trade_through_freq: float
    turnover_per_trade: float
    tick_over_mid_bp: Optional[float] = None
    spread_in_ticks: Optional[float] = None
    unit_spread_freq: Optional[float] = None
    vol_in_ticks: Optional[float] = None
    currency: str = "EUR"
    n_days: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _as_days(data) -> dict[str, pd.DataFrame]:
    if data is None:
        return {}
    if isinstance(data, pd.DataFrame):
        return {"day": data}
    return dict(data)


def compute_liquidity_stats(trades, quotes, meta: InstrumentMeta) -> LiquidityStats:
    """Table of liquidity indicators for one instrument.

    Args:
        trades: Preprocessed trades frame (aggregated, session-filtered) or a
            mapping day -> frame. A `mid`/`spread` column is used when present.
        quotes: Quotes frame, mapping day -> frame, or None.
        meta: Instrument metadata (tick size, currency).

    Returns:
        LiquidityStats.
    """
    trade_days = _as_days(trades)
    quote_days = _as_days(quotes)
    delta = meta.tick_size

    durations, through, turnover = {}, {}, {}
    tick_mid, spread_ticks, unit_spread, vol = {}, {}, {}, {}
    for day, df in trade_days.items():
        ts = df["ts_ms"].to_numpy(dtype=np.float64)
        durations[day] = np.diff(ts) / 1000.0
        through[day] = df["trade_through"].to_numpy(dtype=np.float64)
        turnover[day] = (df["price"] * df["qty"]).to_numpy(dtype=np.float64)

        if "mid" not in df and day in quote_days and quote_days[day] is not None:
            df, _ = build_midquote_series(quote_days[day], df)
        if "mid" in df:
            mid = df["mid"].to_numpy(dtype=np.float64)
            spread = df["spread"].to_numpy(dtype=np.float64)
            tick_mid[day] = delta / mid * 1e4
            spread_ticks[day] = spread / delta
            unit_spread[day] = (np.abs(spread - delta) <= UNIT_SPREAD_TOL * delta).astype(float)
            # consecutive-trade midquote variations, zeros included
            vol[day] = np.abs(np.diff(mid)) / delta

    def _avg(values: dict) -> Optional[float]:
        try:
            return daily_average(values)
        except ValueError:
            return None

    stats = LiquidityStats(
        ric=meta.ric,
        mean_intertrade_s=_avg(durations) if durations else math.nan,
        trade_through_freq=_avg(through) if through else math.nan,
        turnover_per_trade=_avg(turnover) if turnover else math.nan,
        tick_over_mid_bp=_avg(tick_mid),
        spread_in_ticks=_avg(spread_ticks),
        unit_spread_freq=_avg(unit_spread),
        vol_in_ticks=_avg(vol),
        currency=meta.currency,
        n_days=len(trade_days),
    )
    if stats.spread_in_ticks is None:
        logger.info("%s: no quotes, spread indicators left empty", meta.ric)
    return stats


def liquidity_table(stats: Iterable[LiquidityStats]) -> pd.DataFrame:
    """Summary frame, one row per instrument, in the published column order."""
    rows = [s.to_dict() for s in stats]
    return pd.DataFrame(rows, columns=TABLE_COLUMNS + ["n_days"])[TABLE_COLUMNS]


def indicator_ratios(
    stats_by_ric: Mapping[str, LiquidityStats], pairs: Iterable[tuple[str, str]]
) -> pd.DataFrame:
    """I_X / I_Y for each (X, Y) pair and each compared indicator (NaN if undefined)."""
    rows = []
    for x, y in pairs:
        sx, sy = stats_by_ric[x], stats_by_ric[y]
        row = {"leader": x, "lagger": y}
        for name in RATIO_INDICATORS:
            vx, vy = getattr(sx, name), getattr(sy, name)
            row[name] = vx / vy if vx is not None and vy not in (None, 0) else math.nan
        rows.append(row)
    return pd.DataFrame(rows, columns=["leader", "lagger"] + RATIO_INDICATORS)


@dataclass
class QuadrantCounts:
    """Fractions of points per quadrant around (LLR, ratio) = (1, 1).

    The first sign refers to LLR - 1, the second to ratio - 1. Fractions are
    relative to all points, so they sum to 1 - boundary_fraction.
    """

    n_pp: float
    n_mm: float
    n_pm: float
    n_mp: float
    n_boundary: int
    n_total: int

    @property
    def boundary_fraction(self) -> float:
        return self.n_boundary / self.n_total

    @property
    def concordant(self) -> float:
        return self.n_pp + self.n_mm


def quadrant_counts(pairs: Iterable[tuple[float, float]]) -> QuadrantCounts:
    """Share of (LLR, indicator ratio) points in each quadrant.

    Raises:
        ValueError: Empty input or non-positive values.
    """
    arr = np.asarray(list(pairs), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("quadrant_counts needs at least one point")
    arr = arr.reshape(-1, 2)
    if np.any(arr <= 0):
        raise ValueError("LLR and ratio must be > 0")
    a = np.sign(arr[:, 0] - 1.0)
    b = np.sign(arr[:, 1] - 1.0)
    n = arr.shape[0]
    boundary = (a == 0) | (b == 0)
    if boundary.any():
        logger.info("%d point(s) on a quadrant boundary excluded", int(boundary.sum()))
    return QuadrantCounts(
        n_pp=float(np.sum((a > 0) & (b > 0))) / n,
        n_mm=float(np.sum((a < 0) & (b < 0))) / n,
        n_pm=float(np.sum((a > 0) & (b < 0))) / n,
        n_mp=float(np.sum((a < 0) & (b > 0))) / n,
        n_boundary=int(boundary.sum()),
        n_total=n,
    )


def decile_bins(pairs: Iterable[tuple[float, float]], n_bins: int = 10) -> pd.DataFrame:
    """Mean value and 95% CI per quantile bin of the ratio.

    Points are ranked by ratio (stable in input order for ties) and split into
    n_bins consecutive chunks of near-equal size. Bin edges are reported as
    linearly interpolated empirical quantiles.

    Args:
        pairs: (indicator ratio, maximum correlation) points.
        n_bins: Number of bins.

    Returns:
        DataFrame with bin, n, ratio_lo, ratio_hi, mean, ci95.

    Raises:
        ValueError: Fewer points than bins.
    """
    arr = np.asarray(list(pairs), dtype=np.float64).reshape(-1, 2)
    if arr.shape[0] < n_bins:
        raise ValueError(f"decile_bins needs at least {n_bins} points, got {arr.shape[0]}")
    order = np.argsort(arr[:, 0], kind="stable")
    edges = np.quantile(arr[:, 0], np.linspace(0.0, 1.0, n_bins + 1))
    rows = []
    for k, idx in enumerate(np.array_split(order, n_bins)):
        values = arr[idx, 1]
        rows.append(
            {
                "bin": k,
                "n": int(idx.size),
                "ratio_lo": float(edges[k]),
                "ratio_hi": float(edges[k + 1]),
                "mean": float(values.mean()),
                "ci95": float(Z_95 * values.std() / math.sqrt(values.size)),
            }
        )
    return pd.DataFrame(rows)
