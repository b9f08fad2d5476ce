"""Response of the lagger's quotes to leader midquote moves.

For every leader midquote change r at time t that passes a signed threshold,
the lagger's quote deviations at t + lag are recorded, as long as the leader
has not moved again (lag strictly below the time to its next change). Quote
states are the last quotes at or before the sampling instant. Deviations are
expressed in lagger ticks.
"""

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from tick_leadlag.tickdata import TickSeries, days_of

logger = logging.getLogger(__name__)

VARIABLES = (
    "bid_vs_self",
    "ask_vs_self",
    "bid_vs_opposite",
    "ask_vs_opposite",
    "spread_vs_self",
)
DEFAULT_THETAS = (-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6)
THRESHOLD_TOL = 1e-9


def default_response_lags(max_lag: float = 10.0, step: float = 0.1) -> np.ndarray:
    """0 to max_lag seconds in steps of `step`."""
    n = int(round(max_lag / step))
    return np.round(np.arange(n + 1) * step, 10)


@dataclass
class ResponseCurve:
    """Mean lagger deviation per lag for one variable and one threshold."""

    variable: str
    theta_halfticks: int
    lags: np.ndarray
    values: np.ndarray
    counts: np.ndarray

    @property
    def is_empty(self) -> bool:
        return int(self.counts[0]) == 0 if self.counts.size else True

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "variable": self.variable,
                "theta_halfticks": self.theta_halfticks,
                "lag_s": self.lags,
                "mean_dev_ticks": self.values,
                "n": self.counts,
            }
        )


def _leader_events(leader: TickSeries) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Change times, signed moves and time to the next change (ms)."""
    times = leader.ts[1:]
    moves = leader.increments
    gaps = np.empty(times.size)
    gaps[:-1] = np.diff(times)
    if gaps.size:
        gaps[-1] = np.inf
    return times, moves, gaps


def _day_deviations(
    leader: TickSeries,
    quotes: pd.DataFrame,
    lags_ms: np.ndarray,
    lagger_tick: float,
) -> tuple[np.ndarray, np.ndarray, dict[str, np.ndarray]]:
    """Per-event deviations (events x lags) and the censoring mask."""
    times, moves, gaps = _leader_events(leader)
    q_ts = quotes["ts_ms"].to_numpy(dtype=np.float64)
    bid = quotes["bid"].to_numpy(dtype=np.float64)
    ask = quotes["ask"].to_numpy(dtype=np.float64)

    i0 = np.searchsorted(q_ts, times, side="right") - 1
    has_state = i0 >= 0
    times, moves, gaps, i0 = times[has_state], moves[has_state], gaps[has_state], i0[has_state]

    at = times[:, None] + lags_ms[None, :]
    i1 = np.searchsorted(q_ts, at, side="right") - 1
    valid = lags_ms[None, :] < gaps[:, None]

    bid0, ask0 = bid[i0][:, None], ask[i0][:, None]
    bid1, ask1 = bid[i1], ask[i1]
    bid_dev = (bid1 - bid0) / lagger_tick
    ask_dev = (ask1 - ask0) / lagger_tick
    devs = {
        "bid_vs_self": bid_dev,
        "ask_vs_self": ask_dev,
        "bid_vs_opposite": (bid1 - ask0) / lagger_tick,
        "ask_vs_opposite": (ask1 - bid0) / lagger_tick,
        "spread_vs_self": ask_dev - bid_dev,
    }
    return moves, valid, devs


def response_curves(
    leader,
    lagger_quotes,
    *,
    leader_tick: float,
    lagger_tick: float,
    thetas: Sequence[int] = DEFAULT_THETAS,
    lags: Optional[np.ndarray] = None,
    variables: Sequence[str] = VARIABLES,
) -> list[ResponseCurve]:
    """Average lagger quote trajectories after leader moves.

    Args:
        leader: Leader tick series, or mapping day -> TickSeries.
        lagger_quotes: Lagger quotes frame (ts_ms, bid, ask), or mapping day -> frame.
        leader_tick: Leader tick size.
        lagger_tick: Lagger tick size; deviations are divided by it.
        thetas: Signed thresholds in leader half-ticks. theta > 0 selects moves
            r >= theta * tick / 2, theta < 0 selects r <= theta * tick / 2.
        lags: Lags in seconds (default 0..10 s by 0.1 s).
        variables: Subset of VARIABLES.

    Returns:
        One ResponseCurve per (variable, theta), pooling events over days.
        Thresholds without events give curves with zero counts and NaN values.
    """
    unknown = set(variables) - set(VARIABLES)
    if unknown:
        raise ValueError(f"Unknown response variables: {sorted(unknown)}")
    if any(t == 0 for t in thetas):
        raise ValueError("thresholds must be non-zero half-tick multiples")
    lags = default_response_lags() if lags is None else np.asarray(lags, dtype=np.float64)
    lags_ms = lags * 1000.0

    leader_days = days_of(leader)
    quote_days = {"day": lagger_quotes} if isinstance(lagger_quotes, pd.DataFrame) else dict(
        lagger_quotes
    )

    sums = {(v, th): np.zeros(lags.size) for v in variables for th in thetas}
    counts = {th: np.zeros(lags.size, dtype=np.int64) for th in thetas}

    for day in sorted(set(leader_days) & set(quote_days)):
        series, quotes = leader_days[day], quote_days[day]
        if series.n_increments == 0 or quotes is None or quotes.empty:
            continue
        moves, valid, devs = _day_deviations(series, quotes, lags_ms, lagger_tick)
        for th in thetas:
            cut = th * leader_tick / 2
            tol = THRESHOLD_TOL * leader_tick
            selected = moves >= cut - tol if th > 0 else moves <= cut + tol
            mask = valid & selected[:, None]
            counts[th] += mask.sum(axis=0)
            for v in variables:
                sums[(v, th)] += np.where(mask, devs[v], 0.0).sum(axis=0)

    curves = []
    for th in thetas:
        n = counts[th]
        if n[0] == 0:
            logger.info("No leader move passes theta = %d half-ticks", th)
        for v in variables:
            with np.errstate(invalid="ignore", divide="ignore"):
                values = np.where(n > 0, sums[(v, th)] / np.maximum(n, 1), np.nan)
            curves.append(ResponseCurve(v, int(th), lags.copy(), values, n.copy()))
    return curves


def response_frame(curves: Sequence[ResponseCurve]) -> pd.DataFrame:
    """Long frame: variable, theta_halfticks, lag_s, mean_dev_ticks, n."""
    if not curves:
        return pd.DataFrame(
            columns=["variable", "theta_halfticks", "lag_s", "mean_dev_ticks", "n"]
        )
    return pd.concat([c.to_frame() for c in curves], ignore_index=True)


def quotes_by_day(days: Mapping[str, object]) -> dict[str, pd.DataFrame]:
    """Quotes frames of a mapping day -> DayData (days without quotes dropped)."""
    out = {}
    for day, data in days.items():
        quotes = getattr(data, "quotes", None)
        if quotes is not None and not quotes.empty:
            out[day] = quotes
    return out
