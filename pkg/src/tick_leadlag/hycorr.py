"""Lagged Hayashi-Yoshida cross-correlation and lead/lag summaries.

Conventions:
    - Timestamps are milliseconds, lags are seconds.
    - A positive lag pairs leader increments at t with lagger increments near t + lag,
      so an LLR above 1 means the first leg leads.
    - Days are the averaging unit: curves are computed per day and combined with
      a mean and a 95% half-width 1.96 * sd / sqrt(D).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Optional

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline

from tick_leadlag._jit import njit
from tick_leadlag.parallel import map_ordered
from tick_leadlag.tickdata import TickSeries, days_of

logger = logging.getLogger(__name__)

Z_95 = 1.96
SPLINE_MESH_S = 0.1
TIE_TOL = 1e-12
MS = 1000.0


class EstimatorError(Exception):
    """Estimator cannot be evaluated on the given input."""


# ============================================================================
# LAG GRID
# ============================================================================


@dataclass(frozen=True, eq=False)
class LagGrid:
    """Symmetric, strictly increasing lags in seconds, containing 0."""

    lags: np.ndarray

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=np.float64)
        if lags.ndim != 1 or lags.size == 0:
            raise ValueError("lag grid must be a non-empty 1-d array")
        if lags.size > 1 and not np.all(np.diff(lags) > 0):
            raise ValueError("lag grid must be strictly increasing")
        if not np.any(lags == 0):
            raise ValueError("lag grid must contain 0")
        if not np.array_equal(lags, -lags[::-1]):
            raise ValueError("lag grid must be symmetric around 0")
        object.__setattr__(self, "lags", lags)

    def __len__(self) -> int:
        return int(self.lags.size)

    @classmethod
    def from_positive(cls, positive) -> "LagGrid":
        """Mirror a set of positive lags around 0."""
        pos = np.unique(np.asarray(positive, dtype=np.float64))
        if np.any(pos <= 0):
            raise ValueError("from_positive expects strictly positive lags")
        return cls(np.concatenate([-pos[::-1], [0.0], pos]))

    @property
    def positive(self) -> np.ndarray:
        return self.lags[self.lags > 0]

    @property
    def zero_index(self) -> int:
        return int(np.flatnonzero(self.lags == 0)[0])

    def truncated(self, max_lag: float) -> "LagGrid":
        return LagGrid(self.lags[np.abs(self.lags) <= max_lag])


def default_lag_grid(max_lag: float = 300.0) -> LagGrid:
    """0, 0.01..0.1, 0.2..1, 2..10, 15, 20, 30..120 (step 10), 180, 240, 300, mirrored."""
    positive = np.concatenate(
        [
            np.round(np.arange(1, 11) * 0.01, 2),
            np.round(np.arange(2, 11) * 0.1, 1),
            np.arange(2.0, 11.0),
            [15.0, 20.0],
            np.arange(30.0, 121.0, 10.0),
            [180.0, 240.0, 300.0],
        ]
    )
    positive = positive[positive <= max_lag]
    return LagGrid.from_positive(positive)


# ============================================================================
# SWEEP KERNELS
# ============================================================================
#
# Leader interval i is ]t[i], t[i+1]], lagger interval j shifted by the lag is
# ]s[j] - lag, s[j+1] - lag]. They overlap iff
#     s[j+1] - t[i] > lag  and  t[i+1] - s[j] > -lag.
# Both tests are monotone in i and j, which gives the two-pointer sweep.


@njit(cache=True)
def _hy_sweep(t, rx, s, ry, lag_ms):
    n = rx.shape[0]
    m = ry.shape[0]
    acc = 0.0
    j_start = 0
    for i in range(n):
        while j_start < m and s[j_start + 1] - t[i] <= lag_ms:
            j_start += 1
        for j in range(j_start, m):
            if t[i + 1] - s[j] <= -lag_ms:
                break
            acc += rx[i] * ry[j]
    return acc


@njit(cache=True)
def _hy_sweep_masked(t, rx, mx, s, ry, my, lag_ms):
    n = rx.shape[0]
    m = ry.shape[0]
    sum_x = 0.0
    sum_y = 0.0
    count = 0
    j_start = 0
    for i in range(n):
        while j_start < m and s[j_start + 1] - t[i] <= lag_ms:
            j_start += 1
        for j in range(j_start, m):
            if t[i + 1] - s[j] <= -lag_ms:
                break
            prod = rx[i] * ry[j]
            if mx[i]:
                sum_x += prod
                if my[j]:
                    count += 1
            if my[j]:
                sum_y += prod
    return sum_x, sum_y, count


@njit(cache=True)
def _sum_squares(r):
    acc = 0.0
    for k in range(r.shape[0]):
        acc += r[k] * r[k]
    return acc


def hy_covariance_brute_force(x: TickSeries, y: TickSeries, lag: float) -> float:
    """O(n*m) double loop over all interval pairs; reference for the sweep."""
    t, s = x.ts, y.ts
    rx, ry = x.increments, y.increments
    lag_ms = lag * MS
    acc = 0.0
    for i in range(rx.size):
        for j in range(ry.size):
            if s[j + 1] - t[i] > lag_ms and t[i + 1] - s[j] > -lag_ms:
                acc += rx[i] * ry[j]
    return acc


def _require_increments(x: TickSeries, y: TickSeries) -> None:
    if x.n_increments < 1 or y.n_increments < 1:
        raise EstimatorError("no increments")


def hy_covariance(x: TickSeries, y: TickSeries, lag: float) -> float:
    """Lagged Hayashi-Yoshida covariance sum.

    Args:
        x: Leader tick series.
        y: Lagger tick series.
        lag: Lag in seconds.

    Returns:
        Sum of r_i^X r_j^Y over all pairs of overlapping (lag-shifted) intervals.

    Raises:
        EstimatorError: Either series has no increment.
    """
    _require_increments(x, y)
    return float(_hy_sweep(x.ts, x.increments, y.ts, y.increments, lag * MS))


def hy_correlation(x: TickSeries, y: TickSeries, lag: float) -> float:
    """Lagged HY covariance normalized by both root sums of squares. Not clipped."""
    _require_increments(x, y)
    sxx = _sum_squares(x.increments)
    syy = _sum_squares(y.increments)
    if sxx == 0 or syy == 0:
        raise EstimatorError("zero variance")
    return hy_covariance(x, y, lag) / math.sqrt(sxx * syy)


# ============================================================================
# CURVES
# ============================================================================


@dataclass
class CrossCorrelationCurve:
    """Across-day mean correlation per lag with 95% half-widths.

    `rho` holds raw values; single-day lagged estimates may leave [-1, 1].
    Lags with no data are NaN.
    """

    grid: LagGrid
    rho: np.ndarray
    ci95: np.ndarray
    n_days: int
    per_day: Optional[np.ndarray] = None
    days: list[str] = field(default_factory=list)
    n_skipped: int = 0
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def lags(self) -> np.ndarray:
        return self.grid.lags

    @property
    def n_null(self) -> int:
        return int(np.count_nonzero(np.isnan(self.rho)))

    def clipped(self) -> tuple[np.ndarray, int]:
        """Values clipped to [-1, 1] and the number of clipped points."""
        finite = np.isfinite(self.rho)
        n_clipped = int(np.count_nonzero(finite & (np.abs(self.rho) > 1)))
        return np.clip(self.rho, -1.0, 1.0), n_clipped

    def to_frame(self) -> pd.DataFrame:
        clipped, _ = self.clipped()
        return pd.DataFrame(
            {"lag_s": self.lags, "rho": clipped, "rho_raw": self.rho, "ci95": self.ci95}
        )


def _combine_days(
    grid: LagGrid, day_values: list[np.ndarray], days: list[str], n_skipped: int
) -> CrossCorrelationCurve:
    if not day_values:
        nan = np.full(len(grid), np.nan)
        return CrossCorrelationCurve(grid, nan, nan.copy(), 0, None, [], n_skipped)

    per_day = np.vstack(day_values)
    finite = np.isfinite(per_day)
    counts = finite.sum(axis=0)
    denom = np.maximum(counts, 1)
    safe = np.where(finite, per_day, 0.0)
    mean = np.where(counts > 0, safe.sum(axis=0) / denom, np.nan)
    dev = np.where(finite, per_day - np.where(counts > 0, mean, 0.0), 0.0)
    var = (dev**2).sum(axis=0) / denom
    ci95 = np.where(counts > 0, Z_95 * np.sqrt(var) / np.sqrt(denom), np.nan)

    n_clipped = int(np.count_nonzero(np.isfinite(per_day) & (np.abs(per_day) > 1)))
    if n_clipped:
        logger.info("%d single-day values lie outside [-1, 1]", n_clipped)
    curve = CrossCorrelationCurve(grid, mean, ci95, len(day_values), per_day, days, n_skipped)
    curve.extras["n_day_values_outside_unit"] = n_clipped
    return curve


def _usable(x: TickSeries, y: TickSeries) -> bool:
    if x.n_increments < 2 or y.n_increments < 2:
        return False
    return _sum_squares(x.increments) > 0 and _sum_squares(y.increments) > 0


def _hy_day_curve(pair: tuple[TickSeries, TickSeries], lags: np.ndarray) -> np.ndarray:
    x, y = pair
    t, rx = x.ts, x.increments
    s, ry = y.ts, y.increments
    norm = math.sqrt(_sum_squares(rx) * _sum_squares(ry))
    return np.array([_hy_sweep(t, rx, s, ry, lag * MS) / norm for lag in lags])


def _paired_days(x, y) -> tuple[list[str], list[tuple[TickSeries, TickSeries]], int]:
    xd, yd = days_of(x), days_of(y)
    days, pairs, skipped = [], [], 0
    for day in sorted(set(xd) & set(yd)):
        if _usable(xd[day], yd[day]):
            days.append(day)
            pairs.append((xd[day], yd[day]))
        else:
            skipped += 1
            logger.debug("Skipping day %s: fewer than 2 increments or zero variance", day)
    if skipped:
        logger.info("Skipped %d day(s) with too few increments", skipped)
    return days, pairs, skipped


def cross_correlation_curve(
    x,
    y,
    grid: Optional[LagGrid] = None,
    *,
    jobs: Optional[int] = 1,
) -> CrossCorrelationCurve:
    """Per-day lagged HY correlations averaged across days.

    Args:
        x: Leader TickSeries or mapping day -> TickSeries.
        y: Lagger TickSeries or mapping day -> TickSeries.
        grid: Lag grid (defaults to default_lag_grid()).
        jobs: Worker processes for the per-day map.

    Returns:
        CrossCorrelationCurve. Days with fewer than 2 increments on a leg are
        skipped and counted in n_skipped.
    """
    grid = grid or default_lag_grid()
    days, pairs, skipped = _paired_days(x, y)
    values = map_ordered(partial(_hy_day_curve, lags=grid.lags), pairs, jobs)
    return _combine_days(grid, values, days, skipped)


def mirror_curve(curve: CrossCorrelationCurve) -> CrossCorrelationCurve:
    """Curve of the pair with leader and lagger swapped (lag -> -lag)."""
    per_day = None if curve.per_day is None else curve.per_day[:, ::-1].copy()
    return CrossCorrelationCurve(
        grid=curve.grid,
        rho=curve.rho[::-1].copy(),
        ci95=curve.ci95[::-1].copy(),
        n_days=curve.n_days,
        per_day=per_day,
        days=list(curve.days),
        n_skipped=curve.n_skipped,
        extras=dict(curve.extras),
    )


def _llr_values(lags: np.ndarray, rho: np.ndarray) -> float:
    pos = lags > 0
    neg = lags < 0
    if not pos.any() or not neg.any():
        raise EstimatorError("LLR needs at least one positive and one negative lag")
    # neg lags ascend, so reversing pairs rho(l_i) with rho(-l_i)
    num = np.nansum(rho[pos] ** 2)
    den = np.nansum(rho[neg][::-1] ** 2)
    if den == 0:
        raise EstimatorError("degenerate negative-lag correlation")
    return float(num / den)


def llr(curve: CrossCorrelationCurve) -> float:
    """Lead/lag ratio sum rho^2(l_i) / sum rho^2(-l_i) over positive grid lags."""
    n_null = curve.n_null
    if n_null:
        logger.info("LLR excludes %d null lag(s)", n_null)
    return _llr_values(curve.lags, curve.rho)


def thresholded_curve(
    x,
    y,
    grid: Optional[LagGrid] = None,
    theta: float = 0.0,
) -> CrossCorrelationCurve:
    """Cross-correlation keeping only increments of absolute size >= theta.

    For lag > 0 only leader increments above theta enter the sum; for lag < 0 only
    lagger increments. The normalization is

        sqrt(N_theta^X N_0^Y) / (N_theta^{X,Y}(lag) sigma_theta^X sigma_0^Y)

    with N_theta^{X,Y}(lag) counting overlapping pairs where both legs pass theta
    and sigma the root sum of squares of the selected increments. At lag 0 the
    leader-side value is stored in `rho` and the lagger-side value in
    extras["rho_zero_lagger_side"] (with its CI in extras["ci95_zero_lagger_side"]).
    Note that theta = 0 does not reproduce hy_correlation because of the pair count.

    Args:
        x: Leader series or day mapping.
        y: Lagger series or day mapping.
        grid: Lag grid.
        theta: Threshold in price units.

    Returns:
        CrossCorrelationCurve with NaN where no pair qualifies.
    """
    if theta < 0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    grid = grid or default_lag_grid()
    days, pairs, skipped = _paired_days(x, y)
    lags = grid.lags
    z = grid.zero_index

    lead_side, lag_side_zero = [], []
    for xs, ys in pairs:
        rx, ry = xs.increments, ys.increments
        mx = np.abs(rx) >= theta
        my = np.abs(ry) >= theta
        n0x, n0y = rx.size, ry.size
        ntx, nty = int(mx.sum()), int(my.sum())
        sig0x, sig0y = math.sqrt(_sum_squares(rx)), math.sqrt(_sum_squares(ry))
        sigtx, sigty = math.sqrt(_sum_squares(rx[mx])), math.sqrt(_sum_squares(ry[my]))

        row = np.full(lags.size, np.nan)
        zero_lagger = np.nan
        for k, lag in enumerate(lags):
            sum_x, sum_y, count = _hy_sweep_masked(xs.ts, rx, mx, ys.ts, ry, my, lag * MS)
            if count == 0:
                continue
            lead_val = np.nan
            lag_val = np.nan
            if sigtx > 0:
                lead_val = math.sqrt(ntx * n0y) * sum_x / (count * sigtx * sig0y)
            if sigty > 0:
                lag_val = math.sqrt(n0x * nty) * sum_y / (count * sig0x * sigty)
            if lag > 0:
                row[k] = lead_val
            elif lag < 0:
                row[k] = lag_val
            else:
                row[k] = lead_val
                zero_lagger = lag_val
        lead_side.append(row)
        lag_side_zero.append(zero_lagger)

    curve = _combine_days(grid, lead_side, days, skipped)
    curve.extras["theta"] = theta
    zero = np.asarray(lag_side_zero, dtype=np.float64)
    finite = zero[np.isfinite(zero)]
    if finite.size:
        curve.extras["rho_zero_lagger_side"] = float(finite.mean())
        curve.extras["ci95_zero_lagger_side"] = float(Z_95 * finite.std() / math.sqrt(finite.size))
    else:
        curve.extras["rho_zero_lagger_side"] = math.nan
        curve.extras["ci95_zero_lagger_side"] = math.nan
    logger.debug("Thresholded curve theta=%g: lead-side rho(0)=%g", theta, curve.rho[z])
    return curve


def _previous_tick_day(
    pair: tuple[TickSeries, TickSeries], lags: np.ndarray, mesh_ms: float
) -> np.ndarray:
    x, y = pair
    start = max(x.ts[0], y.ts[0])
    end = min(x.ts[-1], y.ts[-1])
    n_steps = int(math.floor((end - start) / mesh_ms))
    if n_steps < 1:
        raise EstimatorError("mesh larger than the common observation span")
    grid = start + mesh_ms * np.arange(n_steps + 1)
    px = x.mid[np.searchsorted(x.ts, grid, side="right") - 1]
    py = y.mid[np.searchsorted(y.ts, grid, side="right") - 1]
    rx, ry = np.diff(px), np.diff(py)
    norm = math.sqrt(float(np.dot(rx, rx)) * float(np.dot(ry, ry)))

    out = np.full(lags.size, np.nan)
    if norm == 0:
        return out
    n = rx.size
    for k, lag in enumerate(lags):
        shift = int(round(lag * MS / mesh_ms))
        if abs(shift) >= n:
            continue
        # leader return at step u paired with lagger return at step u + shift
        if shift >= 0:
            out[k] = float(np.dot(rx[: n - shift], ry[shift:])) / norm
        else:
            out[k] = float(np.dot(rx[-shift:], ry[: n + shift])) / norm
    return out


def previous_tick_curve(
    x,
    y,
    grid: Optional[LagGrid] = None,
    mesh: float = 5.0,
    *,
    jobs: Optional[int] = 1,
) -> CrossCorrelationCurve:
    """Lagged realized correlation after last-tick interpolation on a regular grid.

    Args:
        x: Leader series or day mapping.
        y: Lagger series or day mapping.
        grid: Lag grid; lags are rounded to multiples of mesh.
        mesh: Sampling step in seconds.
        jobs: Worker processes for the per-day map.

    Raises:
        EstimatorError: Mesh not positive or larger than the observation span.
    """
    if not mesh > 0:
        raise EstimatorError(f"mesh must be > 0, got {mesh}")
    grid = grid or default_lag_grid()
    days, pairs, skipped = _paired_days(x, y)
    values = map_ordered(
        partial(_previous_tick_day, lags=grid.lags, mesh_ms=mesh * MS), pairs, jobs
    )
    curve = _combine_days(grid, values, days, skipped)
    curve.extras["mesh_s"] = mesh
    return curve


# ============================================================================
# SUMMARIES
# ============================================================================


@dataclass
class LeadLagSummary:
    """Lead/lag indicators of one curve.

    llr comes from the raw grid, max_corr/max_lag_s from the spline-interpolated
    curve. The *_days fields summarize the same indicators computed day by day.
    """

    llr: float
    max_corr: float
    max_lag_s: float
    max_lag_sd: float = math.nan
    llr_mean_days: float = math.nan
    llr_ci95: float = math.nan
    max_lag_mean_days: float = math.nan
    max_lag_ci95: float = math.nan
    n_days: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "llr": self.llr,
            "max_corr": self.max_corr,
            "max_lag_s": self.max_lag_s,
            "max_lag_sd": self.max_lag_sd,
            "llr_mean_days": self.llr_mean_days,
            "llr_ci95": self.llr_ci95,
            "max_lag_mean_days": self.max_lag_mean_days,
            "max_lag_ci95": self.max_lag_ci95,
            "n_days": self.n_days,
        }


def _spline_argmax(
    lags: np.ndarray, rho: np.ndarray, mesh: float, use_abs: bool
) -> tuple[float, float]:
    ok = np.isfinite(rho)
    if np.count_nonzero(ok) < 4:
        raise EstimatorError("spline interpolation needs at least 4 raw points")
    knots, values = lags[ok], rho[ok]
    spline = CubicSpline(knots, values, bc_type="natural")

    lo = math.ceil(knots[0] / mesh - 1e-9)
    hi = math.floor(knots[-1] / mesh + 1e-9)
    fine = np.round(np.arange(lo, hi + 1) * mesh, 10)
    curve = spline(fine)
    score = np.abs(curve) if use_abs else curve

    best = score.max()
    candidates = np.flatnonzero(score >= best - TIE_TOL)
    # smallest |lag| wins, then the positive lag
    pick = min(candidates, key=lambda k: (abs(fine[k]), -fine[k]))
    return float(curve[pick]), float(fine[pick])


def _ci(values: np.ndarray) -> tuple[float, float, float]:
    values = values[np.isfinite(values)]
    if values.size == 0:
        return math.nan, math.nan, math.nan
    sd = float(values.std())
    return float(values.mean()), sd, Z_95 * sd / math.sqrt(values.size)


def extract_summary(
    curve: CrossCorrelationCurve,
    *,
    mesh: float = SPLINE_MESH_S,
    use_abs: bool = False,
) -> LeadLagSummary:
    """LLR, maximum correlation and lag of maximum correlation of a curve.

    Args:
        curve: Cross-correlation curve covering at least [-1 s, 1 s].
        mesh: Step of the regular interpolation grid in seconds.
        use_abs: Locate the maximum of |rho| instead of rho.

    Raises:
        EstimatorError: Curve too short or fewer than 4 usable points.
    """
    lags = curve.lags
    if lags[0] > -1.0 or lags[-1] < 1.0:
        raise EstimatorError("curve must cover at least [-1 s, 1 s]")

    try:
        ratio = llr(curve)
    except EstimatorError as e:
        logger.warning("LLR undefined: %s", e)
        ratio = math.nan
    max_corr, max_lag = _spline_argmax(lags, curve.rho, mesh, use_abs)

    summary = LeadLagSummary(llr=ratio, max_corr=max_corr, max_lag_s=max_lag, n_days=curve.n_days)
    if curve.per_day is not None and curve.per_day.shape[0] > 0:
        day_llr, day_lag = [], []
        for row in curve.per_day:
            try:
                day_llr.append(_llr_values(lags, row))
            except EstimatorError:
                day_llr.append(math.nan)
            try:
                day_lag.append(_spline_argmax(lags, row, mesh, use_abs)[1])
            except EstimatorError:
                day_lag.append(math.nan)
        summary.llr_mean_days, _, summary.llr_ci95 = _ci(np.asarray(day_llr))
        summary.max_lag_mean_days, summary.max_lag_sd, summary.max_lag_ci95 = _ci(
            np.asarray(day_lag)
        )
    return summary


def _slice_days(x_days, y_days, a: float, b: float):
    return (
        {d: s.between(a, b, closed=False) for d, s in x_days.items()},
        {d: s.between(a, b, closed=False) for d, s in y_days.items()},
    )


def intraday_profile(
    x,
    y,
    window: tuple[float, float],
    *,
    slice_minutes: float = 5.0,
    max_lag: float = 60.0,
    grid: Optional[LagGrid] = None,
    use_abs: bool = False,
) -> pd.DataFrame:
    """Lead/lag summary per intraday slice, averaged across days.

    Args:
        x: Leader series or day mapping.
        y: Lagger series or day mapping.
        window: (start_ms, end_ms) of the trading window shared by every day.
        slice_minutes: Slice length; a trailing partial slice is dropped.
        max_lag: Largest lag considered, in seconds.
        grid: Lag grid (default grid truncated at max_lag).
        use_abs: Passed to extract_summary.

    Returns:
        DataFrame with one row per slice; slices without data carry NaN summaries.
    """
    grid = (grid or default_lag_grid()).truncated(max_lag)
    start, end = window
    slice_ms = slice_minutes * 60 * MS
    n_slices = int(math.floor((end - start) / slice_ms + 1e-9))
    x_days, y_days = days_of(x), days_of(y)

    rows = []
    for k in range(n_slices):
        a = start + k * slice_ms
        b = a + slice_ms
        xs, ys = _slice_days(x_days, y_days, a, b)
        curve = cross_correlation_curve(xs, ys, grid)
        row: dict[str, Any] = {"slice": k, "start_ms": a, "end_ms": b, "n_days": curve.n_days}
        if curve.n_days == 0:
            row.update(LeadLagSummary(math.nan, math.nan, math.nan).to_dict())
            row["n_days"] = 0
        else:
            try:
                row.update(extract_summary(curve, use_abs=use_abs).to_dict())
            except EstimatorError as e:
                logger.info("Slice %d has no usable curve: %s", k, e)
                row.update(LeadLagSummary(math.nan, math.nan, math.nan).to_dict())
                row["n_days"] = curve.n_days
        rows.append(row)
    return pd.DataFrame(rows)


def curve_report(curve: CrossCorrelationCurve, summary: LeadLagSummary) -> dict[str, Any]:
    """JSON-ready view of a curve and its summary (clipped values, raw counters)."""
    clipped, n_clipped = curve.clipped()
    return {
        "grid": curve.lags,
        "rho_mean": clipped,
        "ci95": curve.ci95,
        "n_days": curve.n_days,
        "n_skipped_days": curve.n_skipped,
        "n_clipped": n_clipped,
        "n_null_lags": curve.n_null,
        **summary.to_dict(),
    }


def curves_by_day_frame(curve: CrossCorrelationCurve) -> pd.DataFrame:
    """Long frame day, lag_s, rho of the per-day values."""
    if curve.per_day is None:
        return pd.DataFrame(columns=["day", "lag_s", "rho"])
    rows = [
        {"day": day, "lag_s": lag, "rho": value}
        for day, values in zip(curve.days, curve.per_day)
        for lag, value in zip(curve.lags, values)
    ]
    return pd.DataFrame(rows)
