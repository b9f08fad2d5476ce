"""One-tick-ahead direction forecasts of the lagger from the leader's past moves.

At each lagger tick epoch `now`, the next lagger interval is anticipated as
(now, now + d] with d the mean tick duration of the calibration window. The
score is sum_k beta_k * (leader increments whose lag_k-shifted interval overlaps
it), using only leader increments already observed at `now`. A positive score
buys one unit of the lagger, a negative one sells it; the position is closed at
the next lagger tick. An exact zero abstains.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.stats import ks_2samp, ttest_ind

from tick_leadlag._jit import njit
from tick_leadlag.hycorr import LagGrid, cross_correlation_curve, default_lag_grid
from tick_leadlag.liquidity import daily_average
from tick_leadlag.tickdata import TickSeries, days_of, to_tick_time

logger = logging.getLogger(__name__)

EXECUTIONS = ("midquote", "cross_spread")
BENCHMARKS = ("random", "autocorrelation")
TRADING_DAYS = 252
DEFAULT_WINDOW_DAYS = 20
DEFAULT_MAX_LAG_S = 10.0
Z_95 = 1.96

TRADE_COLUMNS = [
    "day",
    "epoch_ts",
    "forecast",
    "realized_sign",
    "m0",
    "m1",
    "bid0",
    "ask0",
    "bid1",
    "ask1",
]


@dataclass(frozen=True, eq=False)
class ForecastModel:
    """Lag weights calibrated on a window of days."""

    betas: np.ndarray
    lags: np.ndarray
    mean_tick_duration_s: float
    calibration_window_days: int = DEFAULT_WINDOW_DAYS
    calibration_days: tuple[str, ...] = ()

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=np.float64)
        betas = np.asarray(self.betas, dtype=np.float64)
        if lags.shape != betas.shape:
            raise ValueError("betas and lags must have the same length")
        if lags.size and (np.any(lags <= 0) or np.any(np.diff(lags) <= 0)):
            raise ValueError("forecast lags must be positive and strictly increasing")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "betas", betas)

    @property
    def abstains(self) -> bool:
        return self.lags.size == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "betas": self.betas,
            "lags": self.lags,
            "mean_tick_duration_s": self.mean_tick_duration_s,
            "calibration_window_days": self.calibration_window_days,
            "calibration_days": list(self.calibration_days),
        }


def significant_lags(rho: np.ndarray, ci95: np.ndarray, z: float = Z_95) -> int:
    """Number of leading positive lags kept: stop at the first |rho| < band.

    `ci95` holds 1.96-sigma half-widths; the band is rescaled to z sigmas.
    """
    bands = np.asarray(ci95, dtype=np.float64) * (z / Z_95)
    for k, (value, half) in enumerate(zip(rho, bands)):
        if not np.isfinite(value) or abs(value) < half or value == 0:
            return k
    return len(rho)


def calibrate(
    leader,
    lagger,
    *,
    window_days: int = DEFAULT_WINDOW_DAYS,
    grid: Optional[LagGrid] = None,
    max_lag: float = DEFAULT_MAX_LAG_S,
    z: float = Z_95,
) -> ForecastModel:
    """Fit betas = mean HY correlation at positive lags on the last window_days days.

    Args:
        leader: Day mapping of leader series.
        lagger: Day mapping of lagger series.
        window_days: Number of most recent common days used.
        grid: Lag grid (default grid truncated at max_lag).
        max_lag: Largest lag in seconds.
        z: Significance band in standard errors.

    Returns:
        ForecastModel; its grid is empty when no lag is significant.

    Raises:
        ValueError: Fewer than window_days common days.
    """
    leader_days, lagger_days = days_of(leader), days_of(lagger)
    common = sorted(set(leader_days) & set(lagger_days))
    if len(common) < window_days:
        raise ValueError(f"calibration needs {window_days} days, got {len(common)}")
    window = common[-window_days:]
    grid = (grid or default_lag_grid()).truncated(max_lag)

    curve = cross_correlation_curve(
        {d: leader_days[d] for d in window}, {d: lagger_days[d] for d in window}, grid
    )
    pos = grid.lags > 0
    rho, ci95 = curve.rho[pos], curve.ci95[pos]
    keep = significant_lags(rho, ci95, z)

    durations = {d: np.diff(lagger_days[d].ts) / 1000.0 for d in window}
    try:
        mean_duration = daily_average(durations)
    except ValueError:
        mean_duration = math.nan
    if keep == 0:
        logger.info("No significant lag on window ending %s; forecasts abstain", window[-1])
    return ForecastModel(
        betas=rho[:keep].copy(),
        lags=grid.lags[pos][:keep].copy(),
        mean_tick_duration_s=mean_duration,
        calibration_window_days=window_days,
        calibration_days=tuple(window),
    )


@njit(cache=True)
def _scores(t, r, nows, d_ms, lags_ms, betas):
    out = np.zeros(nows.shape[0])
    n = r.shape[0]
    if lags_ms.shape[0] == 0 or n == 0:
        return out
    max_lag = lags_ms[-1]
    start = 0
    for q in range(nows.shape[0]):
        now = nows[q]
        # increments ending after now - max_lag; nows are non-decreasing
        while start < n and t[start + 1] <= now - max_lag:
            start += 1
        acc = 0.0
        for k in range(lags_ms.shape[0]):
            lag = lags_ms[k]
            part = 0.0
            for i in range(start, n):
                if t[i + 1] > now:
                    break
                if (now + d_ms) - t[i] > lag and t[i + 1] - now > -lag:
                    part += r[i]
            acc += betas[k] * part
        out[q] = acc
    return out


def forecast_scores(model: ForecastModel, leader: TickSeries, nows: np.ndarray) -> np.ndarray:
    """Scores at non-decreasing decision times (ms), leader data up to each time only."""
    nows = np.ascontiguousarray(nows, dtype=np.float64)
    if model.abstains or leader.n_increments == 0 or not np.isfinite(model.mean_tick_duration_s):
        return np.zeros(nows.size)
    return _scores(
        leader.ts,
        leader.increments,
        nows,
        model.mean_tick_duration_s * 1000.0,
        model.lags * 1000.0,
        model.betas,
    )


def predict_next(model: ForecastModel, leader: TickSeries, now: float) -> int:
    """Sign of the score at `now` (ms): +1, -1, or 0 to abstain."""
    return int(np.sign(forecast_scores(model, leader, np.array([now]))[0]))


def _trade_rows(day: str, lagger: TickSeries, forecasts: np.ndarray) -> pd.DataFrame:
    n = lagger.n_increments
    mids = lagger.mid
    bid = lagger.bid if lagger.bid is not None else np.full(len(lagger), np.nan)
    ask = lagger.ask if lagger.ask is not None else np.full(len(lagger), np.nan)
    return pd.DataFrame(
        {
            "day": day,
            "epoch_ts": lagger.ts[:n],
            "forecast": forecasts[:n].astype(np.int64),
            "realized_sign": np.sign(np.diff(mids)).astype(np.int64),
            "m0": mids[:n],
            "m1": mids[1:],
            "bid0": bid[:n],
            "ask0": ask[:n],
            "bid1": bid[1:],
            "ask1": ask[1:],
        },
        columns=TRADE_COLUMNS,
    )


def _empty_trades() -> pd.DataFrame:
    return pd.DataFrame(columns=TRADE_COLUMNS)


def _concat(frames: list[pd.DataFrame]) -> pd.DataFrame:
    frames = [f for f in frames if not f.empty]
    return pd.concat(frames, ignore_index=True) if frames else _empty_trades()


def model_forecasts(
    leader,
    lagger,
    *,
    window_days: int = DEFAULT_WINDOW_DAYS,
    grid: Optional[LagGrid] = None,
    max_lag: float = DEFAULT_MAX_LAG_S,
    z: float = Z_95,
) -> tuple[pd.DataFrame, dict[str, ForecastModel]]:
    """Out-of-sample forecasts with a model recalibrated before every test day.

    Day k is forecast by the model calibrated on days k - window_days .. k - 1.
    """
    leader_days, lagger_days = days_of(leader), days_of(lagger)
    common = sorted(set(leader_days) & set(lagger_days))
    frames, models = [], {}
    for k in range(window_days, len(common)):
        day = common[k]
        history = common[k - window_days : k]
        model = calibrate(
            {d: leader_days[d] for d in history},
            {d: lagger_days[d] for d in history},
            window_days=window_days,
            grid=grid,
            max_lag=max_lag,
            z=z,
        )
        models[day] = model
        target = lagger_days[day]
        if target.n_increments == 0:
            continue
        scores = forecast_scores(model, leader_days[day], target.ts[:-1])
        frames.append(_trade_rows(day, target, np.sign(scores)))
    if not frames:
        logger.warning("No test day after a %d-day calibration window", window_days)
    return _concat(frames), models


def benchmark_forecasts(
    lagger,
    kind: str = "random",
    *,
    seed: int = 0,
    window_days: int = DEFAULT_WINDOW_DAYS,
    grid: Optional[LagGrid] = None,
    max_lag: float = DEFAULT_MAX_LAG_S,
    z: float = Z_95,
) -> pd.DataFrame:
    """Benchmark forecasts on the same test epochs as model_forecasts.

    kind="random" draws independent fair signs; kind="autocorrelation" runs the
    lead/lag forecaster with the lagger as its own leader.
    """
    if kind not in BENCHMARKS:
        raise ValueError(f"Unknown benchmark {kind!r}; expected one of {BENCHMARKS}")
    if kind == "autocorrelation":
        trades, _ = model_forecasts(
            lagger, lagger, window_days=window_days, grid=grid, max_lag=max_lag, z=z
        )
        return trades

    lagger_days = days_of(lagger)
    days = sorted(lagger_days)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed)]))
    frames = []
    for day in days[window_days:]:
        series = lagger_days[day]
        n = series.n_increments
        if n == 0:
            continue
        signs = rng.choice(np.array([-1, 1]), size=n)
        frames.append(_trade_rows(day, series, np.append(signs, 0)))
    return _concat(frames)


def perfect_foresight_forecasts(lagger, *, window_days: int = DEFAULT_WINDOW_DAYS) -> pd.DataFrame:
    """Forecasts equal to the realized sign: the accuracy upper bound."""
    lagger_days = days_of(lagger)
    frames = []
    for day in sorted(lagger_days)[window_days:]:
        series = lagger_days[day]
        if series.n_increments == 0:
            continue
        signs = np.sign(series.increments)
        frames.append(_trade_rows(day, series, np.append(signs, 0)))
    return _concat(frames)


@dataclass
class BacktestReport:
    """Accounting of one forecast stream under one execution mode."""

    execution: str
    accuracy: float
    per_trade_returns: np.ndarray
    hits: np.ndarray
    mean_return_bp: float
    daily_return_mean: float
    daily_return_sd: float
    sharpe_annualized: float
    n_trades: int
    n_abstained: int
    n_skipped: int
    benchmark: Optional[str] = None
    ks_distance_vs_benchmark: Optional[float] = None
    ks_distance_vs_random: Optional[float] = None
    t_stat_vs_benchmark: Optional[float] = None
    trades: pd.DataFrame = field(default_factory=_empty_trades, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "execution": self.execution,
            "accuracy": self.accuracy,
            "mean_return_bp": self.mean_return_bp,
            "median_return_bp": (
                float(np.median(self.per_trade_returns) * 1e4) if self.n_trades else math.nan
            ),
            "daily_return_mean": self.daily_return_mean,
            "daily_return_sd": self.daily_return_sd,
            "sharpe_annualized": self.sharpe_annualized,
            "n_trades": self.n_trades,
            "n_abstained": self.n_abstained,
            "n_skipped": self.n_skipped,
            "benchmark": self.benchmark,
            "ks_distance_vs_benchmark": self.ks_distance_vs_benchmark,
            "ks_distance_vs_random": self.ks_distance_vs_random,
            "t_stat_vs_benchmark": self.t_stat_vs_benchmark,
        }

    def attach_comparison(self, kind: str, comparison: Mapping[str, float]) -> None:
        """Store a compare_reports result against the `kind` benchmark.

        ks_distance_vs_random is only filled when the benchmark is the random one.
        """
        if kind not in BENCHMARKS:
            raise ValueError(f"Unknown benchmark {kind!r}; expected one of {BENCHMARKS}")
        self.benchmark = kind
        self.ks_distance_vs_benchmark = comparison["ks_distance"]
        self.ks_distance_vs_random = comparison["ks_distance"] if kind == "random" else None
        self.t_stat_vs_benchmark = comparison["t_stat"]

    def trades_frame(self) -> pd.DataFrame:
        """Per-trade rows: epoch_ts, forecast, realized_sign, return, execution."""
        df = self.trades[["epoch_ts", "forecast", "realized_sign"]].copy()
        df["return"] = self.per_trade_returns
        df["execution"] = self.execution
        return df


def evaluate_forecasts(trades: pd.DataFrame, execution: str = "midquote") -> BacktestReport:
    """Trade every non-abstaining forecast and account returns.

    Midquote execution earns sign * (m1 - m0) / m0. Cross-spread execution buys at
    the ask and sells at the bid: (bid1 - ask0) / m0 for a long, (bid0 - ask1) / m0
    for a short; trades without quotes are skipped and counted.
    """
    if execution not in EXECUTIONS:
        raise ValueError(f"Unknown execution {execution!r}; expected one of {EXECUTIONS}")
    active = trades.loc[trades["forecast"] != 0]
    n_abstained = int(len(trades) - len(active))

    sign = active["forecast"].to_numpy(dtype=np.float64)
    m0 = active["m0"].to_numpy(dtype=np.float64)
    if execution == "midquote":
        returns = sign * (active["m1"].to_numpy(dtype=np.float64) - m0) / m0
        ok = np.ones(len(active), dtype=bool)
    else:
        bid0, ask0, bid1, ask1 = (
            active[c].to_numpy(dtype=np.float64) for c in ("bid0", "ask0", "bid1", "ask1")
        )
        returns = np.where(sign > 0, (bid1 - ask0) / m0, (bid0 - ask1) / m0)
        ok = np.isfinite(returns)
    n_skipped = int(np.count_nonzero(~ok))
    if n_skipped:
        logger.info("%d trade(s) skipped for missing quotes", n_skipped)
    kept = active.loc[ok].reset_index(drop=True)
    returns = returns[ok]
    hits = (kept["forecast"].to_numpy() == kept["realized_sign"].to_numpy()).astype(np.float64)

    n = int(returns.size)
    accuracy = float(hits.mean()) if n else math.nan
    daily = pd.Series(returns).groupby(kept["day"].to_numpy()).sum()
    daily_mean = float(daily.mean()) if len(daily) else math.nan
    daily_sd = float(daily.std(ddof=1)) if len(daily) > 1 else math.nan
    sharpe = (
        daily_mean / daily_sd * math.sqrt(TRADING_DAYS)
        if np.isfinite(daily_sd) and daily_sd > 0
        else math.nan
    )
    return BacktestReport(
        execution=execution,
        accuracy=accuracy,
        per_trade_returns=returns,
        hits=hits,
        mean_return_bp=float(returns.mean() * 1e4) if n else math.nan,
        daily_return_mean=daily_mean,
        daily_return_sd=daily_sd,
        sharpe_annualized=sharpe,
        n_trades=n,
        n_abstained=n_abstained,
        n_skipped=n_skipped,
        trades=kept,
    )


def backtest(
    leader,
    lagger,
    *,
    execution: str = "midquote",
    window_days: int = DEFAULT_WINDOW_DAYS,
    grid: Optional[LagGrid] = None,
    max_lag: float = DEFAULT_MAX_LAG_S,
    z: float = Z_95,
) -> BacktestReport:
    """Rolling-calibration backtest of the lead/lag forecaster."""
    trades, _ = model_forecasts(
        leader, lagger, window_days=window_days, grid=grid, max_lag=max_lag, z=z
    )
    return evaluate_forecasts(trades, execution)


def compare_reports(a: BacktestReport, b: BacktestReport) -> dict[str, float]:
    """Two-sample KS test on returns and t-test on hit rates.

    Raises:
        ValueError: Either report has no trade.
    """
    if a.n_trades == 0 or b.n_trades == 0:
        raise ValueError("compare_reports needs non-empty reports")
    ks = ks_2samp(a.per_trade_returns, b.per_trade_returns, method="asymp")
    if np.array_equal(a.hits, b.hits):
        t_stat, t_p = 0.0, 1.0
    else:
        t = ttest_ind(a.hits, b.hits)
        t_stat, t_p = float(t.statistic), float(t.pvalue)
    return {
        "ks_distance": float(ks.statistic),
        "ks_pvalue_asymptotic": float(ks.pvalue),
        "t_stat": t_stat,
        "t_pvalue": t_p,
    }


def coarse_tick_sweep(
    leader,
    lagger,
    lagger_tick: float,
    thetas: Sequence[float] = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
    *,
    execution: str = "midquote",
    window_days: int = DEFAULT_WINDOW_DAYS,
    grid: Optional[LagGrid] = None,
    max_lag: float = DEFAULT_MAX_LAG_S,
    z: float = Z_95,
) -> dict[float, BacktestReport]:
    """Backtest with the lagger re-sampled in coarse tick time for each theta (ticks)."""
    lagger_days = days_of(lagger)
    reports = {}
    for theta in thetas:
        coarse = {d: to_tick_time(s, theta, lagger_tick) for d, s in lagger_days.items()}
        if all(s.n_increments == 0 for s in coarse.values()):
            logger.warning("theta = %g ticks leaves no lagger increments", theta)
        reports[float(theta)] = backtest(
            leader, coarse, execution=execution, window_days=window_days, grid=grid,
            max_lag=max_lag, z=z,
        )
    return reports


def audit_no_lookahead(
    models: Mapping[str, ForecastModel],
    leader,
    lagger,
    *,
    max_checks_per_day: Optional[int] = None,
) -> dict[str, int]:
    """Recompute forecasts on leader streams truncated at each decision time.

    Returns:
        Dict with n_checked and n_mismatch; a mismatch means a forecast used data
        observed after its decision time.
    """
    leader_days, lagger_days = days_of(leader), days_of(lagger)
    n_checked = n_mismatch = 0
    for day, model in models.items():
        target = lagger_days[day]
        nows = target.ts[:-1]
        full = forecast_scores(model, leader_days[day], nows)
        picks = range(nows.size)
        if max_checks_per_day is not None:
            picks = np.unique(np.linspace(0, nows.size - 1, max_checks_per_day).astype(int))
        for q in picks:
            truncated = leader_days[day].until(nows[q])
            replay = forecast_scores(model, truncated, nows[q : q + 1])[0]
            n_checked += 1
            if replay != full[q]:
                n_mismatch += 1
    if n_mismatch:
        logger.warning("Look-ahead audit found %d mismatching forecast(s)", n_mismatch)
    return {"n_checked": n_checked, "n_mismatch": n_mismatch}
