"""Synthetic tick data and the analytic expectation of the lagged HY estimator.

Generators:
    - generate_poisson_pair: correlated Brownian motions on a regular mesh, each
      observed on an independent Poisson grid with forced endpoints 0 and T.
    - generate_surrogate: same construction sampled at the exact epochs of real data.
    - generate_lagged_pair: pair with a known lead of the first leg.

Oracles for E(HY covariance) / T under the Poisson model:
    - oracle_expected_cov(method="closed"): closed-form expression.
    - oracle_expected_cov(method="series"): Poisson-weighted sums with a tail bound.
    - expectation_brute_force: Monte Carlo over simulated Poisson grids.

Every random draw comes from np.random.default_rng(SeedSequence([seed, rep])), so
repetitions are independent streams and reruns are bit-identical.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.special import gammaln, xlog1py, xlogy
from scipy.stats import poisson

from tick_leadlag._jit import njit
from tick_leadlag.guardrails import (
    ORACLE_DEFAULT_TOL,
    ORACLE_MAX_SERIES_TERMS,
    OracleGuardError,
    check_oracle_exponent,
)
from tick_leadlag.hycorr import (
    CrossCorrelationCurve,
    EstimatorError,
    LagGrid,
    cross_correlation_curve,
    default_lag_grid,
    llr,
    previous_tick_curve,
)
from tick_leadlag.parallel import map_ordered
from tick_leadlag.tickdata import TickSeries

logger = logging.getLogger(__name__)

MS = 1000.0
# relative gap below which the equal-intensity formula is used
EQUAL_LAMBDA_EPS = 1e-8

LagSpec = Union[float, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class SimConfig:
    """Poisson-sampled Brownian pair parameters (times in seconds)."""

    lambda1: float
    lambda2: float
    rho: float = 0.8
    T: float = 30600.0
    mesh: float = 5.0
    seed: int = 0
    n_reps: int = 1
    sigma: float = 0.01
    price0: float = 100.0

    def __post_init__(self):
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise ValueError("lambda1 and lambda2 must be > 0")
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [-1, 1], got {self.rho}")
        if not 0 < self.mesh <= self.T:
            raise ValueError(f"mesh must lie in (0, T], got mesh={self.mesh}, T={self.T}")
        if self.n_reps < 1:
            raise ValueError("n_reps must be >= 1")
        if not self.sigma > 0:
            raise ValueError("sigma must be > 0")


def _rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(rep)]))


def _rngs(seed: int, rep: int, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence([seed, rep]).spawn(n)]


def poisson_grid(rng: np.random.Generator, intensity: float, T: float) -> np.ndarray:
    """Sorted Poisson arrivals on (0, T) with the endpoints 0 and T added."""
    n = rng.poisson(intensity * T)
    inner = np.sort(rng.uniform(0.0, T, size=n))
    inner = inner[(inner > 0) & (inner < T)]
    return np.unique(np.concatenate([[0.0], inner, [T]]))


def _mesh_times(T: float, mesh: float, start: float = 0.0) -> np.ndarray:
    n = int(math.ceil((T - start) / mesh - 1e-12))
    return np.minimum(start + np.arange(n + 1) * mesh, T)


def correlated_brownian(
    rng: np.random.Generator, times: np.ndarray, rho: float
) -> tuple[np.ndarray, np.ndarray]:
    """Two Brownian paths on `times` with correlation rho, both 0 at times[0]."""
    dt = np.diff(times)
    z = rng.standard_normal((2, dt.size))
    scale = np.sqrt(dt)
    d1 = scale * z[0]
    d2 = rho * d1 + math.sqrt(max(1.0 - rho * rho, 0.0)) * scale * z[1]
    b1 = np.concatenate([[0.0], np.cumsum(d1)])
    b2 = np.concatenate([[0.0], np.cumsum(d2)])
    return b1, b2


def _last_value(times: np.ndarray, values: np.ndarray, at: np.ndarray) -> np.ndarray:
    return values[np.searchsorted(times, at, side="right") - 1]


def _to_series(
    epochs_s: np.ndarray, mid: np.ndarray, spread: Optional[float] = None
) -> TickSeries:
    ts = epochs_s * MS
    keep = np.concatenate([[True], np.diff(ts) > 0])
    ts, mid = ts[keep], mid[keep]
    if spread is None:
        return TickSeries(ts, mid)
    return TickSeries(ts, mid, mid - spread / 2, mid + spread / 2)


def generate_poisson_pair(
    cfg: SimConfig, rep: int = 0, *, same_grid: bool = False
) -> tuple[TickSeries, TickSeries]:
    """Correlated Brownian pair observed on independent Poisson grids.

    Args:
        cfg: Simulation parameters.
        rep: Repetition index (selects an independent random stream).
        same_grid: Observe both legs on the first leg's grid.

    Returns:
        (leader, lagger) TickSeries in milliseconds, prices price0 + sigma * B.
    """
    rng_b, rng_x, rng_y = _rngs(cfg.seed, rep, 3)
    times = _mesh_times(cfg.T, cfg.mesh)
    b1, b2 = correlated_brownian(rng_b, times, cfg.rho)
    gx = poisson_grid(rng_x, cfg.lambda1, cfg.T)
    gy = gx if same_grid else poisson_grid(rng_y, cfg.lambda2, cfg.T)
    x = _to_series(gx, cfg.price0 + cfg.sigma * _last_value(times, b1, gx))
    y = _to_series(gy, cfg.price0 + cfg.sigma * _last_value(times, b2, gy))
    return x, y


def generate_surrogate(
    real_x: TickSeries,
    real_y: TickSeries,
    rho: float,
    mesh: float = 1.0,
    seed: int = 0,
    rep: int = 0,
) -> tuple[TickSeries, TickSeries]:
    """Correlated Brownian pair sampled at the exact epochs of a real pair.

    Each leg is scaled to the realized volatility of its real counterpart and
    starts at the real first midquote, so only the lead/lag content is removed.

    Raises:
        ValueError: Either real series is empty.
    """
    if len(real_x) == 0 or len(real_y) == 0:
        raise ValueError("surrogate needs non-empty real series")
    start = min(real_x.ts[0], real_y.ts[0]) / MS
    end = max(real_x.ts[-1], real_y.ts[-1]) / MS
    times = _mesh_times(end, mesh, start) if end > start else np.array([start])
    b1, b2 = correlated_brownian(_rng(seed, rep), times, rho)

    out = []
    for real, path in ((real_x, b1), (real_y, b2)):
        span = max(end - start, mesh)
        realized = float(np.sum(real.increments**2)) / span
        vol = math.sqrt(realized) if realized > 0 else 1.0
        values = _last_value(times, path, real.ts / MS)
        out.append(TickSeries(real.ts.copy(), real.mid[0] + vol * (values - values[0])))
    return out[0], out[1]


def generate_lagged_pair(
    cfg: SimConfig,
    lag_d: LagSpec = 0.0,
    noise: float = 0.0,
    rep: int = 0,
    *,
    spread: Optional[float] = None,
) -> tuple[TickSeries, TickSeries]:
    """Pair where the first leg leads the second by lag_d seconds.

    The leader observes B1(t); the lagger observes
    rho * B1(s - d(s)) + sqrt(1 - rho^2) * B2(s) plus i.i.d. Gaussian noise of
    standard deviation `noise` (in price units). Both Brownians are sampled exactly
    at the required times rather than on cfg.mesh.

    Args:
        cfg: Simulation parameters.
        lag_d: Constant lag in seconds, or a callable mapping lagger epochs (s)
            to lags, e.g. to shorten the lag around a news time.
        noise: Observation noise on the lagger.
        rep: Repetition index.
        spread: Attach bid/ask at mid -/+ spread/2 when given.
    """
    rng_b1, rng_b2, rng_x, rng_y, rng_noise = _rngs(cfg.seed, rep, 5)
    gx = poisson_grid(rng_x, cfg.lambda1, cfg.T)
    gy = poisson_grid(rng_y, cfg.lambda2, cfg.T)
    delays = lag_d(gy) if callable(lag_d) else np.full(gy.size, float(lag_d))
    delays = np.asarray(delays, dtype=np.float64)
    if np.any(delays < 0):
        raise ValueError("lag_d must be >= 0")

    shifted = gy - delays
    t1 = np.unique(np.concatenate([gx, shifted]))
    z1 = rng_b1.standard_normal(t1.size)
    b1 = np.cumsum(np.sqrt(np.diff(t1, prepend=t1[0])) * z1)
    z2 = rng_b2.standard_normal(gy.size)
    b2 = np.cumsum(np.sqrt(np.diff(gy, prepend=gy[0])) * z2)

    lead = b1[np.searchsorted(t1, gx)]
    follow = cfg.rho * b1[np.searchsorted(t1, shifted)] + math.sqrt(1 - cfg.rho**2) * b2
    if noise > 0:
        follow = follow + noise / cfg.sigma * rng_noise.standard_normal(gy.size)

    x = _to_series(gx, cfg.price0 + cfg.sigma * (lead - lead[0]), spread)
    y = _to_series(gy, cfg.price0 + cfg.sigma * (follow - follow[0]), spread)
    return x, y


# ============================================================================
# ORACLE: CLOSED FORM
# ============================================================================


@dataclass
class OracleValue:
    """Expected HY covariance divided by T at one lag."""

    lag: float
    expected_cov: float
    truncation_n: int = 0
    tail_bound: float = 0.0
    method: str = "closed"


class _ExpSum:
    """Linear combination sum_k c_k exp(e_k); evaluated against a common scale.

    Products combine exponents before exponentiation, so terms such as
    e^{(L)(T-l)} e^{a l} e^{-LT} never overflow.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = list(terms)

    @classmethod
    def exp(cls, exponent: float) -> "_ExpSum":
        return cls([(1.0, exponent)])

    @classmethod
    def const(cls, c: float) -> "_ExpSum":
        return cls([(c, 0.0)])

    @staticmethod
    def _wrap(other) -> "_ExpSum":
        return other if isinstance(other, _ExpSum) else _ExpSum.const(float(other))

    def __add__(self, other):
        return _ExpSum(self.terms + self._wrap(other).terms)

    __radd__ = __add__

    def __neg__(self):
        return _ExpSum([(-c, e) for c, e in self.terms])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, _ExpSum):
            return _ExpSum([(c * other, e) for c, e in self.terms])
        return _ExpSum([(c1 * c2, e1 + e2) for c1, e1 in self.terms for c2, e2 in other.terms])

    __rmul__ = __mul__

    def __truediv__(self, k: float):
        return self * (1.0 / k)

    def scaled(self, log_scale: float) -> float:
        """Value of exp(-log_scale) * sum."""
        return math.fsum(c * math.exp(e - log_scale) for c, e in self.terms)


def _closed_unequal(a: float, b: float, T: float, lag: float) -> float:
    E = _ExpSum.exp
    L = a + b
    u = T - lag
    D = a - b
    Lu = L * u
    eal, ebl = E(a * lag), E(b * lag)
    eLu = E(Lu)

    s1 = (
        (E(a * T) - (1 + a * u) * eal - (a * u) ** 2 / 2) * (a / (b * D * T))
        - (E(b * T) - (1 + b * u) * ebl - (b * u) ** 2 / 2) * (b / (a * D * T))
        + (a * eal - b * ebl - D) * (1 + (Lu - 1) * eLu) / ((a * a - b * b) * T)
        + ((b * b / a) * (ebl - 1) - (a * a / b) * (eal - 1))
        * (eLu - 1 - Lu)
        / ((a * a - b * b) * T)
        - (eLu - 1 - Lu - Lu**2 / 2) * ((a * a + b * b) / (a * b * L * T))
        + (eLu * (Lu - 2) + Lu + 2) / (L * T)
    )
    eau, ebu = E(a * u), E(b * u)
    s2 = (
        (eLu - 1) * (eal - 1 - (b / a) * (ebl - 1)) / (D * T)
        - (
            (eau - 1) * (eal - 1)
            + eau
            - 1
            - a * u
            - (b / a) * ((ebu - 1) * (ebl - 1) + ebu - 1 - b * u)
        )
        / (D * T)
        + (eLu - 1 - Lu) / (a * T)
    )
    s4 = (E(a * T) - E(b * T)) / (D * T)
    # S3 = (a / b) S2
    total = s1 + s2 * (1 + a / b) + s4
    return total.scaled(L * T)


def _closed_equal(lam: float, T: float, lag: float) -> float:
    E = _ExpSum.exp
    u = T - lag
    x = lam * T
    el = E(lam * lag)
    e2u = E(2 * lam * u)
    elT = E(lam * T)
    lu = lam * u

    s1 = (
        elT * (2 / x + 1)
        - el * (2 / x + lag / T + (1 - lag / T) * (3 + lam * lag))
        - 2 * lam * u * u / T
        + (1 + e2u * (2 * lu - 1)) * (el * (1 + lam * lag) - 1) / (2 * x)
        + (e2u - 1 - 2 * lu) * (3 - el * (3 + lam * lag)) / (2 * x)
        - (e2u - 1 - 2 * lu - 2 * lu * lu) / x
        + (e2u * (lu - 1) + lu + 1) / x
    )
    s2 = (
        (e2u - 1) * (el * (lag + 1 / lam) - 1 / lam) / T
        + (e2u - 1 - 2 * lu) / x
        - elT * (1 + 1 / x)
        + el * ((1 / lam + lag) / T)
        + 2 * (1 - lag / T)
    )
    total = s1 + 2 * s2 + elT
    return total.scaled(2 * x)


# ============================================================================
# ORACLE: SERIES
# ============================================================================


def _binom_log_pmf(n: int, h: float) -> np.ndarray:
    k = np.arange(n + 1)
    return (
        gammaln(n + 1)
        - gammaln(k + 1)
        - gammaln(n - k + 1)
        + xlogy(k, h)
        + xlog1py(n - k, -h)
    )


def _g_row(n: int, h: float) -> np.ndarray:
    """g_h(n, i) for i = 0..n."""
    return np.minimum(np.cumsum(np.exp(_binom_log_pmf(n, h))), 1.0) / n


def g_h(n: int, i: int, h: float) -> float:
    """(n-1)! sum_{k<=i} h^k (1-h)^(n-k) / (k! (n-k)!), via log-factorials.

    Raises:
        ValueError: n < 1, i outside [0, n] or h outside [0, 1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= i <= n:
        raise ValueError(f"i must lie in [0, {n}], got {i}")
    if not 0 <= h < 1:
        raise ValueError(f"h must lie in [0, 1), got {h}")
    if i == n:
        return 1.0 / n
    return float(_g_row(n, h)[i])


def _series_coefficients(a: float, b: float, n_max: int) -> np.ndarray:
    L = a + b
    p, q = a / L, b / L
    d = np.empty(n_max + 1)
    d[0] = 0.0
    d[1] = 1.0
    q_pow = q
    for j in range(1, n_max):
        d[j + 1] = p * d[j] + q_pow
        q_pow *= q
    return d


def _bracket(n: int, d: np.ndarray, h: float, cross: float) -> float:
    if n == 1:
        return d[1]
    g = _g_row(n, h)
    j = np.arange(1, n)
    total = d[n] / n + float(np.dot(d[1:n], g[1:n]))
    if n > 2:
        jj = j[:-1]
        total += cross * float(np.dot((n - 1 - jj) * d[1 : n - 1], g[1 : n - 1]))
    return total


def _series_value(a: float, b: float, T: float, h: float, tol: float, rho: float):
    L = a + b
    mean = L * T
    n_terms = int(math.ceil(mean + 10 * math.sqrt(mean) + 10))
    cross = a * b / (L * L)
    while True:
        if n_terms > ORACLE_MAX_SERIES_TERMS:
            raise OracleGuardError(
                f"series oracle needs more than {ORACLE_MAX_SERIES_TERMS} terms",
                {"lambda1": a, "lambda2": b, "T": T},
            )
        d = _series_coefficients(a, b, n_terms)
        w = poisson.pmf(np.arange(n_terms), mean)
        value = 0.0
        mass = 0.0
        for n in range(1, n_terms + 1):
            value += w[n - 1] * _bracket(n, d, h, cross)
            mass += w[n - 1] * _bracket(n, d, 0.0, cross)
        tail = max(abs(rho) * (1.0 - mass), 0.0)
        if tail <= tol:
            return rho * value, n_terms, tail
        n_terms *= 2


def oracle_expected_cov(
    lambda1: float,
    lambda2: float,
    rho: float,
    T: float,
    lag: float,
    tol: float = ORACLE_DEFAULT_TOL,
    *,
    method: str = "closed",
) -> OracleValue:
    """Expected lagged HY covariance divided by T for Poisson-sampled Brownians.

    Equals rho at lag 0 and decreases to 0 at lag T. Negative lags are mapped to
    their absolute value. For lag >= T no interval pair can overlap and the result
    is exactly 0, even though the closed form does not vanish continuously there.

    Args:
        lambda1: Leader intensity (events per second).
        lambda2: Lagger intensity.
        rho: Correlation of the Brownian motions.
        T: Horizon in seconds.
        lag: Lag in seconds.
        tol: Tail-bound tolerance of the series method.
        method: "closed" or "series".

    Raises:
        OracleGuardError: (lambda1 + lambda2) * T beyond the overflow guard, or the
            series needs too many terms.
    """
    if not (lambda1 > 0 and lambda2 > 0 and T > 0):
        raise ValueError("lambda1, lambda2 and T must be > 0")
    if method not in ("closed", "series"):
        raise ValueError(f"unknown method {method!r}")
    check_oracle_exponent(lambda1, lambda2, T)
    lag = abs(float(lag))
    if lag >= T:
        return OracleValue(lag, 0.0, 0, 0.0, method)

    if method == "series":
        value, n_terms, tail = _series_value(lambda1, lambda2, T, lag / T, tol, rho)
        return OracleValue(lag, value, n_terms, tail, method)

    if abs(lambda1 - lambda2) / (lambda1 + lambda2) < EQUAL_LAMBDA_EPS:
        value = _closed_equal((lambda1 + lambda2) / 2, T, lag)
    else:
        value = _closed_unequal(lambda1, lambda2, T, lag)
    return OracleValue(lag, rho * value, 0, 0.0, method)


# ============================================================================
# ORACLE: MONTE CARLO
# ============================================================================


@dataclass
class MonteCarloEstimate:
    mean: float
    stderr: float
    n_reps: int
    samples: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


@njit(cache=True)
def _lagged_overlap_sum(t, s, lag):
    n = t.shape[0] - 1
    m = s.shape[0] - 1
    i = 0
    j = 0
    acc = 0.0
    while i < n and j < m:
        overlap = min(t[i + 1], s[j + 1]) - max(t[i], s[j])
        if overlap > 0 and s[j + 1] - t[i] > lag and t[i + 1] - s[j] > -lag:
            acc += overlap
        if t[i + 1] < s[j + 1]:
            i += 1
        elif t[i + 1] > s[j + 1]:
            j += 1
        else:
            i += 1
            j += 1
    return acc


def expectation_brute_force(
    lambda1: float,
    lambda2: float,
    rho: float,
    T: float,
    lag: float,
    n_reps: int = 10_000,
    seed: int = 0,
) -> MonteCarloEstimate:
    """Monte Carlo of rho / T * sum over interval pairs of their overlap length.

    Only Poisson grids are simulated: given the grids, the expected product of two
    Brownian increments is rho times the length of their common interval.
    """
    if n_reps < 2:
        raise ValueError("n_reps must be >= 2")
    samples = np.empty(n_reps)
    for rep in range(n_reps):
        rng_x, rng_y = _rngs(seed, rep, 2)
        t = poisson_grid(rng_x, lambda1, T)
        s = poisson_grid(rng_y, lambda2, T)
        samples[rep] = rho * _lagged_overlap_sum(t, s, float(lag)) / T
    stderr = float(samples.std(ddof=1) / math.sqrt(n_reps))
    return MonteCarloEstimate(float(samples.mean()), stderr, n_reps, samples)


def oracle_table(
    lambda1: float,
    lambda2: float,
    rho: float,
    T: float,
    lags: Sequence[float],
    *,
    n_reps: int = 0,
    seed: int = 0,
    tol: float = ORACLE_DEFAULT_TOL,
    series: bool = True,
) -> pd.DataFrame:
    """Closed form, series and (optionally) Monte Carlo values side by side."""
    rows = []
    for lag in lags:
        closed = oracle_expected_cov(lambda1, lambda2, rho, T, lag, tol)
        row = {"lag_s": float(lag), "closed_form": closed.expected_cov}
        if series:
            ser = oracle_expected_cov(lambda1, lambda2, rho, T, lag, tol, method="series")
            row["series"] = ser.expected_cov
            row["series_terms"] = ser.truncation_n
            row["series_tail_bound"] = ser.tail_bound
        if n_reps:
            mc = expectation_brute_force(lambda1, lambda2, rho, T, abs(lag), n_reps, seed)
            row["mc_mean"] = mc.mean
            row["mc_stderr"] = mc.stderr
            row["z_score"] = (
                (mc.mean - closed.expected_cov) / mc.stderr if mc.stderr > 0 else math.nan
            )
        rows.append(row)
    return pd.DataFrame(rows)


# ============================================================================
# ESTIMATOR STUDY
# ============================================================================


@dataclass
class SimulationResult:
    """HY and previous-tick curves for one intensity pair over all repetitions."""

    lambda1: float
    lambda2: float
    hy: CrossCorrelationCurve
    previous_tick: CrossCorrelationCurve
    hy_llr: float
    previous_tick_llr: float

    def summary_row(self) -> dict:
        z_hy = self.hy.grid.zero_index
        return {
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "ratio": self.lambda1 / self.lambda2,
            "hy_rho0": float(self.hy.rho[z_hy]),
            "hy_rho0_ci95": float(self.hy.ci95[z_hy]),
            "hy_llr": self.hy_llr,
            "pt_rho0": float(self.previous_tick.rho[z_hy]),
            "pt_rho0_ci95": float(self.previous_tick.ci95[z_hy]),
            "pt_llr": self.previous_tick_llr,
        }


def _generate_rep(rep: int, cfg: SimConfig) -> tuple[TickSeries, TickSeries]:
    return generate_poisson_pair(cfg, rep)


def _safe_llr(curve: CrossCorrelationCurve) -> float:
    try:
        return llr(curve)
    except EstimatorError as e:
        logger.warning("LLR undefined: %s", e)
        return math.nan


def simulate_estimators(
    cfg: SimConfig,
    lambda2s: Sequence[float],
    grid: Optional[LagGrid] = None,
    *,
    jobs: Optional[int] = 1,
) -> list[SimulationResult]:
    """HY versus previous-tick estimation on Poisson-sampled Brownian pairs.

    For each lagger intensity, cfg.n_reps pairs are generated (cfg.lambda2 is
    replaced) and both estimators are averaged over repetitions, the previous-tick
    one on a grid of step cfg.mesh.
    """
    grid = grid or default_lag_grid()
    results = []
    for lambda2 in lambda2s:
        run = SimConfig(
            cfg.lambda1, float(lambda2), cfg.rho, cfg.T, cfg.mesh, cfg.seed, cfg.n_reps,
            cfg.sigma, cfg.price0,
        )
        pairs = map_ordered(partial(_generate_rep, cfg=run), range(run.n_reps), jobs)
        xs = {f"rep{r:05d}": p[0] for r, p in enumerate(pairs)}
        ys = {f"rep{r:05d}": p[1] for r, p in enumerate(pairs)}
        hy = cross_correlation_curve(xs, ys, grid, jobs=jobs)
        pt = previous_tick_curve(xs, ys, grid, cfg.mesh, jobs=jobs)
        logger.info(
            "lambda1/lambda2 = %.3g: HY rho(0) = %.4f, PT rho(0) = %.4f",
            run.lambda1 / run.lambda2,
            hy.rho[grid.zero_index],
            pt.rho[grid.zero_index],
        )
        results.append(
            SimulationResult(run.lambda1, run.lambda2, hy, pt, _safe_llr(hy), _safe_llr(pt))
        )
    return results


def synthetic_days(
    cfg: SimConfig,
    n_days: int,
    lag_d: LagSpec = 0.0,
    noise: float = 0.0,
    *,
    spread: Optional[float] = None,
) -> tuple[dict[str, TickSeries], dict[str, TickSeries]]:
    """Day mappings of generate_lagged_pair draws, one repetition per day."""
    xs, ys = {}, {}
    for d in range(n_days):
        x, y = generate_lagged_pair(cfg, lag_d, noise, rep=d, spread=spread)
        key = f"day{d:04d}"
        xs[key], ys[key] = x, y
    return xs, ys
