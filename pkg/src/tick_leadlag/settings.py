"""Analysis settings: defaults, sanitization and loading.

Settings are plain nested dicts so they serialize directly into run manifests.
"""

import copy
import logging
from pathlib import Path
from typing import Any, Optional

from tick_leadlag.contracts import load_json, validate_settings_json
from tick_leadlag.hycorr import LagGrid, default_lag_grid

logger = logging.getLogger(__name__)

EXECUTION_MODES = ["midquote", "cross_spread"]
BENCHMARK_KINDS = ["random", "autocorrelation"]
OUTPUT_FORMATS = ["json", "csv"]
NETWORK_CORRELATIONS = ["max_corr", "rho0"]


def default_analysis_settings() -> dict[str, Any]:
    """Return default settings for every analysis step."""
    return {
        "session": {"trim_minutes": 30.0, "timestamp_tolerance_ms": 0.0},
        "lag_grid": {"max_lag_s": 300.0, "custom": None},
        "summary": {"spline_mesh_s": 0.1, "use_abs": False},
        "intraday": {"slice_minutes": 5.0, "max_lag_s": 60.0},
        "threshold": {"theta_halfticks": [1, 2, 3, 4, 5, 6]},
        "response": {
            "max_lag_s": 10.0,
            "step_s": 0.1,
            "theta_halfticks": [-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6],
        },
        "forecast": {
            "window_days": 20,
            "max_lag_s": 10.0,
            "z": 1.96,
            "execution": "midquote",
            "benchmark": "random",
        },
        "simulation": {
            "lambda1": 0.2,
            "lambda2s": [0.2, 0.1, 0.04, 0.02],
            "rho": 0.8,
            "T": 30600.0,
            "mesh": 5.0,
            "n_reps": 64,
        },
        "network": {"correlation": "max_corr"},
        "run": {"seed": 1, "jobs": None, "format": "json"},
    }


def _clamp_float(value: Any, lo: Optional[float], hi: Optional[float], default: float) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        return default
    if v != v:
        return default
    if lo is not None and v < lo:
        v = lo
    if hi is not None and v > hi:
        v = hi
    return v


def _clamp_int(value: Any, lo: int, hi: Optional[int], default: int) -> int:
    try:
        v = int(value)
    except (TypeError, ValueError):
        return default
    v = max(lo, v)
    return min(hi, v) if hi is not None else v


def _normalize_enum(value: Any, allowed: list[str], default: str) -> str:
    value = str(value).strip().lower() if value is not None else default
    return value if value in allowed else default


def _int_list(values: Any, default: list[int], *, allow_zero: bool = False) -> list[int]:
    if not isinstance(values, (list, tuple)):
        return list(default)
    out = []
    for v in values:
        try:
            iv = int(v)
        except (TypeError, ValueError):
            continue
        if iv != 0 or allow_zero:
            out.append(iv)
    return out or list(default)


def sanitize_settings(settings: dict[str, Any]) -> dict[str, Any]:
    """Coerce user settings to safe values; unknown keys are dropped.

    Args:
        settings: User-provided (possibly partial) settings.

    Returns:
        Complete settings dict valid against contracts/settings.json.
    """
    d = default_analysis_settings()
    clean: dict[str, Any] = {}

    sess = settings.get("session", {})
    clean["session"] = {
        "trim_minutes": _clamp_float(sess.get("trim_minutes"), 0.0, 240.0, 30.0),
        "timestamp_tolerance_ms": _clamp_float(
            sess.get("timestamp_tolerance_ms"), 0.0, 60_000.0, 0.0
        ),
    }

    grid = settings.get("lag_grid", {})
    custom = grid.get("custom")
    if custom is not None:
        try:
            custom = sorted({float(v) for v in custom if float(v) > 0})
        except (TypeError, ValueError):
            custom = None
        custom = custom or None
    clean["lag_grid"] = {
        "max_lag_s": _clamp_float(grid.get("max_lag_s"), 0.01, 3600.0, 300.0),
        "custom": custom,
    }

    summ = settings.get("summary", {})
    clean["summary"] = {
        "spline_mesh_s": _clamp_float(summ.get("spline_mesh_s"), 0.001, 10.0, 0.1),
        "use_abs": bool(summ.get("use_abs", False)),
    }

    intra = settings.get("intraday", {})
    clean["intraday"] = {
        "slice_minutes": _clamp_float(intra.get("slice_minutes"), 1.0, 480.0, 5.0),
        "max_lag_s": _clamp_float(intra.get("max_lag_s"), 1.0, 3600.0, 60.0),
    }

    thr = settings.get("threshold", {})
    clean["threshold"] = {
        "theta_halfticks": [
            abs(v)
            for v in _int_list(thr.get("theta_halfticks"), d["threshold"]["theta_halfticks"])
        ],
    }

    resp = settings.get("response", {})
    clean["response"] = {
        "max_lag_s": _clamp_float(resp.get("max_lag_s"), 0.1, 600.0, 10.0),
        "step_s": _clamp_float(resp.get("step_s"), 0.001, 60.0, 0.1),
        "theta_halfticks": _int_list(
            resp.get("theta_halfticks"), d["response"]["theta_halfticks"]
        ),
    }

    fc = settings.get("forecast", {})
    clean["forecast"] = {
        "window_days": _clamp_int(fc.get("window_days"), 1, 250, 20),
        "max_lag_s": _clamp_float(fc.get("max_lag_s"), 0.01, 300.0, 10.0),
        "z": _clamp_float(fc.get("z"), 0.0, 10.0, 1.96),
        "execution": _normalize_enum(fc.get("execution"), EXECUTION_MODES, "midquote"),
        "benchmark": _normalize_enum(fc.get("benchmark"), BENCHMARK_KINDS, "random"),
    }

    sim = settings.get("simulation", {})
    lambda2s = sim.get("lambda2s", d["simulation"]["lambda2s"])
    try:
        lambda2s = [float(v) for v in lambda2s if float(v) > 0]
    except (TypeError, ValueError):
        lambda2s = []
    clean["simulation"] = {
        "lambda1": _clamp_float(sim.get("lambda1"), 1e-6, None, 0.2),
        "lambda2s": lambda2s or list(d["simulation"]["lambda2s"]),
        "rho": _clamp_float(sim.get("rho"), -1.0, 1.0, 0.8),
        "T": _clamp_float(sim.get("T"), 1e-3, None, 30600.0),
        "mesh": _clamp_float(sim.get("mesh"), 1e-6, None, 5.0),
        "n_reps": _clamp_int(sim.get("n_reps"), 1, None, 64),
    }

    net = settings.get("network", {})
    clean["network"] = {
        "correlation": _normalize_enum(net.get("correlation"), NETWORK_CORRELATIONS, "max_corr"),
    }

    run = settings.get("run", {})
    jobs = run.get("jobs")
    clean["run"] = {
        "seed": _clamp_int(run.get("seed"), 0, None, 1),
        "jobs": None if jobs is None else _clamp_int(jobs, 1, None, 1),
        "format": _normalize_enum(run.get("format"), OUTPUT_FORMATS, "json"),
    }
    return clean


def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def load_settings(path: str | Path | None = None) -> dict[str, Any]:
    """Defaults merged with an optional JSON file, sanitized and validated.

    Raises:
        FileNotFoundError: path does not exist.
        ContractValidationError: Sanitized settings fail the contract.
    """
    settings = default_analysis_settings()
    if path is not None:
        user = load_json(path)
        settings = _deep_merge(settings, user)
        logger.info("Loaded settings from %s", path)
    clean = sanitize_settings(settings)
    validate_settings_json(clean)
    return clean


def build_lag_grid(settings: dict[str, Any]) -> LagGrid:
    """Lag grid from settings: custom positive lags mirrored, else the default grid."""
    grid = settings.get("lag_grid", {})
    max_lag = float(grid.get("max_lag_s", 300.0))
    custom = grid.get("custom")
    if custom:
        return LagGrid.from_positive([v for v in custom if v <= max_lag])
    return default_lag_grid(max_lag)
