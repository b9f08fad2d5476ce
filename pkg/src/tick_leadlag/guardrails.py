"""Resource and numerical guardrails.

Provides safe defaults and clamping for the Monte Carlo and oracle workloads.
"""

import logging
import os
from typing import Any, Dict, List, Optional, Tuple

logger = logging.getLogger(__name__)

# ============================================================================
# THRESHOLD CONSTANTS
# ============================================================================

# Closed-form oracle: (lambda1 + lambda2) * T above this is rejected
ORACLE_MAX_EXPONENT = 500.0
ORACLE_DEFAULT_TOL = 1e-10
ORACLE_MAX_SERIES_TERMS = 5000

# Simulation thresholds
SIM_SAFE_MAX_REPS = 256
SIM_HARD_MAX_REPS = 20000
SIM_DEFAULT_REPS = 64
SIM_SAFE_MAX_EVENTS = 2_000_000  # expected Poisson events per leg per rep

# Worker pool
MAX_JOBS = 64


class OracleGuardError(Exception):
    """Raised when a closed-form evaluation would leave its numerically safe range."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(message)


# ============================================================================
# UTILITY FUNCTIONS
# ============================================================================


def clamp_int(x: int, lo: int, hi: int) -> int:
    """Clamp integer to range [lo, hi]."""
    return max(lo, min(hi, x))


def clamp_float(x: float, lo: float, hi: float) -> float:
    """Clamp float to range [lo, hi]."""
    return max(lo, min(hi, x))


def make_message(
    level: str, code: str, message: str, details: Optional[Dict] = None
) -> Dict[str, Any]:
    """Create a guardrail message."""
    msg = {"level": level, "code": code, "message": message}
    if details:
        msg["details"] = details
    return msg


def log_messages(messages: List[Dict[str, Any]], log: logging.Logger = logger) -> None:
    """Forward guardrail messages to a logger at their own level."""
    for msg in messages:
        level = logging.WARNING if msg["level"] == "warning" else logging.INFO
        log.log(level, "%s: %s", msg["code"], msg["message"])


# ============================================================================
# ORACLE GUARD
# ============================================================================


def check_oracle_exponent(lambda1: float, lambda2: float, T: float) -> float:
    """Return (lambda1 + lambda2) * T, rejecting values beyond the overflow guard.

    Raises:
        OracleGuardError: If the exponent exceeds ORACLE_MAX_EXPONENT.
    """
    exponent = (lambda1 + lambda2) * T
    if exponent > ORACLE_MAX_EXPONENT:
        raise OracleGuardError(
            f"(lambda1 + lambda2) * T = {exponent:.6g} exceeds the guard "
            f"{ORACLE_MAX_EXPONENT:g}; use the Monte Carlo estimate instead",
            {"lambda1": lambda1, "lambda2": lambda2, "T": T, "exponent": exponent},
        )
    return exponent


# ============================================================================
# SIMULATION NORMALIZATION
# ============================================================================


def normalize_simulation_settings(
    settings: Dict[str, Any],
    *,
    advanced_unlocked: bool = False,
) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    """Normalize simulation settings with guardrails.

    Args:
        settings: Raw simulation settings dict (lambda1, lambda2s, rho, T, mesh, n_reps).
        advanced_unlocked: Whether the safe repetition cap is lifted.

    Returns:
        Tuple of (normalized_settings, messages).
    """
    messages = []
    norm = dict(settings)

    n_reps = int(settings.get("n_reps", SIM_DEFAULT_REPS))
    orig_reps = n_reps
    n_reps = clamp_int(n_reps, 1, SIM_HARD_MAX_REPS)
    if n_reps < orig_reps:
        messages.append(
            make_message(
                "warning",
                "SIM_HARD_CLAMPED",
                f"Repetitions clamped to hard limit (n_reps≤{SIM_HARD_MAX_REPS}).",
            )
        )

    if not advanced_unlocked and n_reps > SIM_SAFE_MAX_REPS:
        messages.append(
            make_message(
                "warning",
                "SIM_CLAMPED",
                f"Clamped to safe limit (n_reps≤{SIM_SAFE_MAX_REPS}). "
                "Pass --advanced for larger runs.",
                {"original_reps": orig_reps},
            )
        )
        n_reps = SIM_SAFE_MAX_REPS

    rho = float(settings.get("rho", 0.8))
    if not -1.0 <= rho <= 1.0:
        messages.append(
            make_message("warning", "SIM_RHO_CLAMPED", f"rho={rho} clamped to [-1, 1].")
        )
        rho = clamp_float(rho, -1.0, 1.0)

    T = float(settings.get("T", 30600.0))
    mesh = float(settings.get("mesh", 5.0))
    if mesh <= 0 or mesh > T:
        messages.append(
            make_message(
                "warning",
                "SIM_MESH_FIXED",
                f"mesh must lie in (0, T]. Reset to {min(1.0, T):g}.",
            )
        )
        mesh = min(1.0, T)

    lambdas = [float(settings.get("lambda1", 0.2))] + [
        float(v) for v in settings.get("lambda2s", [])
    ]
    expected = max(lambdas) * T if lambdas else 0.0
    if expected > SIM_SAFE_MAX_EVENTS:
        messages.append(
            make_message(
                "warning",
                "SIM_LARGE_SAMPLE",
                f"About {expected:.3g} events per leg and repetition. This may be slow.",
            )
        )

    norm["n_reps"] = n_reps
    norm["rho"] = rho
    norm["T"] = T
    norm["mesh"] = mesh
    return norm, messages


# ============================================================================
# WORKER POOL
# ============================================================================


def resolve_jobs(requested: Optional[int]) -> int:
    """Resolve a worker count: None means available parallelism, clamped to MAX_JOBS."""
    if requested is None or requested <= 0:
        try:
            available = len(os.sched_getaffinity(0))
        except AttributeError:
            available = os.cpu_count() or 1
        return clamp_int(available, 1, MAX_JOBS)
    return clamp_int(int(requested), 1, MAX_JOBS)
