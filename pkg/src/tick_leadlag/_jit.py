"""Optional numba acceleration for the event-sweep kernels."""

import logging

logger = logging.getLogger(__name__)

try:
    from numba import njit

    HAS_NUMBA = True
    logger.debug("Numba available for sweep kernels")
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False
    logger.info("Numba not available. Sweep kernels will run as plain Python loops.")

    def njit(*args, **kwargs):
        """Identity decorator used when numba is missing."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


__all__ = ["HAS_NUMBA", "njit"]
