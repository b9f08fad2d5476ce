"""Bounded, order-preserving worker pool."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from tick_leadlag.guardrails import resolve_jobs

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], items: Iterable[T], jobs: int | None = 1) -> list[R]:
    """Apply fn to every item, returning results in input order.

    Args:
        fn: Picklable callable (module-level function) when jobs > 1.
        items: Work items.
        jobs: Worker count; 1 runs inline, None uses available parallelism.

    Returns:
        List of results aligned with items, so reductions happen in a fixed order.
    """
    work = list(items)
    n_jobs = min(resolve_jobs(jobs), max(len(work), 1))
    if n_jobs == 1:
        return [fn(item) for item in work]

    logger.debug("Dispatching %d work items to %d processes", len(work), n_jobs)
    with ProcessPoolExecutor(max_workers=n_jobs) as executor:
        futures = [executor.submit(fn, item) for item in work]
        return [future.result() for future in futures]
