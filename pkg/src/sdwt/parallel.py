"""Deterministic thread mapping and fixed-order reductions.

Work is split into chunks whose boundaries depend only on the input size,
never on the worker count, and results are recombined in index order.
Changing the thread count therefore changes only who computes each chunk,
not a single bit of the output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_ENV_THREADS = "SDWT_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    """Explicit argument, else SDWT_THREADS, else 1."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(_ENV_THREADS)
    return max(1, int(env)) if env else 1


def tmap(fn, items, threads: int | None = None):
    """Map fn over items, preserving order; threaded when threads > 1."""
    items = list(items)
    n = resolve_threads(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def pairwise_sum(values) -> complex:
    """Fixed-order pairwise reduction (numpy's pairwise summation on a 1D array)."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    return arr.sum()
