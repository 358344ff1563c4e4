"""Sequence acceleration for slowly convergent oscillatory series.

Pairings of delta-normalized states converge only conditionally when summed
shell by shell (partial sums oscillate with an O(n^{-1/2}) envelope).  The
limit is recovered from finitely many terms with the epsilon algorithm,
which eliminates finite mixtures of geometric transients exactly and
accelerates the power-law remainder.
"""

from __future__ import annotations

import numpy as np


def compress_series(terms: np.ndarray, rel_tol: float = 1e-13) -> np.ndarray:
    """Drop exactly/nearly zero terms (they degenerate the epsilon table)."""
    terms = np.asarray(terms, dtype=complex)
    scale = float(np.max(np.abs(terms))) if terms.size else 0.0
    if scale == 0.0:
        return terms[:0]
    return terms[np.abs(terms) > rel_tol * scale]


def wynn_epsilon(partial_sums: np.ndarray) -> complex:
    """Limit estimate for a sequence of partial sums via the epsilon table.

    Walks the even columns of the table and returns the deepest finite
    entry; equal consecutive sums (zero differences) must be compressed out
    beforehand.
    """
    S = np.asarray(partial_sums, dtype=complex)
    if S.size == 0:
        return 0j
    if S.size == 1:
        return complex(S[0])
    prev2 = np.zeros(len(S) + 1, dtype=complex)
    prev1 = S.copy()
    best = complex(S[-1])
    col = 0
    while len(prev1) >= 2:
        d = np.diff(prev1)
        d = np.where(np.abs(d) < 1e-280, np.nan, d)
        with np.errstate(divide="ignore", invalid="ignore"):
            cur = prev2[1:len(prev1)] + 1.0 / d
        col += 1
        finite = np.isfinite(cur)
        if not np.any(finite):
            break
        if col % 2 == 0:
            best = complex(cur[finite][-1])
        prev2, prev1 = prev1, cur
    return best


def accelerated_sum(terms: np.ndarray) -> tuple[complex, complex]:
    """(accelerated limit, plain truncated sum) of a term sequence."""
    terms = np.asarray(terms, dtype=complex)
    plain = complex(terms.sum())
    cc = compress_series(terms)
    if cc.size == 0:
        return 0j, plain
    return wynn_epsilon(np.cumsum(cc)), plain
