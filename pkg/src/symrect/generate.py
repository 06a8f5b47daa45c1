"""Synthetic matrix generators for tests, demos and benchmarks."""

from __future__ import annotations

import numpy as np

from .core import SparseMatrix


def random_matrix(n: int, m: int, seed: int, max_weight: int = 1) -> SparseMatrix:
    """Uniform random square matrix with exactly ``m`` distinct entries."""
    if m > n * n:
        raise ValueError(f"cannot place {m} distinct entries in a {n}x{n} matrix")
    rng = np.random.Generator(np.random.Philox(key=seed))
    codes = rng.choice(n * n, size=m, replace=False)
    rows, cols = np.divmod(codes, n)
    if max_weight > 1:
        weights = rng.integers(1, max_weight + 1, size=m)
    else:
        weights = None
    return SparseMatrix.from_arrays(n, rows, cols, weights)


def power_law_matrix(n: int, m: int, seed: int,
                     skew: float = 2.0) -> SparseMatrix:
    """Unit-weight matrix whose row/column popularity follows a power law.

    Coordinates are drawn independently with density concentrated near index
    zero (Pareto-style inverse transform), deduplicated, and topped up until
    ``m`` distinct entries exist; the first ``m`` distinct draws are kept so
    the coordinate distribution is not biased by the deduplication.
    """
    if m > n * n:
        raise ValueError(f"cannot place {m} distinct entries in a {n}x{n} matrix")
    rng = np.random.Generator(np.random.Philox(key=seed))
    drawn = np.zeros(0, dtype=np.int64)
    while True:
        batch = max(2 * m, 1 << 12)
        rows = (n * rng.random(batch) ** skew).astype(np.int64)
        cols = (n * rng.random(batch) ** skew).astype(np.int64)
        drawn = np.concatenate([drawn, rows * n + cols])
        uniq, first = np.unique(drawn, return_index=True)
        if len(uniq) >= m:
            codes = uniq[np.argsort(first)][:m]
            break
    rows, cols = np.divmod(codes, n)
    return SparseMatrix.from_arrays(n, rows, cols)
