"""Randomized nonzero sampling and automatic factor selection.

Each entry is kept independently with probability ``s`` (the sparsification
factor); weights are kept unscaled.  For a tile expected to hold ``Z``
entries of a unit-weight matrix, the kept count is binomial with relative
error on the order of ``sqrt((1 - s) / (Z s))``; since the heaviest of the
``p^2`` tiles holds at least ``m / p^2`` entries, a target relative error
``eps`` translates to the factor ``s = p^2 / (eps^2 m + p^2)``.

The error model assumes unit weights; for weighted matrices the factor
formula is still applied but the tolerance guarantee is not claimed.

Reproducibility: decisions are drawn from numpy's Philox counter-based
generator keyed by the seed, one draw per entry in canonical row-major
order, so a (matrix, seed) pair gives the same sample on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SparseMatrix


@dataclass(frozen=True)
class SparsifyConfig:
    """Sampling mode: off (both None), fixed factor, or tolerance-driven."""

    factor: float | None = None
    eps: float | None = None
    seed: int = 0
    p_hint: int | None = None

    def __post_init__(self):
        if self.factor is not None and self.eps is not None:
            raise ValueError("factor and eps are mutually exclusive")
        if self.factor is not None and not 0 < self.factor <= 1:
            raise ValueError("sparsification factor must be in (0, 1]")
        if self.eps is not None:
            if not 0 < self.eps < 1:
                raise ValueError("error tolerance must be in (0, 1)")
            if self.p_hint is None or self.p_hint < 1:
                raise ValueError("tolerance mode needs an interval-count hint")

    @property
    def enabled(self) -> bool:
        return self.factor is not None or self.eps is not None

    def resolve_factor(self, m: int) -> float:
        """The keep probability this config implies for an m-entry matrix."""
        if self.factor is not None:
            return self.factor
        if self.eps is not None:
            return auto_factor(m, self.p_hint, self.eps)
        return 1.0


def auto_factor(m: int, p: int, eps: float) -> float:
    """Factor achieving expected relative error ``eps``, clamped to (0, 1]."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive")
    if eps <= 0:
        raise ValueError("error tolerance must be positive")
    return min(1.0, p * p / (eps * eps * m + p * p))


def predicted_error(m: int, p: int, s: float) -> float:
    """Expected relative load error when keeping a fraction ``s`` of m."""
    if not 0 < s <= 1:
        raise ValueError("factor must be in (0, 1]")
    return math.sqrt((1.0 - s) * p * p / (m * s))


def mnc_p_hint(n: int, Z: int) -> int:
    """Conservative interval-count hint for load-bounded runs.

    The smallest square holding Z unit entries has side ceil(sqrt(Z)), so no
    more than ceil(n / ceil(sqrt(Z))) intervals are ever needed on a binary
    matrix; a larger hint only makes the factor more conservative.
    """
    return max(1, math.ceil(n / math.ceil(math.sqrt(max(Z, 1)))))


def scale_bound(Z: int, s: float) -> int:
    """Load bound to use on a matrix sparsified with factor ``s``."""
    if not 0 < s <= 1:
        raise ValueError("factor must be in (0, 1]")
    return math.ceil(Z * s)


def sparsify(A: SparseMatrix, cfg: SparsifyConfig) -> SparseMatrix:
    """Keep each entry of ``A`` independently; dimension is preserved."""
    s = cfg.resolve_factor(A.m) if cfg.enabled else 1.0
    if s >= 1.0 or A.m == 0:
        return A
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    keep = rng.random(A.m) < s
    return SparseMatrix.from_arrays(A.n, A.rows[keep], A.cols[keep],
                                    A.weights[keep])
