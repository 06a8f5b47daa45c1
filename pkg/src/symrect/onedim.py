"""Optimal 1D bottleneck partitioning and the 2D-to-1D refinement kernel.

Fixing one dimension's cut vector reduces the 2D problem to partitioning
rows of an interval-sum table: the load of a row interval is the maximum of
its per-column-interval strip sums, i.e. the maximum tile load in that row
of tiles.  `optimal_1d_partition` minimizes this bottleneck exactly via a
parametric search: candidate bottleneck values are binary-searched over the
integers and each candidate is checked with a greedy probe that pushes every
cut as far right as it can go.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import InfeasibleError, PartitionVector, SparseMatrix


@dataclass(frozen=True)
class IntervalSumTable:
    """Per-column-interval prefix sums over rows.

    ``prefix[i, j]`` is the weight of rows < i within column interval j, so
    a strip sum over rows [a, b) is ``prefix[b, j] - prefix[a, j]``.
    """

    prefix: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.prefix.shape[0] - 1

    @property
    def num_strips(self) -> int:
        return self.prefix.shape[1]


def build_interval_sums(A: SparseMatrix,
                        Cc: PartitionVector) -> IntervalSumTable:
    """Accumulate row loads per column interval in one row-major pass."""
    Cc.check(A.n)
    cuts = Cc.as_array()
    strip = np.searchsorted(cuts, A.cols, side="right") - 1
    table = np.zeros((A.n + 1, Cc.intervals), dtype=np.int64)
    np.add.at(table, (A.rows + 1, strip), A.weights)
    np.cumsum(table, axis=0, out=table)
    table.setflags(write=False)
    return IntervalSumTable(prefix=table)


def _greedy_probe(prefix: np.ndarray, p: int, bound: int):
    """Place up to ``p`` cuts greedily so no strip sum exceeds ``bound``.

    Returns the cut list (without trailing padding) or None if infeasible.
    Each cut is pushed to the largest feasible position, which both proves
    feasibility of the bound and yields deterministic, lexicographically
    largest cuts.
    """
    n = prefix.shape[0] - 1
    cuts = [0]
    a = 0
    for _ in range(p):
        if (prefix[a + 1] - prefix[a]).max(initial=0) > bound:
            return None  # a single row already exceeds the bound
        lo, hi = a + 1, n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if (prefix[mid] - prefix[a]).max(initial=0) <= bound:
                lo = mid
            else:
                hi = mid - 1
        cuts.append(lo)
        a = lo
        if a == n:
            return cuts
    return None


def _pad_cuts(cuts, n: int, p: int):
    """Extend a short cut list to exactly p intervals.

    Extra cuts go to the smallest free positions; refining a partition never
    increases its bottleneck.
    """
    have = set(cuts)
    t = 1
    while len(have) < p + 1:
        if t not in have:
            have.add(t)
        t += 1
    return tuple(sorted(have))


def optimal_1d_partition(table: IntervalSumTable, p: int) -> PartitionVector:
    """Row cuts minimizing the bottleneck strip sum, optimal for any table."""
    n = table.n
    if not 1 <= p <= n:
        raise InfeasibleError(f"cannot split {n} rows into {p} intervals")
    prefix = table.prefix
    lo = 0
    hi = int(prefix[n].max(initial=0))
    while lo < hi:
        mid = (lo + hi) // 2
        if _greedy_probe(prefix, p, mid) is not None:
            hi = mid
        else:
            lo = mid + 1
    cuts = _greedy_probe(prefix, p, lo)
    assert cuts is not None
    return PartitionVector(_pad_cuts(cuts, n, p))


def refinement(A: SparseMatrix, Cc: PartitionVector,
               p: int) -> PartitionVector:
    """Optimal row partition of ``A`` for the fixed column partition ``Cc``."""
    return optimal_1d_partition(build_interval_sums(A, Cc), p)
