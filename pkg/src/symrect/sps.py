"""Sparse prefix sums: a persistent binary indexed tree over the columns.

The structure answers "total weight in the rectangle from (1, 1) to (i, j)"
in O(log^2 n) time using O(m log n) space.  Column indices are inserted into
a binary indexed tree (BIT) in row-major order; persistence follows the fat
node approach, keeping for each BIT position a version list keyed by the
1-based row index of the inserting entry.  A query walks the BIT positions
of ``j`` and, at each, binary-searches for the latest version at or below
``i``.

Indices are 1-based inside this module (the usual BIT convention); the
public rectangle helper takes half-open 0-based bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import SparseMatrix

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _query_kernel(indptr, versions, values, i, j):
    r = 0
    while j > 0:
        lo = indptr[j]
        hi = indptr[j + 1]
        # rightmost version <= i
        while lo < hi:
            mid = (lo + hi) // 2
            if versions[mid] <= i:
                lo = mid + 1
            else:
                hi = mid
        if lo > indptr[j]:
            r += values[lo - 1]
        j -= j & (-j)
    return r


@dataclass(frozen=True)
class SparsePrefixSum:
    """Immutable rectangle-load index over a sparse matrix.

    ``versions[indptr[t]:indptr[t+1]]`` holds the strictly increasing row
    versions of BIT position ``t``; ``values`` holds the matching cumulative
    weights, which are nondecreasing within each position.
    """

    n: int
    indptr: np.ndarray = field(repr=False)
    versions: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @property
    def pairs(self) -> int:
        """Number of stored (version, value) pairs."""
        return len(self.versions)

    @classmethod
    def construct(cls, A: SparseMatrix) -> "SparsePrefixSum":
        """Insert all entries of ``A`` in row-major order.

        Vectorized: the BIT update paths of all entries are generated level
        by level, sorted by (position, row), accumulated per position, and
        deduplicated so each position keeps one cumulative value per row
        version.
        """
        n = A.n
        vrow = A.rows + 1  # version = 1-based row of the inserting entry
        pos = A.cols + 1
        val = A.weights.astype(np.int64)

        pos_parts, row_parts, val_parts = [], [], []
        while pos.size:
            pos_parts.append(pos)
            row_parts.append(vrow)
            val_parts.append(val)
            nxt = pos + (pos & -pos)
            keep = nxt <= n
            pos, vrow, val = nxt[keep], vrow[keep], val[keep]

        if pos_parts:
            upos = np.concatenate(pos_parts)
            urow = np.concatenate(row_parts)
            uval = np.concatenate(val_parts)
        else:
            upos = np.zeros(0, dtype=np.int64)
            urow = np.zeros(0, dtype=np.int64)
            uval = np.zeros(0, dtype=np.int64)

        order = np.lexsort((urow, upos))
        upos, urow, uval = upos[order], urow[order], uval[order]

        if len(upos):
            csum = np.cumsum(uval)
            new_group = np.concatenate([[True], upos[1:] != upos[:-1]])
            gid = np.cumsum(new_group) - 1
            group_start = np.flatnonzero(new_group)
            base = np.concatenate([[0], csum[group_start[1:] - 1]])
            cum = csum - base[gid]
            # keep the last update per (position, row version)
            last = np.concatenate(
                [(upos[:-1] != upos[1:]) | (urow[:-1] != urow[1:]), [True]])
            upos, urow, cum = upos[last], urow[last], cum[last]
        else:
            cum = uval

        counts = np.bincount(upos, minlength=n + 1)
        indptr = np.zeros(n + 2, dtype=np.int64)
        indptr[1:] = np.cumsum(counts)
        for a in (indptr, urow, cum):
            a.setflags(write=False)
        return cls(n=n, indptr=indptr, versions=urow, values=cum)

    def query(self, i: int, j: int) -> int:
        """Total weight of entries with 1-based row <= i and column <= j."""
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise ValueError(f"query index out of range: ({i}, {j})")
        if i == 0 or j == 0:
            return 0
        return int(_query_kernel(self.indptr, self.versions, self.values,
                                 i, j))

    def rect_load(self, r0: int, r1: int, c0: int, c1: int) -> int:
        """Weight in the half-open 0-based rectangle [r0, r1) x [c0, c1)."""
        if not (0 <= r0 <= r1 <= self.n and 0 <= c0 <= c1 <= self.n):
            raise ValueError(
                f"invalid rectangle bounds ({r0}, {r1}, {c0}, {c1})")
        return (self.query(r1, c1) - self.query(r0, c1)
                - self.query(r1, c0) + self.query(r0, c0))


class DirectRectLoads:
    """Rectangle loads by direct entry scans, without the prefix structure.

    Drop-in alternative to `SparsePrefixSum.rect_load` for memory-constrained
    runs; each query costs O(m).
    """

    def __init__(self, A: SparseMatrix):
        self.n = A.n
        self._rows = A.rows
        self._cols = A.cols
        self._weights = A.weights

    def rect_load(self, r0, r1, c0, c1):
        if not (0 <= r0 <= r1 <= self.n and 0 <= c0 <= c1 <= self.n):
            raise ValueError(
                f"invalid rectangle bounds ({r0}, {r1}, {c0}, {c1})")
        inside = ((self._rows >= r0) & (self._rows < r1)
                  & (self._cols >= c0) & (self._cols < c1))
        return int(self._weights[inside].sum())
