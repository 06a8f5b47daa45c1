"""Square sparse matrices, cut vectors and tile-load metrics.

A matrix is partitioned by one cut vector per dimension.  A cut vector
``(c_0, ..., c_p)`` with ``0 = c_0 < c_1 < ... < c_p = n`` splits the index
range ``[0, n)`` into ``p`` contiguous intervals; a row vector and a column
vector together induce a grid of tiles.  The quality of a partition is its
load imbalance: the maximum tile load divided by the average tile load.
Imbalances are kept as exact integer ratios (`fractions.Fraction`) so that
comparisons are reproducible.

All types here are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class PartitioningError(ValueError):
    """Base class for all partitioning errors."""


class InvalidPartitionError(PartitioningError):
    """A cut vector does not satisfy the partition-vector invariants."""


class InfeasibleError(PartitioningError):
    """The requested interval count cannot be realized (e.g. p > n)."""


class UndefinedImbalanceError(PartitioningError):
    """Load imbalance is undefined because the total load is zero."""


class InfeasibleLoadBoundError(PartitioningError):
    """No partition satisfies the requested per-tile load bound.

    Carries the partial cut vector built so far and the position where the
    construction got stuck, so callers doing a parameter search can
    distinguish failure from a short result.
    """

    def __init__(self, message, partial_cuts=(), stuck_at=None):
        super().__init__(message)
        self.partial_cuts = tuple(partial_cuts)
        self.stuck_at = stuck_at


@dataclass(frozen=True)
class SparseMatrix:
    """An ``n x n`` sparse matrix with positive integer entry weights.

    Entries are stored in row-major order in three parallel arrays plus a
    CSR-style row pointer for row traversal.  The arrays are never mutated
    after construction.
    """

    n: int
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    indptr: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        """Number of stored entries."""
        return len(self.rows)

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @classmethod
    def from_arrays(cls, n, rows, cols, weights=None, merge_duplicates=False):
        """Build a matrix from coordinate arrays.

        Entries are canonicalized to row-major order.  Zero-weight entries
        are dropped.  Duplicate coordinates raise unless ``merge_duplicates``
        is set, in which case they are summed with a warning.
        """
        if n < 0:
            raise ValueError("matrix dimension must be nonnegative")
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if weights is None:
            weights = np.ones(len(rows), dtype=np.int64)
        else:
            weights = np.asarray(weights, dtype=np.int64)
        if not (len(rows) == len(cols) == len(weights)):
            raise ValueError("coordinate arrays must have equal length")
        if len(rows) and (rows.min() < 0 or rows.max() >= n
                          or cols.min() < 0 or cols.max() >= n):
            raise ValueError(f"entry index out of range for a {n}x{n} matrix")
        if (weights < 0).any():
            raise ValueError("entry weights must be nonnegative")

        keep = weights > 0
        rows, cols, weights = rows[keep], cols[keep], weights[keep]

        order = np.lexsort((cols, rows))
        rows, cols, weights = rows[order], cols[order], weights[order]

        if len(rows) > 1:
            dup = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
            if dup.any():
                if not merge_duplicates:
                    raise ValueError("duplicate coordinates in entry list")
                warnings.warn("duplicate coordinates merged by summation")
                # group id increments whenever the coordinate changes
                gid = np.concatenate([[0], np.cumsum(~dup)])
                weights = np.bincount(gid, weights=weights).astype(np.int64)
                first = np.concatenate([[True], ~dup])
                rows, cols = rows[first], cols[first]

        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        indptr = np.cumsum(indptr)
        for a in (rows, cols, weights, indptr):
            a.setflags(write=False)
        return cls(n=int(n), rows=rows, cols=cols, weights=weights,
                   indptr=indptr)

    @classmethod
    def from_entries(cls, n, entries, merge_duplicates=False):
        """Build a matrix from an iterable of ``(row, col, weight)`` triples."""
        entries = list(entries)
        if not entries:
            return cls.from_arrays(n, [], [], [])
        rows, cols, weights = zip(*entries)
        return cls.from_arrays(n, rows, cols, weights,
                               merge_duplicates=merge_duplicates)

    def transpose(self) -> "SparseMatrix":
        """Return the transpose; an involution on the entry set."""
        return SparseMatrix.from_arrays(self.n, self.cols, self.rows,
                                        self.weights)

    def to_dense(self) -> np.ndarray:
        """Dense copy, for small matrices and tests only."""
        dense = np.zeros((self.n, self.n), dtype=np.int64)
        dense[self.rows, self.cols] = self.weights
        return dense

    def row_entries(self, i):
        """Column indices and weights of row ``i``."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.cols[lo:hi], self.weights[lo:hi]

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.rows, other.rows)
                and np.array_equal(self.cols, other.cols)
                and np.array_equal(self.weights, other.weights))


@dataclass(frozen=True)
class PartitionVector:
    """A strictly increasing cut sequence ``0 = c_0 < ... < c_p = n``."""

    cuts: tuple

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        object.__setattr__(self, "cuts", cuts)
        if len(cuts) < 2:
            raise InvalidPartitionError("a cut vector needs at least 2 cuts")
        if cuts[0] != 0:
            raise InvalidPartitionError("first cut must be 0")
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise InvalidPartitionError(f"cuts must strictly increase: {cuts}")

    @property
    def intervals(self) -> int:
        return len(self.cuts) - 1

    @property
    def n(self) -> int:
        return self.cuts[-1]

    def check(self, n):
        if self.cuts[-1] != n:
            raise InvalidPartitionError(
                f"cut vector ends at {self.cuts[-1]}, expected {n}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.cuts, dtype=np.int64)

    def __iter__(self):
        return iter(self.cuts)

    def __len__(self):
        return len(self.cuts)


@dataclass(frozen=True)
class TileLoadGrid:
    """Tile loads for a (row cuts, column cuts) pair."""

    loads: np.ndarray
    row_cuts: PartitionVector
    col_cuts: PartitionVector

    @property
    def total(self) -> int:
        return int(self.loads.sum())

    @property
    def lmax(self) -> int:
        return int(self.loads.max())

    @property
    def lavg(self) -> Fraction:
        p, q = self.loads.shape
        return Fraction(self.total, p * q)

    @property
    def imbalance(self) -> Fraction:
        if self.total == 0:
            raise UndefinedImbalanceError(
                "load imbalance undefined for zero total load")
        p, q = self.loads.shape
        return Fraction(self.lmax * p * q, self.total)


def tile_loads(A: SparseMatrix, Cr: PartitionVector,
               Cc: PartitionVector) -> TileLoadGrid:
    """Compute the tile-load grid induced by row and column cut vectors.

    One pass over the entries; each coordinate is located by binary search
    in the cut sequence.
    """
    Cr.check(A.n)
    Cc.check(A.n)
    r_cuts = Cr.as_array()
    c_cuts = Cc.as_array()
    p, q = Cr.intervals, Cc.intervals
    ti = np.searchsorted(r_cuts, A.rows, side="right") - 1
    tj = np.searchsorted(c_cuts, A.cols, side="right") - 1
    flat = np.bincount(ti * q + tj, weights=A.weights, minlength=p * q)
    loads = flat.astype(np.int64).reshape(p, q)
    loads.setflags(write=False)
    return TileLoadGrid(loads=loads, row_cuts=Cr, col_cuts=Cc)


def load_imbalance(grid: TileLoadGrid) -> Fraction:
    """Maximum over average tile load; 1 means perfectly balanced."""
    return grid.imbalance


def symmetric_imbalance(A: SparseMatrix, C: PartitionVector) -> Fraction:
    """Imbalance of ``A`` under the same cut vector on rows and columns."""
    return tile_loads(A, C, C).imbalance


def leading_imbalance(A: SparseMatrix, C: PartitionVector, k: int):
    """Max load and imbalance restricted to tiles with both indices <= k."""
    if not 0 <= k < C.intervals:
        raise ValueError(f"interval index {k} out of range")
    grid = tile_loads(A, C, C)
    lead = grid.loads[: k + 1, : k + 1]
    total = int(lead.sum())
    lmax = int(lead.max())
    if total == 0:
        raise UndefinedImbalanceError(
            "load imbalance undefined for zero leading load")
    return lmax, Fraction(lmax * (k + 1) ** 2, total)


def uniform_partition(n: int, p: int) -> PartitionVector:
    """Cuts at ``floor(i * n / p)``; the checkerboard baseline."""
    if not 1 <= p <= n:
        raise InfeasibleError(f"cannot split {n} rows into {p} intervals")
    return PartitionVector(tuple(i * n // p for i in range(p + 1)))


def transpose(A: SparseMatrix) -> SparseMatrix:
    return A.transpose()
