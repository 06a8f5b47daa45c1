"""Symmetric partitioning heuristics and the non-symmetric baseline.

Two problem flavors are covered:

* min-imbalance: given the interval count ``p``, minimize the load
  imbalance (`rac`, `bac`, `uniform_partition`, and the non-symmetric
  `nicol2d` baseline);
* min-intervals: given a per-tile load bound ``Z``, minimize the number of
  intervals (`pal`, `opal`, `bal`).

The two are duals: `bac` solves min-imbalance by binary-searching the bound
fed to a min-intervals solver, and `bal` solves min-intervals by
binary-searching the interval count fed to a min-imbalance solver.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .core import (InfeasibleError, InfeasibleLoadBoundError, PartitionVector,
                   SparseMatrix, symmetric_imbalance, tile_loads,
                   uniform_partition)
from .onedim import refinement
from .sps import SparsePrefixSum

DEFAULT_TAU = 10

_SINGLE = lambda n: PartitionVector((0, n))


def rac(A: SparseMatrix, p: int, tau: int = DEFAULT_TAU) -> PartitionVector:
    """Refine-a-cut: 1D refinement applied symmetrically.

    Refines rows of ``A`` and of its transpose starting from the single
    interval, keeps the direction with the better symmetric imbalance, and
    keeps refining in that direction for up to ``tau`` more rounds (early
    exit when a cut vector repeats).  Heuristic; no convergence guarantee.
    """
    n = A.n
    if not 1 <= p <= n:
        raise InfeasibleError(f"cannot split {n} rows into {p} intervals")
    if A.m == 0:
        return uniform_partition(n, p)

    whole = _SINGLE(n)
    At = A.transpose()
    Cr = refinement(A, whole, p)
    Cc = refinement(At, whole, p)
    if symmetric_imbalance(A, Cr) < symmetric_imbalance(A, Cc):
        C, M = Cr, A
    else:
        C, M = Cc, At

    seen = {C.cuts}
    for _ in range(tau):
        C = refinement(M, C, p)
        if C.cuts in seen:
            break
        seen.add(C.cuts)
    return C


def nicol2d(A: SparseMatrix, p: int, q: int, tau: int = DEFAULT_TAU):
    """Alternating row/column refinement; non-symmetric baseline.

    Returns ``(row cuts, column cuts)``.  Stops when the vector pair repeats
    or after ``tau`` alternations.
    """
    n = A.n
    if not (1 <= p <= n and 1 <= q <= n):
        raise InfeasibleError(f"cannot split {n} rows into {p}x{q} tiles")
    if A.m == 0:
        return uniform_partition(n, p), uniform_partition(n, q)

    At = A.transpose()
    Cc = uniform_partition(n, q)
    Cr = refinement(A, Cc, p)
    seen = {(Cr.cuts, Cc.cuts)}
    for _ in range(tau):
        Cc = refinement(At, Cr, q)
        Cr = refinement(A, Cc, p)
        key = (Cr.cuts, Cc.cuts)
        if key in seen:
            break
        seen.add(key)
    return Cr, Cc


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of one furthest-cut probe."""

    cut: int
    feasible: bool
    max_load: int


def _probe_next_cut(loads, cuts, bound: int, n: int) -> ProbeResult:
    """Furthest next cut keeping every newly created tile within ``bound``.

    Only the tiles touched by the candidate cut need checking: the new
    diagonal tile plus the bottom row strip and right column strip against
    each already-determined interval.  All of these grow monotonically with
    the candidate position, so the largest feasible position is found by
    binary search.
    """
    prev = cuts[-1]

    def max_new_tile(t):
        worst = loads.rect_load(prev, t, prev, t)
        for a, b in zip(cuts, cuts[1:]):
            worst = max(worst,
                        loads.rect_load(prev, t, a, b),
                        loads.rect_load(a, b, prev, t))
        return worst

    first = max_new_tile(prev + 1)
    if first > bound:
        return ProbeResult(cut=prev, feasible=False, max_load=first)
    lo, hi = prev + 1, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if max_new_tile(mid) <= bound:
            lo = mid
        else:
            hi = mid - 1
    return ProbeResult(cut=lo, feasible=True, max_load=max_new_tile(lo))


def pal(A: SparseMatrix, Z: int, loads=None) -> PartitionVector:
    """Probe-a-load: greedy furthest cuts under the load bound ``Z``.

    Each cut is the largest position keeping every tile of the leading
    region within ``Z``, so the result is locally maximal: advancing any cut
    by one position violates the bound.  ``loads`` may be any object with a
    ``rect_load`` method; by default a `SparsePrefixSum` is built.
    """
    n = A.n
    if loads is None:
        loads = SparsePrefixSum.construct(A)
    cuts = [0]
    while cuts[-1] != n:
        probe = _probe_next_cut(loads, cuts, Z, n)
        if not probe.feasible:
            raise InfeasibleLoadBoundError(
                f"load bound {Z} infeasible at position {probe.cut}",
                partial_cuts=cuts, stuck_at=probe.cut)
        cuts.append(probe.cut)
    return PartitionVector(tuple(cuts))


@dataclass(frozen=True)
class TransformedMatrix:
    """Diagonal-major reordering of a square matrix.

    Entry ``A(i, j) = v`` is stored at row ``max(i, j)``, column
    ``min(i, j)`` with a flag recording whether the source was below the
    diagonal.  Traversing the transformed rows in order visits the source
    entries of each leading principal submatrix before any entry outside it.
    """

    n: int
    cols: np.ndarray = field(repr=False)
    lower: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    indptr: np.ndarray = field(repr=False)

    def row_entries(self, i):
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.cols[lo:hi], self.lower[lo:hi], self.weights[lo:hi]

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())


def transform(A: SparseMatrix) -> TransformedMatrix:
    trow = np.maximum(A.rows, A.cols)
    tcol = np.minimum(A.rows, A.cols)
    lower = A.rows > A.cols
    order = np.lexsort((lower, tcol, trow))
    trow, tcol, lower = trow[order], tcol[order], lower[order]
    weights = A.weights[order]
    indptr = np.zeros(A.n + 1, dtype=np.int64)
    np.add.at(indptr, trow + 1, 1)
    indptr = np.cumsum(indptr)
    for a in (tcol, lower, weights, indptr):
        a.setflags(write=False)
    return TransformedMatrix(n=A.n, cols=tcol, lower=lower, weights=weights,
                             indptr=indptr)


def opal(A: SparseMatrix, Z: int) -> PartitionVector:
    """Ordered probe-a-load: one diagonal-major sweep.

    Produces exactly the cut vector of `pal` without rectangle queries.
    While scanning transformed rows, per-interval accumulators track the
    loads of the tiles a candidate cut would create (bottom row strip plus
    diagonal in one set, right column strip in the other); the cut is placed
    at the first row whose inclusion would push some such tile past ``Z``.
    """
    n = A.n
    tm = transform(A)
    cuts = [0]
    i = 0
    while i < n:
        k = len(cuts)
        lower_diag = [0] * k  # row strip tiles + diagonal tile
        upper = [0] * k       # column strip tiles
        lmax = 0
        while i < n:
            overflow = False
            jcols, jlower, jw = tm.row_entries(i)
            for j, low, v in zip(jcols, jlower, jw):
                t = bisect_right(cuts, j) - 1
                if low or t == k - 1:
                    lower_diag[t] += v
                    lmax = max(lmax, lower_diag[t])
                else:
                    upper[t] += v
                    lmax = max(lmax, upper[t])
                if lmax > Z:
                    overflow = True
                    break
            if overflow:
                break
            i += 1
        if cuts[-1] == i:
            raise InfeasibleLoadBoundError(
                f"load bound {Z} infeasible at position {i}",
                partial_cuts=cuts, stuck_at=i)
        cuts.append(i)
    return PartitionVector(tuple(cuts))


def _row_load_prefix(A: SparseMatrix) -> np.ndarray:
    prefix = np.zeros(A.n + 1, dtype=np.int64)
    np.add.at(prefix, A.rows + 1, A.weights)
    return np.cumsum(prefix)


def _split_to_intervals(A: SparseMatrix, cuts, p: int) -> PartitionVector:
    """Refine a cut vector to exactly ``p`` intervals.

    Repeatedly splits the widest interval (leftmost on ties) at the position
    that best halves its row load.  Splitting never increases any tile load.
    """
    rowp = _row_load_prefix(A)
    cuts = list(cuts)
    while len(cuts) - 1 < p:
        widths = [b - a for a, b in zip(cuts, cuts[1:])]
        k = max(range(len(widths)), key=lambda idx: widths[idx])
        a, b = cuts[k], cuts[k + 1]
        if b - a < 2:
            raise InfeasibleError(f"cannot refine to {p} intervals")
        span = rowp[b] - rowp[a]
        t = min(range(a + 1, b),
                key=lambda x: (abs(2 * (rowp[x] - rowp[a]) - span), x))
        cuts.insert(k + 1, t)
    return PartitionVector(tuple(cuts))


def bac(A: SparseMatrix, p: int, mnc=None, loads=None,
        window: int = 4) -> PartitionVector:
    """Bound-a-cut: solve min-imbalance through a min-intervals solver.

    Binary-searches the smallest load bound for which ``mnc`` needs at most
    ``p`` intervals; weights are integers so the search runs over integers.
    Because the greedy solver's actual bottleneck is not monotone in the
    bound, the ``window`` bounds just above the smallest feasible one are
    also evaluated and the candidate with the smallest realized maximum
    tile load wins.  Vectors shorter than ``p`` intervals are refined to
    exactly ``p`` so the imbalance is always taken over ``p^2`` tiles.
    """
    n = A.n
    if not 1 <= p <= n:
        raise InfeasibleError(f"cannot split {n} rows into {p} intervals")
    if mnc is None:
        if loads is None:
            loads = SparsePrefixSum.construct(A)
        shared = loads

        def mnc(mat, bound):
            return pal(mat, bound, loads=shared)

    def attempt(bound):
        try:
            C = mnc(A, bound)
        except InfeasibleLoadBoundError:
            return None
        return C if C.intervals <= p else None

    lo, hi = 0, A.total_weight
    while lo < hi:
        mid = (lo + hi) // 2
        if attempt(mid) is not None:
            hi = mid
        else:
            lo = mid + 1

    best = None
    for Z in range(lo, min(A.total_weight, lo + window) + 1):
        C = attempt(Z)
        if C is None:
            continue
        if C.intervals < p:
            C = _split_to_intervals(A, C.cuts, p)
        lmax = tile_loads(A, C, C).lmax
        if best is None or lmax < best[0]:
            best = (lmax, C)
    assert best is not None
    return best[1]


def bal(A: SparseMatrix, Z: int, mli=rac) -> PartitionVector:
    """Bound-a-load: solve min-intervals through a min-imbalance solver.

    Binary-searches the interval count for the smallest ``p`` whose ``mli``
    result keeps all tile loads within ``Z``.  For unit-weight matrices the
    initial upper bound is tightened to ``ceil(n / ceil(sqrt(Z)))``; if that
    tightened range turns out infeasible the remainder of ``[1, n]`` is
    searched before giving up.
    """
    n = A.n
    if Z < 1:
        raise ValueError("load bound must be at least 1")
    if A.m == 0:
        return _SINGLE(n)

    cache = {}

    def solve(p):
        if p not in cache:
            C = mli(A, p)
            cache[p] = (C, tile_loads(A, C, C).lmax)
        return cache[p]

    def search(lo, hi):
        while lo < hi:
            mid = (lo + hi) // 2
            if solve(mid)[1] <= Z:
                hi = mid
            else:
                lo = mid + 1
        return lo

    u = n
    if (A.weights == 1).all():
        u = min(n, math.ceil(n / math.ceil(math.sqrt(Z))))
    p = search(1, u)
    if solve(p)[1] > Z and u < n:
        p = search(u + 1, n)
    C, lmax = solve(p)
    if lmax > Z:
        raise InfeasibleLoadBoundError(
            f"load bound {Z} infeasible even with {n} intervals",
            partial_cuts=C.cuts, stuck_at=n)
    return C
