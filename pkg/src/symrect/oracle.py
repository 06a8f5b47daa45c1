"""Ground-truth solvers by exhaustive search, plus a hardness-style
instance generator.

`optimal_mli` and `optimal_mnc` enumerate every cut placement (with
pruning) and therefore only accept desk-scale instances; they exist to
grade the heuristics, not to compete with them.  `vc_to_srp` turns a vertex
cover question into an equivalent symmetric-partition feasibility question,
giving a family of instances whose answer is known from an independent
brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (InfeasibleError, InfeasibleLoadBoundError, PartitionVector,
                   SparseMatrix, UndefinedImbalanceError)

DEFAULT_CAP_N = 24
DEFAULT_CAP_P = 8


class TooLargeError(ValueError):
    """Instance exceeds the exhaustive-search size cap."""


def _dense_prefix(A: SparseMatrix) -> np.ndarray:
    P = np.zeros((A.n + 1, A.n + 1), dtype=np.int64)
    P[A.rows + 1, A.cols + 1] = A.weights
    np.cumsum(P, axis=0, out=P)
    np.cumsum(P, axis=1, out=P)
    return P


def _new_tile_max(P, cuts, t):
    """Max load among tiles created by appending cut ``t``; grows with t."""
    prev = cuts[-1]

    def rect(a, b, c, d):
        return P[b, d] - P[a, d] - P[b, c] + P[a, c]

    worst = rect(prev, t, prev, t)
    for a, b in zip(cuts, cuts[1:]):
        worst = max(worst, rect(prev, t, a, b), rect(a, b, prev, t))
    return int(worst)


def optimal_mli(A: SparseMatrix, p: int, cap: int = DEFAULT_CAP_N):
    """Optimal symmetric cuts for interval count ``p`` by enumeration.

    Returns ``(cuts, imbalance)``.  Ties on the bottleneck go to the
    lexicographically smallest cut vector.  Partial prefixes whose leading
    tiles already reach the best known maximum are abandoned.
    """
    n = A.n
    if n > cap or p > DEFAULT_CAP_P:
        raise TooLargeError(
            f"instance (n={n}, p={p}) exceeds the exhaustive-search cap "
            f"(n<={cap}, p<={DEFAULT_CAP_P})")
    if not 1 <= p <= n:
        raise InfeasibleError(f"cannot split {n} rows into {p} intervals")
    total = A.total_weight
    if total == 0:
        raise UndefinedImbalanceError("imbalance undefined for empty matrix")

    P = _dense_prefix(A)
    best_val = total + 1
    best_cuts = None

    def rec(cuts, lead_max):
        nonlocal best_val, best_cuts
        placed = len(cuts) - 1
        if placed == p - 1:
            final = max(lead_max, _new_tile_max(P, cuts, n))
            if final < best_val:
                best_val = final
                best_cuts = cuts + (n,)
            return
        hi = n - (p - 1 - placed)
        for t in range(cuts[-1] + 1, hi + 1):
            lm = max(lead_max, _new_tile_max(P, cuts, t))
            if lm >= best_val:
                break  # new-tile loads only grow with t
            rec(cuts + (t,), lm)

    rec((0,), 0)
    assert best_cuts is not None
    return PartitionVector(best_cuts), Fraction(best_val * p * p, total)


def optimal_mnc(A: SparseMatrix, Z: int,
                cap: int = DEFAULT_CAP_N) -> PartitionVector:
    """Minimum-interval symmetric cuts under the load bound ``Z``.

    Tries interval counts in increasing order; feasibility is monotone in
    the interval count, so the first witness is minimal.
    """
    n = A.n
    if n > cap:
        raise TooLargeError(
            f"instance (n={n}) exceeds the exhaustive-search cap ({cap})")
    if Z < 1:
        raise ValueError("load bound must be at least 1")
    P = _dense_prefix(A)

    def witness(cuts, remaining):
        if remaining == 0:
            if _new_tile_max(P, cuts, n) <= Z:
                return cuts + (n,)
            return None
        hi = n - remaining
        # greedy-first: the furthest cut tends to reach a witness soonest
        for t in range(hi, cuts[-1], -1):
            if _new_tile_max(P, cuts, t) > Z:
                continue
            found = witness(cuts + (t,), remaining - 1)
            if found is not None:
                return found
        return None

    for p in range(1, n + 1):
        found = witness((0,), p - 1)
        if found is not None:
            return PartitionVector(found)
    raise InfeasibleLoadBoundError(
        f"load bound {Z} infeasible even with {n} intervals",
        partial_cuts=(0,), stuck_at=n)


@dataclass(frozen=True)
class VCInstance:
    """An undirected simple graph with a cover-size question."""

    num_vertices: int
    edges: tuple
    k: int

    def __post_init__(self):
        canon = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("self loops are not allowed")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        if not 0 <= self.k <= self.num_vertices:
            raise ValueError("cover size out of range")


def has_cover(inst: VCInstance, k: int) -> bool:
    """Brute-force: is there a vertex cover of size ``k``?"""
    if not inst.edges:
        return True
    for cover in itertools.combinations(range(inst.num_vertices), k):
        chosen = set(cover)
        if all(u in chosen or v in chosen for u, v in inst.edges):
            return True
    return False


def min_cover_size(inst: VCInstance) -> int:
    for k in range(inst.num_vertices + 1):
        if has_cover(inst, k):
            return k
    raise AssertionError("unreachable: the full vertex set is a cover")


def vc_to_srp(inst: VCInstance):
    """Encode a cover question as a partition-feasibility question.

    Builds a ``(2n+2) x (2n+2)`` binary matrix whose border rows/columns
    carry an alternating two-ones/two-zeros pattern that forces one cut per
    vertex block under a unit load bound, and a 2x2 identity block per edge
    that must be split by a cut through one of its endpoint vertices.
    Returns ``(matrix, Z=1, p=n+2+k)``: the partition is feasible exactly
    when the graph has a cover of size ``k``.
    """
    n = inst.num_vertices
    size = 2 * n + 2
    entries = {(0, 0)}
    for t in range(1, size):
        if (t - 1) % 4 < 2:
            entries.add((0, t))
            entries.add((t, 0))
        else:
            entries.add((1, t))
            entries.add((t, 1))
    for u, v in inst.edges:
        for a, b in ((u, v), (v, u)):
            entries.add((2 * a + 2, 2 * b + 2))
            entries.add((2 * a + 3, 2 * b + 3))
    matrix = SparseMatrix.from_entries(size, ((i, j, 1) for i, j in entries))
    return matrix, 1, n + 2 + inst.k
