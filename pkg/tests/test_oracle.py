from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from symrect import (InfeasibleLoadBoundError, PartitionVector, SparseMatrix,
                     TooLargeError, VCInstance, has_cover, min_cover_size,
                     optimal_mli, optimal_mnc, symmetric_imbalance,
                     tile_loads, vc_to_srp)

from conftest import brute_tile_loads, random_matrix


def enumerate_best(A, p):
    """Plain enumeration without pruning; the oracle's own oracle."""
    best_val, best_cuts = None, None
    for interior in combinations(range(1, A.n), p - 1):
        C = PartitionVector((0, *interior, A.n))
        val = symmetric_imbalance(A, C)
        if best_val is None or val < best_val:
            best_val, best_cuts = val, C.cuts
    return best_cuts, best_val


class TestOptimalMli:
    def test_toy(self, toy):
        C, imb = optimal_mli(toy, 3)
        assert C.cuts == (0, 2, 4, 6)
        assert imb == Fraction(9, 7)

    def test_matches_plain_enumeration(self):
        rng = np.random.default_rng(107)
        for _ in range(6):
            n = int(rng.integers(5, 11))
            A = random_matrix(rng, n, 2 * n, max_weight=3)
            p = int(rng.integers(2, min(5, n) + 1))
            C, imb = optimal_mli(A, p)
            cuts, best = enumerate_best(A, p)
            assert imb == best
            assert C.cuts == cuts  # lexicographically smallest tie-break

    def test_no_heuristic_beats_it(self, toy):
        from symrect import bac, rac, uniform_partition
        _, best = optimal_mli(toy, 3)
        for C in (rac(toy, 3), bac(toy, 3), uniform_partition(6, 3)):
            assert symmetric_imbalance(toy, C) >= best

    def test_size_cap(self):
        A = SparseMatrix.from_entries(30, [(0, 0, 1)])
        with pytest.raises(TooLargeError):
            optimal_mli(A, 2)
        B = SparseMatrix.from_entries(10, [(0, 0, 1)])
        with pytest.raises(TooLargeError):
            optimal_mli(B, 9)


class TestOptimalMnc:
    def test_toy_sweep(self, toy):
        for Z in range(2, 15):
            C = optimal_mnc(toy, Z)
            assert tile_loads(toy, C, C).lmax <= Z
            # minimality against plain enumeration
            for p in range(1, C.intervals):
                feasible = any(
                    brute_tile_loads(
                        toy, PartitionVector((0, *i, 6)),
                        PartitionVector((0, *i, 6))).max() <= Z
                    for i in combinations(range(1, 6), p - 1))
                assert not feasible

    def test_infeasible_bound(self):
        A = SparseMatrix.from_entries(3, [(1, 1, 9)])
        with pytest.raises(InfeasibleLoadBoundError):
            optimal_mnc(A, 8)

    def test_greedy_never_uses_fewer_intervals(self):
        from symrect import pal
        rng = np.random.default_rng(109)
        for _ in range(6):
            n = int(rng.integers(5, 11))
            A = random_matrix(rng, n, 2 * n)
            Z = int(rng.integers(2, 6))
            try:
                exact = optimal_mnc(A, Z)
            except InfeasibleLoadBoundError:
                continue
            try:
                greedy = pal(A, Z)
            except InfeasibleLoadBoundError:
                continue
            assert greedy.intervals >= exact.intervals


class TestVertexCover:
    TRIANGLE = VCInstance(3, ((0, 1), (1, 2), (0, 2)), 2)
    PATH4 = VCInstance(4, ((0, 1), (1, 2), (2, 3)), 2)
    STAR = VCInstance(5, ((0, 1), (0, 2), (0, 3), (0, 4)), 1)

    def test_brute_force_known_covers(self):
        assert min_cover_size(self.TRIANGLE) == 2
        assert min_cover_size(self.PATH4) == 2
        assert min_cover_size(self.STAR) == 1
        assert not has_cover(self.TRIANGLE, 1)
        assert has_cover(self.STAR, 1)

    def test_instance_validation(self):
        with pytest.raises(ValueError, match="self loop"):
            VCInstance(3, ((0, 0),), 1)
        with pytest.raises(ValueError, match="duplicate"):
            VCInstance(3, ((0, 1), (1, 0)), 1)
        with pytest.raises(ValueError, match="out of range"):
            VCInstance(3, ((0, 5),), 1)

    def test_reduction_shape(self):
        A, Z, p = vc_to_srp(self.PATH4)
        assert A.n == 2 * 4 + 2
        assert Z == 1
        assert p == 4 + 2 + self.PATH4.k
        assert bool((A.weights == 1).all())

    @pytest.mark.parametrize("inst,k", [
        (TRIANGLE, 1), (TRIANGLE, 2),
        (PATH4, 1), (PATH4, 2),
        (STAR, 1),
        (VCInstance(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), 2),
         2),
        (VCInstance(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), 3),
         3),
        (VCInstance(5, ((0, 1), (2, 3), (3, 4)), 2), 2),
    ])
    def test_feasibility_matches_cover_existence(self, inst, k):
        quest = VCInstance(inst.num_vertices, inst.edges, k)
        A, Z, p = vc_to_srp(quest)
        try:
            C = optimal_mnc(A, Z)
            feasible = C.intervals <= p
        except InfeasibleLoadBoundError:
            feasible = False
        assert feasible == has_cover(quest, k)

    def test_minimum_intervals_track_minimum_cover(self):
        for inst in (self.TRIANGLE, self.PATH4, self.STAR):
            A, Z, _ = vc_to_srp(inst)
            C = optimal_mnc(A, Z)
            assert C.intervals == inst.num_vertices + 2 + min_cover_size(inst)
