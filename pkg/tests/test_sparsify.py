import math

import numpy as np
import pytest

from symrect import (PartitionVector, SparseMatrix, SparsifyConfig,
                     auto_factor, mnc_p_hint, predicted_error, scale_bound,
                     sparsify, tile_loads)
from symrect.generate import random_matrix


class TestConfig:
    def test_off_by_default(self):
        cfg = SparsifyConfig()
        assert not cfg.enabled
        assert cfg.resolve_factor(1000) == 1.0

    def test_factor_mode(self):
        cfg = SparsifyConfig(factor=0.25)
        assert cfg.enabled
        assert cfg.resolve_factor(1000) == 0.25

    def test_eps_mode_needs_hint(self):
        with pytest.raises(ValueError, match="hint"):
            SparsifyConfig(eps=0.05)
        cfg = SparsifyConfig(eps=0.05, p_hint=8)
        assert cfg.resolve_factor(10**6) == auto_factor(10**6, 8, 0.05)

    def test_modes_mutually_exclusive(self):
        with pytest.raises(ValueError, match="exclusive"):
            SparsifyConfig(factor=0.5, eps=0.1, p_hint=4)

    @pytest.mark.parametrize("factor", [0.0, -0.5, 1.5])
    def test_bad_factor(self, factor):
        with pytest.raises(ValueError):
            SparsifyConfig(factor=factor)


class TestFactorFormula:
    def test_large_scale_value(self):
        # 11 million unit entries, 8 intervals, keep 10 percent: the
        # predicted relative error is well under one percent
        assert predicted_error(11 * 10**6, 8, 0.1) == \
            pytest.approx(0.00722, abs=5e-5)

    def test_inverse_relationship(self):
        m, p = 10**6, 16
        for eps in (0.01, 0.05, 0.2):
            s = auto_factor(m, p, eps)
            if s < 1.0:
                assert predicted_error(m, p, s) == pytest.approx(eps,
                                                                 rel=1e-9)

    def test_clamped_for_loose_tolerance_or_tiny_m(self):
        # small instances or generous tolerances keep (almost) everything
        assert auto_factor(10, 4, 0.5) > 0.8
        assert auto_factor(100, 32, 0.9) > 0.9
        assert auto_factor(1, 10, 0.5) > 0.99

    def test_formula_exact(self):
        m, p, eps = 10**6, 32, 0.01
        assert auto_factor(m, p, eps) == \
            pytest.approx(p * p / (eps * eps * m + p * p))


class TestHints:
    def test_mnc_p_hint_unit_square(self):
        # a side-ceil(sqrt(Z)) square can hold Z unit entries
        for n, Z in ((100, 25), (100, 26), (7, 1), (50, 3)):
            side = math.ceil(math.sqrt(Z))
            assert mnc_p_hint(n, Z) == max(1, math.ceil(n / side))

    def test_scale_bound(self):
        assert scale_bound(100, 0.1) == 10
        assert scale_bound(7, 0.5) == 4
        assert scale_bound(5, 1.0) == 5


class TestSparsify:
    def test_disabled_returns_same_object(self):
        A = random_matrix(20, 50, seed=1)
        assert sparsify(A, SparsifyConfig()) is A
        assert sparsify(A, SparsifyConfig(factor=1.0)) is A

    def test_deterministic_per_seed(self):
        A = random_matrix(40, 400, seed=2)
        cfg = SparsifyConfig(factor=0.3, seed=17)
        B1, B2 = sparsify(A, cfg), sparsify(A, cfg)
        assert B1 == B2

    def test_different_seeds_differ(self):
        A = random_matrix(40, 400, seed=3)
        B1 = sparsify(A, SparsifyConfig(factor=0.3, seed=1))
        B2 = sparsify(A, SparsifyConfig(factor=0.3, seed=2))
        assert B1 != B2

    def test_subset_of_original(self):
        A = random_matrix(30, 200, seed=4, max_weight=5)
        B = sparsify(A, SparsifyConfig(factor=0.4, seed=9))
        assert B.n == A.n
        original = {(int(r), int(c)): int(w)
                    for r, c, w in zip(A.rows, A.cols, A.weights)}
        for r, c, w in zip(B.rows, B.cols, B.weights):
            assert original[(int(r), int(c))] == int(w)

    def test_kept_fraction_concentrates(self):
        # binomial concentration: with m = 20000 and s = 0.5 the kept count
        # stays within 5 standard deviations of the mean
        A = random_matrix(200, 20000, seed=5)
        s = 0.5
        B = sparsify(A, SparsifyConfig(factor=s, seed=11))
        mean = A.m * s
        sigma = math.sqrt(A.m * s * (1 - s))
        assert abs(B.m - mean) < 5 * sigma

    def test_tile_load_error_within_predicted_band(self):
        # the heaviest tile's relative load error stays within a few
        # multiples of the predicted standard error
        A = random_matrix(256, 30000, seed=6)
        p, s = 4, 0.25
        B = sparsify(A, SparsifyConfig(factor=s, seed=13))
        C = PartitionVector(tuple(i * 256 // p for i in range(p + 1)))
        full = tile_loads(A, C, C).loads
        kept = tile_loads(B, C, C).loads
        err = np.abs(kept / s - full) / full.max()
        assert err.max() < 5 * predicted_error(A.m, p, s)

    def test_empty_matrix(self):
        A = SparseMatrix.from_entries(5, [])
        assert sparsify(A, SparsifyConfig(factor=0.5)) is A
