# How much can the input be thinned before partition quality degrades?
# Sparsify a mid-size matrix at several keep fractions, partition the
# sample, and evaluate the resulting cuts on the full matrix.

import time

from symrect import (SparsifyConfig, bac, predicted_error, sparsify,
                     symmetric_imbalance)
from symrect.generate import power_law_matrix

A = power_law_matrix(4096, 200_000, seed=7, skew=1.5)
p = 8

t0 = time.perf_counter()
C_full = bac(A, p)
full_time = time.perf_counter() - t0
full_lam = float(symmetric_imbalance(A, C_full))
print(f"full matrix: m={A.m}  imbalance {full_lam:.4f}  "
      f"{full_time * 1e3:.0f}ms")
print()

for s in (0.5, 0.2, 0.1, 0.05):
    B = sparsify(A, SparsifyConfig(factor=s, seed=0))
    t0 = time.perf_counter()
    C = bac(B, p)
    elapsed = time.perf_counter() - t0
    lam = float(symmetric_imbalance(A, C))  # judged on the full matrix
    eps = predicted_error(A.m, p, s)
    print(f"s={s:4.2f}  kept {B.m:6d}  imbalance {lam:.4f} "
          f"(vs {full_lam:.4f}, predicted error {eps:.4f})  "
          f"{elapsed * 1e3:.0f}ms")
