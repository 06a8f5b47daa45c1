# Walk through the core API on a small hand-checkable matrix: build it,
# partition it with the different algorithms, and compare against the
# exhaustive optimum.

import numpy as np

from symrect import (SparseMatrix, bac, opal, optimal_mli, rac,
                     symmetric_imbalance, tile_loads, uniform_partition)

# adjacency matrix of a 6-vertex graph, 7 undirected edges
edges = [(0, 2), (0, 4), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5)]
entries = [(u, v, 1) for u, v in edges] + [(v, u, 1) for u, v in edges]
A = SparseMatrix.from_entries(6, entries)

print("matrix:")
print(A.to_dense())
print()

p = 3
for name, C in [("uniform", uniform_partition(A.n, p)),
                ("rac", rac(A, p)),
                ("bac", bac(A, p))]:
    grid = tile_loads(A, C, C)
    print(f"{name:8s} cuts {C.cuts}  lmax {grid.lmax}  "
          f"imbalance {float(grid.imbalance):.4f}")
    print(np.array(grid.loads))
    print()

C_opt, imb = optimal_mli(A, p)
print(f"exhaustive optimum: cuts {C_opt.cuts}  imbalance {float(imb):.4f}")
print()

# the dual problem: fix a per-tile load bound instead of the interval count
for Z in (2, 3, 5):
    C = opal(A, Z)
    grid = tile_loads(A, C, C)
    print(f"load bound {Z}: {C.intervals} intervals, cuts {C.cuts}, "
          f"lmax {grid.lmax}")
