import numpy as np
import pytest

from symrect import SparseMatrix, PartitionVector

# 6x6 toy adjacency matrix (7 undirected edges, 14 unit nonzeros) used as a
# hand-checkable example throughout the suite.
TOY_EDGES = [(0, 2), (0, 4), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5)]


def toy_entries():
    out = []
    for u, v in TOY_EDGES:
        out.append((u, v, 1))
        out.append((v, u, 1))
    return out


@pytest.fixture
def toy():
    return SparseMatrix.from_entries(6, toy_entries())


@pytest.fixture
def toy_mm(tmp_path):
    path = tmp_path / "toy.mtx"
    lines = ["%%MatrixMarket matrix coordinate pattern general",
             f"6 6 {2 * len(TOY_EDGES)}"]
    for u, v in TOY_EDGES:
        lines.append(f"{u + 1} {v + 1}")
        lines.append(f"{v + 1} {u + 1}")
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def random_matrix(rng, n, m, max_weight=1):
    """Random test matrix with m distinct coordinates."""
    codes = rng.choice(n * n, size=m, replace=False)
    rows, cols = np.divmod(codes, n)
    weights = (rng.integers(1, max_weight + 1, size=m)
               if max_weight > 1 else None)
    return SparseMatrix.from_arrays(n, rows, cols, weights)


def random_cuts(rng, n, p):
    interior = sorted(rng.choice(np.arange(1, n), size=p - 1, replace=False))
    return PartitionVector((0, *interior, n))


def brute_tile_loads(A, Cr, Cc):
    """Independent per-tile counting by exhaustive entry scan."""
    p, q = len(Cr.cuts) - 1, len(Cc.cuts) - 1
    loads = np.zeros((p, q), dtype=np.int64)
    for r, c, w in zip(A.rows, A.cols, A.weights):
        i = next(k for k in range(p) if Cr.cuts[k] <= r < Cr.cuts[k + 1])
        j = next(k for k in range(q) if Cc.cuts[k] <= c < Cc.cuts[k + 1])
        loads[i, j] += w
    return loads
