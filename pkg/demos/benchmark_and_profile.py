# Generate a few synthetic matrices, sweep algorithms over them with the
# CLI machinery, and print performance-profile curves: for each algorithm,
# the fraction of instances it solves within a factor theta of the best.

import csv
import os
import tempfile

from symrect.cli import main
from symrect.generate import power_law_matrix, random_matrix
from symrect.io import write_matrix_market

workdir = tempfile.mkdtemp(prefix="symrect-demo-")
paths = []
for i, A in enumerate([random_matrix(300, 4000, seed=i) for i in range(2)]
                      + [power_law_matrix(300, 4000, seed=9, skew=1.6)]):
    path = os.path.join(workdir, f"m{i}.mtx")
    write_matrix_market(A, path)
    paths.append(path)

bench_csv = os.path.join(workdir, "bench.csv")
profile_csv = os.path.join(workdir, "profile.csv")

main(["bench", *paths, "--algs", "uni,rac,bac-pal", "--p-list", "4,8",
      "--reps", "3", "--out", bench_csv])
main(["profile", bench_csv, "--metric", "imbalance", "--out", profile_csv])

with open(bench_csv, newline="") as fh:
    rows = list(csv.DictReader(fh))
print(f"benchmark: {len(rows)} rows")
for row in rows:
    print(f"  {os.path.basename(row['matrix']):8s} {row['algorithm']:8s} "
          f"p={row['p']:2s} imbalance={float(row['imbalance']):.3f} "
          f"runtime={float(row['runtime_ms']):.1f}ms")

print("\nprofile (fraction of instances within theta of the best):")
with open(profile_csv, newline="") as fh:
    for row in csv.DictReader(fh):
        print(f"  {row['algorithm']:8s} theta={float(row['theta']):.3f} "
              f"fraction={float(row['fraction']):.2f}")
