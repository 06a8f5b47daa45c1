"""Command-line front end: partition, evaluate, bench, profile, oracle.

Exit codes: 0 on success, 1 when an instance fails (unreadable matrix,
infeasible bound, oracle cap, mismatched profile input), 2 on usage errors.
The ``SYMRECT_THREADS`` environment variable sets the number of worker
threads for benchmark sweeps (default 1); output order is canonical either
way.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import statistics
import sys
import time
from fractions import Fraction

from . import io as rio
from .core import (PartitioningError, PartitionVector, SparseMatrix,
                   tile_loads, uniform_partition)
from .oracle import TooLargeError, optimal_mli, optimal_mnc
from .partitioners import DEFAULT_TAU, bac, bal, nicol2d, opal, pal, rac
from .sparsify import (SparsifyConfig, mnc_p_hint, scale_bound, sparsify)
from .sps import DirectRectLoads, SparsePrefixSum

MLI_ALGS = ("uni", "rac", "nic", "bac-pal", "bac-opal")
MNC_ALGS = ("pal", "opal", "bal-rac", "bal-uni")

DEFAULT_P_GRID = (4, 8, 16, 32)
DEFAULT_Z_GRID = ("m/4", "m/9", "m/16", "m/25")


class InstanceFailure(Exception):
    """An error attributable to the instance, not to usage."""


def _run_partitioner(alg, A, p, Z, tau, direct_loads=False):
    """Dispatch to a partitioner; returns (row cuts, column cuts or None)."""
    if alg == "uni":
        return uniform_partition(A.n, p), None
    if alg == "rac":
        return rac(A, p, tau=tau), None
    if alg == "nic":
        Cr, Cc = nicol2d(A, p, p, tau=tau)
        return Cr, Cc
    if alg in ("pal", "opal", "bac-pal", "bac-opal"):
        if alg == "opal":
            return opal(A, Z), None
        if alg == "pal":
            loads = (DirectRectLoads(A) if direct_loads
                     else SparsePrefixSum.construct(A))
            return pal(A, Z, loads=loads), None
        loads = (DirectRectLoads(A) if direct_loads
                 else SparsePrefixSum.construct(A))
        if alg == "bac-pal":
            return bac(A, p, loads=loads), None
        return bac(A, p, mnc=lambda mat, b: opal(mat, b)), None
    if alg == "bal-rac":
        return bal(A, Z, mli=lambda mat, q: rac(mat, q, tau=tau)), None
    if alg == "bal-uni":
        return bal(A, Z, mli=lambda mat, q: uniform_partition(mat.n, q)), None
    raise AssertionError(f"unknown algorithm {alg}")


def _objective_kind(alg):
    return "p" if alg in MLI_ALGS else "z"


def _check_objective(parser, alg, p, Z):
    if alg in MLI_ALGS and (p is None or Z is not None):
        parser.error(
            f"algorithm {alg!r} takes --p (interval count); valid pairs: "
            f"--p with {'/'.join(MLI_ALGS)}, --load with {'/'.join(MNC_ALGS)}")
    if alg in MNC_ALGS and (Z is None or p is not None):
        parser.error(
            f"algorithm {alg!r} takes --load (load bound); valid pairs: "
            f"--p with {'/'.join(MLI_ALGS)}, --load with {'/'.join(MNC_ALGS)}")


def _sparsify_config(args, n, p, Z):
    if args.sparsify_factor is None and args.sparsify_eps is None:
        return None
    hint = p if p is not None else mnc_p_hint(n, Z)
    return SparsifyConfig(factor=args.sparsify_factor, eps=args.sparsify_eps,
                          seed=args.seed, p_hint=hint)


def _make_report(matrix_id, alg, p, Z, Cr, Cc, A, runtime_ms, cfg, s,
                 with_grid=False):
    grid = tile_loads(A, Cr, Cc if Cc is not None else Cr)
    mode = "off"
    if cfg is not None:
        mode = "factor" if cfg.factor is not None else "eps"
    return rio.PartitionReport(
        matrix=matrix_id, algorithm=alg, p=p, load_bound=Z,
        cuts=Cr.cuts, col_cuts=Cc.cuts if Cc is not None else None,
        lmax=grid.lmax, lavg=grid.lavg, imbalance=grid.imbalance,
        runtime_ms=runtime_ms,
        sparsify_mode=mode,
        sparsify_factor=s if mode != "off" else None,
        sparsify_eps=cfg.eps if cfg is not None else None,
        seed=cfg.seed if cfg is not None else None,
        tile_grid=tuple(tuple(int(x) for x in row) for row in grid.loads)
        if with_grid else None)


def _emit_report(report, out):
    text = rio.format_report(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path, quantize):
    try:
        return rio.read_matrix_market(path, quantize=quantize)
    except (OSError, ValueError) as exc:
        raise InstanceFailure(str(exc))


def run_partition(A, alg, p, Z, tau, cfg, direct_loads=False):
    """Partition ``A`` (after optional sparsification); times the whole
    pipeline including sparsification and any index construction."""
    t0 = time.perf_counter()
    s = 1.0
    work, bound = A, Z
    if cfg is not None:
        s = cfg.resolve_factor(A.m)
        work = sparsify(A, cfg)
        if Z is not None:
            bound = scale_bound(Z, s)
    try:
        Cr, Cc = _run_partitioner(alg, work, p, bound, tau,
                                  direct_loads=direct_loads)
    except PartitioningError as exc:
        raise InstanceFailure(str(exc))
    runtime_ms = (time.perf_counter() - t0) * 1e3
    return Cr, Cc, runtime_ms, s


def cmd_partition(args, parser):
    _check_objective(parser, args.alg, args.p, args.load)
    A = _load_matrix(args.matrix, args.quantize)
    cfg = _sparsify_config(args, A.n, args.p, args.load)
    Cr, Cc, runtime_ms, s = run_partition(A, args.alg, args.p, args.load,
                                          args.tau, cfg,
                                          direct_loads=args.direct_loads)
    report = _make_report(args.matrix, args.alg, args.p, args.load, Cr, Cc,
                          A, runtime_ms, cfg, s, with_grid=args.grid)
    _emit_report(report, args.out)


def evaluate_cuts(A, cuts, col_cuts=None):
    """Metrics for a given cut vector; returns (report fields, runtime)."""
    t0 = time.perf_counter()
    Cr = PartitionVector(cuts)
    Cc = PartitionVector(col_cuts) if col_cuts is not None else Cr
    grid = tile_loads(A, Cr, Cc)
    imbalance = grid.imbalance
    runtime_ms = (time.perf_counter() - t0) * 1e3
    return grid, imbalance, runtime_ms


def cmd_evaluate(args, parser):
    A = _load_matrix(args.matrix, args.quantize)
    try:
        cuts = tuple(int(t) for t in args.cuts.split(","))
        col = (tuple(int(t) for t in args.col_cuts.split(","))
               if args.col_cuts else None)
        grid, imbalance, runtime_ms = evaluate_cuts(A, cuts, col)
    except PartitioningError as exc:
        raise InstanceFailure(str(exc))
    report = rio.PartitionReport(
        matrix=args.matrix, algorithm="evaluate", p=grid.row_cuts.intervals,
        load_bound=None, cuts=grid.row_cuts.cuts,
        col_cuts=grid.col_cuts.cuts if col else None,
        lmax=grid.lmax, lavg=grid.lavg, imbalance=imbalance,
        runtime_ms=runtime_ms, tile_grid=tuple(
            tuple(int(x) for x in row) for row in grid.loads)
        if args.grid else None)
    _emit_report(report, args.out)


def _parse_z_token(token, total):
    token = token.strip()
    if token.startswith("m/"):
        return max(1, total // int(token[2:]))
    return int(token)


BENCH_COLUMNS = ("matrix", "algorithm", "p", "Z", "s", "eps", "seed",
                 "imbalance", "lmax", "runtime_ms")


def _bench_one(path, A, alg, p, Z, seed, reps, tau, args):
    cfg = None
    if args.sparsify_factor is not None or args.sparsify_eps is not None:
        hint = p if p is not None else mnc_p_hint(A.n, Z)
        cfg = SparsifyConfig(factor=args.sparsify_factor,
                             eps=args.sparsify_eps, seed=seed, p_hint=hint)
    row = {"matrix": path, "algorithm": alg,
           "p": "" if p is None else p, "Z": "" if Z is None else Z,
           "s": "", "eps": "" if args.sparsify_eps is None else args.sparsify_eps,
           "seed": seed, "imbalance": "", "lmax": "", "runtime_ms": ""}
    try:
        times = []
        result = None
        for _ in range(reps):
            Cr, Cc, runtime_ms, s = run_partition(A, alg, p, Z, tau, cfg)
            times.append(runtime_ms)
            result = (Cr, Cc, s)
        Cr, Cc, s = result
        grid = tile_loads(A, Cr, Cc if Cc is not None else Cr)
        row["s"] = s if cfg is not None else ""
        row["imbalance"] = float(grid.imbalance)
        row["lmax"] = grid.lmax
        row["runtime_ms"] = statistics.median(times)
    except (InstanceFailure, PartitioningError) as exc:
        print(f"warning: {path} {alg}: {exc}", file=sys.stderr)
    return row


def cmd_bench(args, parser):
    algs = args.algs.split(",")
    for alg in algs:
        if alg not in MLI_ALGS + MNC_ALGS:
            parser.error(f"unknown algorithm {alg!r}")
    p_list = ([int(t) for t in args.p_list.split(",")]
              if args.p_list else list(DEFAULT_P_GRID))
    z_tokens = (args.z_list.split(",") if args.z_list
                else list(DEFAULT_Z_GRID))
    seeds = [int(t) for t in args.seeds.split(",")]

    jobs = []
    for path in args.matrices:
        A = _load_matrix(path, args.quantize)
        for alg in algs:
            if _objective_kind(alg) == "p":
                objectives = [(p, None) for p in p_list]
            else:
                objectives = [(None, _parse_z_token(t, A.total_weight))
                              for t in z_tokens]
            for p, Z in objectives:
                for seed in seeds:
                    jobs.append((path, A, alg, p, Z, seed))

    workers = int(os.environ.get("SYMRECT_THREADS", "1"))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(
                lambda j: _bench_one(j[0], j[1], j[2], j[3], j[4], j[5],
                                     args.reps, args.tau, args), jobs))
    else:
        rows = [_bench_one(path, A, alg, p, Z, seed, args.reps, args.tau,
                           args) for path, A, alg, p, Z, seed in jobs]

    rows.sort(key=lambda r: (r["matrix"], r["algorithm"], str(r["p"]),
                             str(r["Z"]), r["seed"]))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()


def profile_curves(rows, metric):
    """Performance-profile curves from benchmark rows.

    Instances are (matrix, p, Z, seed) tuples; every algorithm must cover
    the same instance set.  The theta grid is the sorted set of observed
    value/best ratios.  Returns {algorithm: [(theta, fraction), ...]}.
    """
    column = "imbalance" if metric == "imbalance" else "runtime_ms"
    per_alg = {}
    for row in rows:
        key = (row["matrix"], row["p"], row["Z"], row["seed"])
        text = row[column]
        value = float(text) if text not in ("", None) else math.inf
        per_alg.setdefault(row["algorithm"], {})[key] = value

    algs = sorted(per_alg)
    if len(algs) < 2:
        raise InstanceFailure("profile needs at least 2 algorithms")
    instance_sets = {alg: set(per_alg[alg]) for alg in algs}
    shared = set.intersection(*instance_sets.values())
    extras = {alg: sorted(instance_sets[alg] - shared) for alg in algs
              if instance_sets[alg] - shared}
    if extras:
        raise InstanceFailure(f"mismatched instance sets: {extras}")
    if not shared:
        raise InstanceFailure("no shared instances")

    best = {key: min(per_alg[alg][key] for alg in algs) for key in shared}
    ratios = {}
    for alg in algs:
        ratios[alg] = {key: (per_alg[alg][key] / best[key]
                             if best[key] > 0 else 1.0)
                       for key in shared}
    thetas = sorted({r for rs in ratios.values() for r in rs.values()
                     if math.isfinite(r)} | {1.0})
    count = len(shared)
    curves = {}
    for alg in algs:
        curves[alg] = [
            (theta,
             sum(1 for r in ratios[alg].values() if r <= theta) / count)
            for theta in thetas]
    return curves


def cmd_profile(args, parser):
    with open(args.bench_csv, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise InstanceFailure(f"{args.bench_csv}: empty benchmark CSV")
    curves = profile_curves(rows, args.metric)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["algorithm", "theta", "fraction"])
        for alg in sorted(curves):
            for theta, fraction in curves[alg]:
                writer.writerow([alg, repr(theta), repr(fraction)])
    finally:
        if args.out:
            out.close()
    if args.plot:
        _plot_curves(curves, args.metric, args.plot)


def _plot_curves(curves, metric, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for alg, points in sorted(curves.items()):
        xs = [t for t, _ in points]
        ys = [f for _, f in points]
        ax.step(xs, ys, where="post", label=alg)
    ax.set_xlabel("theta")
    ax.set_ylabel(f"fraction within theta of best ({metric})")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)


def cmd_oracle(args, parser):
    if (args.p is None) == (args.load is None):
        parser.error("oracle takes exactly one of --p / --load")
    A = _load_matrix(args.matrix, args.quantize)
    try:
        if args.p is not None:
            C, imbalance = optimal_mli(A, args.p, cap=args.cap)
            grid = tile_loads(A, C, C)
            print(f"cuts {','.join(str(c) for c in C.cuts)}")
            print(f"lmax {grid.lmax}")
            print(f"imbalance {imbalance} ({float(imbalance):.4f})")
        else:
            C = optimal_mnc(A, args.load, cap=args.cap)
            grid = tile_loads(A, C, C)
            print(f"cuts {','.join(str(c) for c in C.cuts)}")
            print(f"intervals {C.intervals}")
            print(f"lmax {grid.lmax}")
    except TooLargeError as exc:
        raise InstanceFailure(str(exc))
    except PartitioningError as exc:
        raise InstanceFailure(str(exc))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symrect",
        description="Symmetric rectilinear partitioning of square sparse "
                    "matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    def common_matrix(p):
        p.add_argument("matrix", help="Matrix Market coordinate file")
        p.add_argument("--quantize", action="store_true",
                       help="round real-valued weights to integers")

    pp = sub.add_parser("partition", help="run one partitioning algorithm")
    common_matrix(pp)
    pp.add_argument("--alg", required=True, choices=MLI_ALGS + MNC_ALGS)
    pp.add_argument("--p", type=int, help="interval count objective")
    pp.add_argument("--load", type=int, help="per-tile load bound objective")
    pp.add_argument("--tau", type=int, default=DEFAULT_TAU,
                    help="refinement iteration limit")
    pp.add_argument("--sparsify-factor", type=float)
    pp.add_argument("--sparsify-eps", type=float)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--direct-loads", action="store_true",
                    help="skip the prefix-sum index; scan entries per query")
    pp.add_argument("--grid", action="store_true",
                    help="include the tile-load grid in the report")
    pp.add_argument("--out")
    pp.set_defaults(func=cmd_partition)

    pe = sub.add_parser("evaluate", help="metrics for a given cut vector")
    common_matrix(pe)
    pe.add_argument("--cuts", required=True,
                    help="comma-separated cut vector, e.g. 0,3,5,6")
    pe.add_argument("--col-cuts", help="separate column cuts (non-symmetric)")
    pe.add_argument("--grid", action="store_true")
    pe.add_argument("--out")
    pe.set_defaults(func=cmd_evaluate)

    pb = sub.add_parser("bench", help="sweep algorithms over matrices")
    pb.add_argument("matrices", nargs="+")
    pb.add_argument("--quantize", action="store_true")
    pb.add_argument("--algs", required=True,
                    help="comma-separated algorithm names")
    pb.add_argument("--p-list", help=f"default {','.join(map(str, DEFAULT_P_GRID))}")
    pb.add_argument("--z-list",
                    help=f"default {','.join(DEFAULT_Z_GRID)}; m/k allowed")
    pb.add_argument("--seeds", default="0")
    pb.add_argument("--reps", type=int, default=1,
                    help="repetitions per instance; runtime is the median")
    pb.add_argument("--tau", type=int, default=DEFAULT_TAU)
    pb.add_argument("--sparsify-factor", type=float)
    pb.add_argument("--sparsify-eps", type=float)
    pb.add_argument("--out")
    pb.set_defaults(func=cmd_bench)

    pf = sub.add_parser("profile", help="performance profiles from bench CSV")
    pf.add_argument("bench_csv")
    pf.add_argument("--metric", choices=("imbalance", "runtime"),
                    default="imbalance")
    pf.add_argument("--plot", help="write an SVG/PDF plot of the curves")
    pf.add_argument("--out")
    pf.set_defaults(func=cmd_profile)

    po = sub.add_parser("oracle", help="exhaustive optimum (small instances)")
    common_matrix(po)
    po.add_argument("--p", type=int)
    po.add_argument("--load", type=int)
    po.add_argument("--cap", type=int, default=24,
                    help="largest accepted dimension")
    po.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, parser)
    except InstanceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
