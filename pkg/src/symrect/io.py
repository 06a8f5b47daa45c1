"""Matrix ingestion (Matrix Market coordinate format) and result reports."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import SparseMatrix

REPORT_SCHEMA = "symrect-report 1"


class MatrixFormatError(ValueError):
    """Malformed Matrix Market input; names the offending line."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


class ReportSchemaError(ValueError):
    """Report file does not match the expected schema."""


def read_matrix_market(path, quantize: bool = False) -> SparseMatrix:
    """Parse a coordinate Matrix Market file into a square sparse matrix.

    Pattern entries get weight 1; symmetric storage is expanded to both
    triangles (diagonal kept once); duplicates are merged by summation with
    a warning; explicit zeros are dropped.  Real-valued files are rejected
    unless ``quantize`` is set, in which case weights are rounded to the
    nearest integer.
    """
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("%%MatrixMarket"):
            raise MatrixFormatError(path, 1, "missing MatrixMarket banner")
        parts = header.strip().split()
        if len(parts) != 5 or parts[1] != "matrix":
            raise MatrixFormatError(path, 1, f"unsupported banner: {header.strip()}")
        _, _, fmt, field, symmetry = (p.lower() for p in parts)
        if fmt != "coordinate":
            raise MatrixFormatError(path, 1, f"unsupported format {fmt!r}")
        if field not in ("pattern", "integer", "real"):
            raise MatrixFormatError(path, 1, f"unsupported field {field!r}")
        if symmetry not in ("general", "symmetric"):
            raise MatrixFormatError(path, 1, f"unsupported symmetry {symmetry!r}")
        if field == "real" and not quantize:
            raise MatrixFormatError(
                path, 1, "real-valued matrix requires weight quantization")

        line_no = 1
        size = None
        for line in fh:
            line_no += 1
            if line.startswith("%") or not line.strip():
                continue
            size = line.split()
            break
        if size is None or len(size) != 3:
            raise MatrixFormatError(path, line_no, "missing or malformed size line")
        try:
            nrows, ncols, nnz = (int(t) for t in size)
        except ValueError:
            raise MatrixFormatError(path, line_no, "size line is not integral")
        if nrows != ncols:
            raise MatrixFormatError(
                path, line_no, f"matrix is not square ({nrows}x{ncols})")
        n = nrows

        rows, cols, weights = [], [], []
        read = 0
        for line in fh:
            line_no += 1
            if line.startswith("%") or not line.strip():
                continue
            toks = line.split()
            want = 2 if field == "pattern" else 3
            if len(toks) < want:
                raise MatrixFormatError(path, line_no, "truncated entry line")
            try:
                i, j = int(toks[0]), int(toks[1])
            except ValueError:
                raise MatrixFormatError(path, line_no, "non-integer coordinates")
            if not (1 <= i <= n and 1 <= j <= n):
                raise MatrixFormatError(
                    path, line_no, f"coordinate ({i}, {j}) out of bounds")
            if field == "pattern":
                w = 1
            else:
                try:
                    w = round(float(toks[2])) if field == "real" else int(toks[2])
                except ValueError:
                    raise MatrixFormatError(path, line_no, "malformed entry value")
            if w < 0:
                raise MatrixFormatError(path, line_no, "negative entry weight")
            read += 1
            if w == 0:
                continue
            rows.append(i - 1)
            cols.append(j - 1)
            weights.append(w)
            if symmetry == "symmetric" and i != j:
                rows.append(j - 1)
                cols.append(i - 1)
                weights.append(w)
        if read != nnz:
            raise MatrixFormatError(
                path, line_no, f"expected {nnz} entries, found {read}")
    return SparseMatrix.from_arrays(n, rows, cols, weights,
                                    merge_duplicates=True)


def write_matrix_market(A: SparseMatrix, path):
    """Emit a matrix in general coordinate form (unit weights as pattern)."""
    pattern = bool((A.weights == 1).all())
    field = "pattern" if pattern else "integer"
    with open(path, "w") as fh:
        fh.write(f"%%MatrixMarket matrix coordinate {field} general\n")
        fh.write(f"{A.n} {A.n} {A.m}\n")
        for i, j, w in zip(A.rows, A.cols, A.weights):
            if pattern:
                fh.write(f"{i + 1} {j + 1}\n")
            else:
                fh.write(f"{i + 1} {j + 1} {w}\n")


@dataclass(frozen=True)
class PartitionReport:
    """One partitioning result, ready for serialization."""

    matrix: str
    algorithm: str
    p: int | None
    load_bound: int | None
    cuts: tuple
    col_cuts: tuple | None
    lmax: int
    lavg: Fraction
    imbalance: Fraction
    runtime_ms: float
    sparsify_mode: str = "off"        # off | factor | eps
    sparsify_factor: float | None = None
    sparsify_eps: float | None = None
    seed: int | None = None
    tile_grid: tuple | None = None    # rows of tile loads, optional

    @property
    def imbalance_decimal(self) -> str:
        return f"{float(self.imbalance):.4f}"


_FIELDS = ("matrix", "algorithm", "p", "load_bound", "cuts", "col_cuts",
           "lmax", "lavg", "imbalance", "imbalance_decimal", "runtime_ms",
           "sparsify_mode", "sparsify_factor", "sparsify_eps", "seed",
           "tile_grid")


def _encode(name, value):
    if value is None:
        return "-"
    if name in ("cuts", "col_cuts", "tile_grid"):
        return json.dumps([list(r) if isinstance(r, (tuple, list)) else int(r)
                           for r in value])
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return repr(value) if isinstance(value, float) else str(value)


def _decode(name, text):
    if text == "-":
        return None
    if name in ("cuts", "col_cuts"):
        return tuple(json.loads(text))
    if name == "tile_grid":
        return tuple(tuple(r) for r in json.loads(text))
    if name in ("lavg", "imbalance"):
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    if name in ("p", "load_bound", "lmax", "seed"):
        return int(text)
    if name in ("runtime_ms", "sparsify_factor", "sparsify_eps"):
        return float(text)
    return text


def format_report(report: PartitionReport) -> str:
    lines = [REPORT_SCHEMA]
    for name in _FIELDS:
        if name == "imbalance_decimal":
            value = report.imbalance_decimal
        else:
            value = getattr(report, name)
        lines.append(f"{name}\t{_encode(name, value)}")
    return "\n".join(lines) + "\n"


def write_report(report: PartitionReport, path):
    with open(path, "w") as fh:
        fh.write(format_report(report))


def parse_report(text: str) -> PartitionReport:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != REPORT_SCHEMA:
        raise ReportSchemaError(
            f"expected schema tag {REPORT_SCHEMA!r}, "
            f"got {lines[0]!r}" if lines else "empty report")
    fields = {}
    for ln in lines[1:]:
        if "\t" not in ln:
            raise ReportSchemaError(f"malformed report line: {ln!r}")
        name, text_value = ln.split("\t", 1)
        if name not in _FIELDS:
            raise ReportSchemaError(f"unknown report field {name!r}")
        fields[name] = _decode(name, text_value)
    missing = set(_FIELDS) - set(fields)
    if missing:
        raise ReportSchemaError(f"missing report fields: {sorted(missing)}")
    fields.pop("imbalance_decimal")
    return PartitionReport(**fields)


def read_report(path) -> PartitionReport:
    with open(path) as fh:
        return parse_report(fh.read())
