from fractions import Fraction

import pytest

from symrect import SparseMatrix
from symrect.io import (MatrixFormatError, PartitionReport, ReportSchemaError,
                        format_report, parse_report, read_matrix_market,
                        read_report, write_matrix_market, write_report)

from conftest import toy_entries


def write_lines(tmp_path, lines, name="m.mtx"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestReadMatrixMarket:
    def test_toy_pattern(self, toy_mm, toy):
        assert read_matrix_market(toy_mm) == toy

    def test_symmetric_expansion(self, tmp_path, toy):
        lines = ["%%MatrixMarket matrix coordinate pattern symmetric", "6 6 7"]
        seen = set()
        for r, c, _ in toy_entries():
            key = (max(r, c), min(r, c))
            if key not in seen:
                seen.add(key)
                lines.append(f"{key[0] + 1} {key[1] + 1}")
        path = write_lines(tmp_path, lines)
        assert read_matrix_market(path) == toy

    def test_integer_weights(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate integer general",
            "3 3 2", "1 2 5", "3 3 7"])
        A = read_matrix_market(path)
        assert A.total_weight == 12

    def test_real_rejected_without_quantize(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate real general",
            "2 2 1", "1 1 0.5"])
        with pytest.raises(MatrixFormatError, match="quantization"):
            read_matrix_market(path)
        A = read_matrix_market(path, quantize=True)
        assert A.m == 0  # 0.5 rounds to 0 and is dropped

    def test_quantize_rounds(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate real general",
            "2 2 2", "1 1 1.6", "2 2 3.2"])
        A = read_matrix_market(path, quantize=True)
        assert sorted(A.weights.tolist()) == [2, 3]

    def test_comments_and_blank_lines(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate pattern general",
            "% a comment", "", "3 3 1", "% another", "2 2"])
        assert read_matrix_market(path).m == 1

    def test_duplicates_merged_with_warning(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate integer general",
            "3 3 2", "1 1 2", "1 1 3"])
        with pytest.warns(UserWarning, match="merged"):
            A = read_matrix_market(path)
        assert A.m == 1 and A.total_weight == 5

    def test_explicit_zeros_dropped(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate integer general",
            "3 3 2", "1 1 0", "2 2 4"])
        assert read_matrix_market(path).m == 1

    @pytest.mark.parametrize("lines,fragment", [
        (["not a banner", "2 2 0"], "banner"),
        (["%%MatrixMarket matrix array real general", "2 2"], "format"),
        (["%%MatrixMarket matrix coordinate complex general", "2 2 0"],
         "field"),
        (["%%MatrixMarket matrix coordinate pattern skew-symmetric", "2 2 0"],
         "symmetry"),
        (["%%MatrixMarket matrix coordinate pattern general", "2 3 0"],
         "square"),
        (["%%MatrixMarket matrix coordinate pattern general", "2 2 1",
          "1 3"], "out of bounds"),
        (["%%MatrixMarket matrix coordinate pattern general", "2 2 2",
          "1 1"], "expected 2 entries"),
        (["%%MatrixMarket matrix coordinate integer general", "2 2 1",
          "1 1"], "truncated"),
        (["%%MatrixMarket matrix coordinate integer general", "2 2 1",
          "1 1 -4"], "negative"),
    ])
    def test_malformed_inputs(self, tmp_path, lines, fragment):
        path = write_lines(tmp_path, lines)
        with pytest.raises(MatrixFormatError, match=fragment):
            read_matrix_market(path)

    def test_error_names_line_number(self, tmp_path):
        path = write_lines(tmp_path, [
            "%%MatrixMarket matrix coordinate pattern general",
            "3 3 2", "1 1", "9 9"])
        with pytest.raises(MatrixFormatError) as exc:
            read_matrix_market(path)
        assert exc.value.line_no == 4
        assert ":4:" in str(exc.value)


class TestWriteMatrixMarket:
    def test_round_trip_pattern(self, tmp_path, toy):
        path = tmp_path / "out.mtx"
        write_matrix_market(toy, path)
        assert "pattern" in path.read_text().splitlines()[0]
        assert read_matrix_market(str(path)) == toy

    def test_round_trip_weighted(self, tmp_path):
        A = SparseMatrix.from_entries(4, [(0, 1, 3), (3, 2, 1)])
        path = tmp_path / "out.mtx"
        write_matrix_market(A, path)
        assert "integer" in path.read_text().splitlines()[0]
        assert read_matrix_market(str(path)) == A


def sample_report(**overrides):
    fields = dict(
        matrix="toy.mtx", algorithm="rac", p=3, load_bound=None,
        cuts=(0, 3, 5, 6), col_cuts=None, lmax=3, lavg=Fraction(14, 9),
        imbalance=Fraction(27, 14), runtime_ms=1.25)
    fields.update(overrides)
    return PartitionReport(**fields)


class TestReports:
    def test_round_trip(self, tmp_path):
        report = sample_report()
        path = tmp_path / "report.txt"
        write_report(report, path)
        assert read_report(path) == report

    def test_round_trip_full_fields(self, tmp_path):
        report = sample_report(
            algorithm="nic", col_cuts=(0, 2, 4, 6), sparsify_mode="eps",
            sparsify_factor=0.5, sparsify_eps=0.01, seed=7,
            tile_grid=((2, 3, 1), (3, 2, 1), (1, 1, 0)))
        path = tmp_path / "report.txt"
        write_report(report, path)
        assert read_report(path) == report

    def test_exact_fractions_preserved(self):
        report = sample_report(imbalance=Fraction(12345, 6789))
        back = parse_report(format_report(report))
        assert back.imbalance == Fraction(12345, 6789)

    def test_decimal_rendering(self):
        report = sample_report()
        assert report.imbalance_decimal == "1.9286"
        assert "1.9286" in format_report(report)

    def test_schema_tag_checked(self):
        with pytest.raises(ReportSchemaError, match="schema"):
            parse_report("something-else 9\nmatrix\ttoy")

    def test_missing_field_rejected(self):
        text = format_report(sample_report())
        trimmed = "\n".join(ln for ln in text.splitlines()
                            if not ln.startswith("lmax\t"))
        with pytest.raises(ReportSchemaError, match="missing"):
            parse_report(trimmed)

    def test_unknown_field_rejected(self):
        text = format_report(sample_report()) + "bogus\t1\n"
        with pytest.raises(ReportSchemaError, match="unknown"):
            parse_report(text)

    def test_empty_rejected(self):
        with pytest.raises(ReportSchemaError):
            parse_report("")
