"""Tests for report tables."""

import csv

import pytest

from services.classifier import SvmConfig
from services.evaluation.cv import CvReport, FoldResult
from services.evaluation.metrics import ConfusionMatrix
from services.evaluation.report import (
    BINARY_COLUMNS,
    binary_table,
    folds_table,
    render_text_table,
    write_reports,
)

BINARY = ("MI", "HC")
MULTI = ("MI", "BBB", "HC")


def binary_report() -> CvReport:
    train = ConfusionMatrix(BINARY, [[10, 0], [0, 10]])
    return CvReport(
        "binary",
        BINARY,
        (
            FoldResult(0, SvmConfig(C=1.0), train, ConfusionMatrix(BINARY, [[9, 1], [2, 8]])),
            FoldResult(1, SvmConfig(C=10.0, gamma=0.5), train, ConfusionMatrix(BINARY, [[5, 0], [0, 0]])),
        ),
    )


def multiclass_report() -> CvReport:
    cm = ConfusionMatrix(MULTI, [[2, 1, 0], [0, 3, 0], [1, 0, 4]])
    return CvReport("multiclass", MULTI, (FoldResult(0, SvmConfig(), cm, cm),))


def read_csv(path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestBinaryTables:
    """Test cases for binary report tables."""

    def test_means_skip_undefined(self):
        """An undefined fold specificity is left out of the mean."""
        [row] = binary_table([("all12", binary_report())])
        assert row == ["all12", "1", "1", "1", "0.95", "0.8", "0.925"]

    def test_write_reports(self, tmp_path):
        """report.csv, report.txt and folds.csv are written."""
        written = write_reports([("all12", binary_report()), ("ii", binary_report())], tmp_path)
        assert [p.name for p in written] == ["report.csv", "report.txt", "folds.csv"]
        rows = read_csv(tmp_path / "report.csv")
        assert tuple(rows[0]) == BINARY_COLUMNS
        assert [r[0] for r in rows[1:]] == ["all12", "ii"]

    def test_folds_csv(self, tmp_path):
        """One row per lead set, fold and split, with the chosen configuration."""
        write_reports([("all12", binary_report())], tmp_path)
        rows = read_csv(tmp_path / "folds.csv")
        assert rows[0] == [
            "lead_set", "fold", "split", "sensitivity", "specificity", "accuracy", "C", "gamma",
        ]
        assert len(rows) == 1 + 4
        test_rows = [r for r in rows[1:] if r[2] == "test"]
        assert test_rows[0] == ["all12", "0", "test", "0.9", "0.8", "0.85", "1", "auto"]
        assert test_rows[1] == ["all12", "1", "test", "1", "n/a", "1", "10", "0.5"]

    def test_means_recomputable_from_folds(self, tmp_path):
        """Averaging folds.csv reproduces report.csv."""
        write_reports([("all12", binary_report())], tmp_path)
        folds = [r for r in read_csv(tmp_path / "folds.csv")[1:] if r[2] == "test"]
        report = read_csv(tmp_path / "report.csv")[1]
        for column, reported in zip((3, 4, 5), report[4:], strict=True):
            values = [float(r[column]) for r in folds if r[column] != "n/a"]
            assert sum(values) / len(values) == pytest.approx(float(reported), abs=1e-9)


class TestMulticlassTables:
    """Test cases for multiclass report tables."""

    def test_write_reports(self, tmp_path):
        """Train and test tables carry one column per class plus accuracy."""
        written = write_reports([("all12", multiclass_report())], tmp_path)
        assert sorted(p.name for p in written) == sorted(
            ["report_train.csv", "report_train.txt", "report_test.csv", "report_test.txt", "folds.csv"]
        )
        rows = read_csv(tmp_path / "report_test.csv")
        assert rows[0] == ["lead_set", "MI", "BBB", "HC", "accuracy"]
        assert rows[1][0] == "all12"
        assert float(rows[1][1]) == pytest.approx(2 / 3)
        assert rows[1][2:4] == ["1", "0.8"]
        assert float(rows[1][4]) == pytest.approx(9 / 11)

    def test_folds_table_columns(self):
        """Per-class columns replace the binary rates."""
        header, rows = folds_table([("ii", multiclass_report())])
        assert header == ["lead_set", "fold", "split", "MI", "BBB", "HC", "accuracy", "C", "gamma"]
        assert len(rows) == 2


class TestRenderTextTable:
    """Test cases for render_text_table."""

    def test_alignment(self):
        """First column left-aligned, numbers right-aligned under a rule."""
        text = render_text_table(["set", "acc"], [["all12", "0.9"], ["ii", "1"]])
        assert text.splitlines() == [
            "set    acc",
            "-----  ---",
            "all12  0.9",
            "ii       1",
        ]
