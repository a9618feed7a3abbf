"""Cross-validation report tables (CSV and aligned text)."""

from collections.abc import Sequence
from pathlib import Path

from core.models.common import format_float, render_csv
from services.evaluation.cv import CvReport, Split
from services.evaluation.metrics import BinaryMetrics, MulticlassMetrics

BINARY_COLUMNS: tuple[str, ...] = (
    "lead_set",
    "train_sensitivity",
    "train_specificity",
    "train_accuracy",
    "test_sensitivity",
    "test_specificity",
    "test_accuracy",
)

LeadSetReport = tuple[str, CvReport]


def _binary_values(metrics: BinaryMetrics) -> list[float | None]:
    return [metrics.sensitivity, metrics.specificity, metrics.accuracy]


def report_classes(reports: Sequence[LeadSetReport]) -> tuple[str, ...]:
    """Union of class lists in first-report order."""
    seen: list[str] = []
    for _, report in reports:
        seen.extend(c for c in report.classes if c not in seen)
    return tuple(seen)


def binary_table(reports: Sequence[LeadSetReport], digits: int = 10) -> list[list[str]]:
    rows = []
    for name, report in reports:
        train, test = report.mean_metrics("train"), report.mean_metrics("test")
        values = _binary_values(train) + _binary_values(test)
        rows.append([name, *(format_float(v, digits) for v in values)])
    return rows


def multiclass_table(
    reports: Sequence[LeadSetReport], split: Split, classes: Sequence[str], digits: int = 10
) -> list[list[str]]:
    rows = []
    for name, report in reports:
        metrics: MulticlassMetrics = report.mean_metrics(split)
        values = [metrics.sensitivities.get(c) for c in classes] + [metrics.accuracy]
        rows.append([name, *(format_float(v, digits) for v in values)])
    return rows


def render_text_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Aligned plain-text table: first column left-aligned, the rest right-aligned."""
    table = [list(header), *[list(row) for row in rows]]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]

    def line(row: Sequence[str]) -> str:
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(width) for cell, width in zip(row[1:], widths[1:], strict=True)
        ]
        return "  ".join(cells).rstrip()

    rule = "  ".join("-" * width for width in widths)
    return "\n".join([line(table[0]), rule, *(line(row) for row in table[1:])]) + "\n"


def folds_table(reports: Sequence[LeadSetReport], digits: int = 10) -> tuple[list[str], list[list[str]]]:
    """Per-fold values from which every reported mean can be recomputed."""
    binary = all(report.task == "binary" for _, report in reports)
    classes = report_classes(reports)
    metric_columns = (
        ["sensitivity", "specificity", "accuracy"] if binary else [*classes, "accuracy"]
    )
    header = ["lead_set", "fold", "split", *metric_columns, "C", "gamma"]
    rows = []
    for name, report in reports:
        for split in ("train", "test"):
            for fold, metrics in zip(report.folds, report.fold_metrics(split), strict=True):
                if binary:
                    values = _binary_values(metrics)
                else:
                    values = [metrics.sensitivities.get(c) for c in classes] + [metrics.accuracy]
                rows.append(
                    [
                        name,
                        str(fold.fold),
                        split,
                        *(format_float(v, digits) for v in values),
                        format_float(fold.config.C, digits),
                        "auto" if fold.config.gamma is None else format_float(fold.config.gamma, digits),
                    ]
                )
    return header, rows


def write_reports(
    reports: Sequence[LeadSetReport], out_dir: Path, digits: int = 10
) -> list[Path]:
    """
    Write the report files for a set of lead-set results.

    Binary runs produce ``report.csv`` and ``report.txt``; multiclass runs
    produce ``report_train`` and ``report_test`` tables. Both write ``folds.csv``.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(stem: str, header: Sequence[str], rows: list[list[str]]) -> None:
        csv_path, txt_path = out_dir / f"{stem}.csv", out_dir / f"{stem}.txt"
        csv_path.write_text(render_csv(header, rows), encoding="utf-8")
        txt_path.write_text(render_text_table(header, rows), encoding="utf-8")
        written.extend([csv_path, txt_path])

    if all(report.task == "binary" for _, report in reports):
        emit("report", BINARY_COLUMNS, binary_table(reports, digits))
    else:
        classes = report_classes(reports)
        header = ["lead_set", *classes, "accuracy"]
        for split in ("train", "test"):
            emit(f"report_{split}", header, multiclass_table(reports, split, classes, digits))

    header, rows = folds_table(reports, digits)
    folds_path = out_dir / "folds.csv"
    folds_path.write_text(render_csv(header, rows), encoding="utf-8")
    written.append(folds_path)
    return written
