"""Cross-validation, metrics and report tables."""

from services.evaluation.cv import CvReport, FoldResult, fold_seeds, run_cv, select_config
from services.evaluation.folds import smallest_class_size, stratified_kfold
from services.evaluation.metrics import (
    BinaryMetrics,
    ConfusionMatrix,
    MulticlassMetrics,
    mean_defined,
    metrics_binary,
    metrics_multiclass,
)
from services.evaluation.report import BINARY_COLUMNS, render_text_table, write_reports

__all__ = [
    "BINARY_COLUMNS",
    "BinaryMetrics",
    "ConfusionMatrix",
    "CvReport",
    "FoldResult",
    "MulticlassMetrics",
    "fold_seeds",
    "mean_defined",
    "metrics_binary",
    "metrics_multiclass",
    "render_text_table",
    "run_cv",
    "select_config",
    "smallest_class_size",
    "stratified_kfold",
    "write_reports",
]
