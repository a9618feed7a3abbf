"""Confusion matrices and classification metrics.

A metric whose denominator is zero is undefined and represented as None,
never as 0.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.errors import EvaluationError


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """counts[i, j] = rows of true class i predicted as class j."""

    classes: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.classes)
        if counts.shape != (k, k):
            raise EvaluationError(f"confusion matrix must be {k}x{k}, got {counts.shape}")
        if np.any(counts < 0):
            raise EvaluationError("confusion counts must be non-negative")
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_predictions(
        cls, y_true: Sequence[str], y_pred: Sequence[str], classes: Sequence[str]
    ) -> "ConfusionMatrix":
        index = {c: i for i, c in enumerate(classes)}
        counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
        for true, pred in zip(y_true, y_pred, strict=True):
            if true not in index or pred not in index:
                raise EvaluationError(f"label outside {tuple(classes)}: {true!r} / {pred!r}")
            counts[index[true], index[pred]] += 1
        return cls(tuple(classes), counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class BinaryMetrics:
    sensitivity: float | None
    specificity: float | None
    accuracy: float | None


@dataclass(frozen=True)
class MulticlassMetrics:
    sensitivities: dict[str, float | None]
    accuracy: float | None


def _ratio(numerator: int, denominator: int) -> float | None:
    return numerator / denominator if denominator else None


def metrics_binary(cm: ConfusionMatrix, positive: str | None = None) -> BinaryMetrics:
    """Sensitivity TP/(TP+FN), specificity TN/(TN+FP) and accuracy.

    ``positive`` defaults to the first class.
    """
    if len(cm.classes) != 2:
        raise EvaluationError(f"binary metrics need 2 classes, got {len(cm.classes)}")
    p = cm.classes.index(positive) if positive is not None else 0
    n = 1 - p
    tp, fn = int(cm.counts[p, p]), int(cm.counts[p, n])
    tn, fp = int(cm.counts[n, n]), int(cm.counts[n, p])
    return BinaryMetrics(
        sensitivity=_ratio(tp, tp + fn),
        specificity=_ratio(tn, tn + fp),
        accuracy=_ratio(tp + tn, cm.total),
    )


def metrics_multiclass(cm: ConfusionMatrix) -> MulticlassMetrics:
    """Per-class sensitivity counts[k, k] / row_k and accuracy trace / total."""
    if len(cm.classes) < 2:
        raise EvaluationError("multiclass metrics need at least 2 classes")
    rows = cm.counts.sum(axis=1)
    return MulticlassMetrics(
        sensitivities={
            c: _ratio(int(cm.counts[k, k]), int(rows[k])) for k, c in enumerate(cm.classes)
        },
        accuracy=_ratio(int(np.trace(cm.counts)), cm.total),
    )


def mean_defined(values: Sequence[float | None]) -> float | None:
    """Arithmetic mean over defined values; None when nothing is defined."""
    defined = [v for v in values if v is not None]
    return float(np.mean(defined)) if defined else None
