"""Stratified k-fold cross-validation with inner grid selection.

Each outer fold picks its SVM configuration by pooled accuracy over an
inner stratified split of the training rows only, trains on all training
rows, and scores both the training and held-out rows. Per-fold seeds are
spawned from the master seed, so results do not depend on how folds are
scheduled across workers.
"""

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from core.errors import EvaluationError, SingleClass
from core.logging import get_logger
from core.models.common import order_classes
from core.tracing import create_span
from services.classifier import SvmConfig, SvmModel, resolve_gamma, train_classifier
from services.evaluation.folds import smallest_class_size, stratified_kfold
from services.evaluation.metrics import (
    BinaryMetrics,
    ConfusionMatrix,
    MulticlassMetrics,
    mean_defined,
    metrics_binary,
    metrics_multiclass,
)

logger = get_logger(__name__)

TrainFn = Callable[..., SvmModel]
Task = Literal["binary", "multiclass"]
Split = Literal["train", "test"]


@dataclass(frozen=True)
class FoldResult:
    """Outcome of one outer fold."""

    fold: int
    config: SvmConfig
    train_cm: ConfusionMatrix
    test_cm: ConfusionMatrix

    def confusion(self, split: Split) -> ConfusionMatrix:
        return self.train_cm if split == "train" else self.test_cm


@dataclass(frozen=True)
class CvReport:
    """Per-fold confusion matrices of one cross-validation run."""

    task: Task
    classes: tuple[str, ...]
    folds: tuple[FoldResult, ...]

    def fold_metrics(self, split: Split) -> list[BinaryMetrics | MulticlassMetrics]:
        if self.task == "binary":
            return [metrics_binary(f.confusion(split)) for f in self.folds]
        return [metrics_multiclass(f.confusion(split)) for f in self.folds]

    def mean_metrics(self, split: Split) -> BinaryMetrics | MulticlassMetrics:
        """Means over folds, skipping folds where a metric is undefined."""
        per_fold = self.fold_metrics(split)
        if self.task == "binary":
            return BinaryMetrics(
                sensitivity=mean_defined([m.sensitivity for m in per_fold]),
                specificity=mean_defined([m.specificity for m in per_fold]),
                accuracy=mean_defined([m.accuracy for m in per_fold]),
            )
        return MulticlassMetrics(
            sensitivities={
                c: mean_defined([m.sensitivities[c] for m in per_fold]) for c in self.classes
            },
            accuracy=mean_defined([m.accuracy for m in per_fold]),
        )


def fold_seeds(seed: int, k: int) -> list[int]:
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(k)]


def _grid_order(grid: Sequence[SvmConfig], n_features: int) -> list[SvmConfig]:
    # ties in selection go to smaller C, then smaller gamma
    return sorted(grid, key=lambda c: (c.C, resolve_gamma(c, n_features) or 0.0))


def select_config(
    x: np.ndarray,
    labels: np.ndarray,
    grid: Sequence[SvmConfig],
    classes: tuple[str, ...],
    seed: int,
    inner_folds: int = 3,
    train_fn: TrainFn = train_classifier,
) -> SvmConfig:
    """Grid point with the best pooled inner-split accuracy on (x, labels)."""
    ordered = _grid_order(grid, x.shape[1])
    if len(ordered) == 1:
        return ordered[0]
    if len(labels) < inner_folds:
        logger.warning("inner_selection_skipped", rows=len(labels), inner_folds=inner_folds)
        return ordered[0]

    assignment = stratified_kfold(labels, inner_folds, seed)
    usable = []
    for fold in range(inner_folds):
        train = assignment != fold
        present = set(labels[train])
        if len(present) < 2 or (len(classes) > 2 and present != set(classes)):
            continue
        usable.append(fold)

    best, best_score = ordered[0], -1.0
    for cfg in ordered:
        correct = total = 0
        for fold in usable:
            train, test = assignment != fold, assignment == fold
            model = train_fn(x[train], labels[train].tolist(), cfg, classes=classes)
            predicted = np.asarray(model.predict(x[test]))
            correct += int(np.sum(predicted == labels[test]))
            total += int(test.sum())
        score = correct / total if total else 0.0
        if score > best_score:
            best, best_score = cfg, score
    return best


def _evaluate_fold(args) -> FoldResult:
    x, labels, fold, assignment, grid, classes, seed, inner_folds, train_fn = args
    train, test = assignment != fold, assignment == fold
    seen = set(labels[train].tolist())
    present = tuple(c for c in classes if c in seen)
    with create_span("cv_fold", {"fold": fold}):
        if len(present) < 2:
            # nothing to separate; every row gets the one training class
            logger.warning("fold_single_class", fold=fold, present=list(present))
            cfg = _grid_order(grid, x.shape[1])[0]
            train_pred = [present[0]] * int(train.sum())
            test_pred = [present[0]] * int(test.sum())
        else:
            if len(present) < len(classes):
                missing = [c for c in classes if c not in seen]
                logger.warning("fold_classes_missing", fold=fold, missing=missing)
            cfg = select_config(
                x[train], labels[train], grid, present, seed, inner_folds, train_fn
            )
            model = train_fn(x[train], labels[train].tolist(), cfg, classes=present)
            train_pred = model.predict(x[train])
            test_pred = model.predict(x[test])
        train_cm = ConfusionMatrix.from_predictions(labels[train].tolist(), train_pred, classes)
        test_cm = ConfusionMatrix.from_predictions(labels[test].tolist(), test_pred, classes)
    logger.info(
        "fold_evaluated",
        fold=fold,
        C=cfg.C,
        gamma=cfg.gamma,
        train_rows=int(train.sum()),
        test_rows=int(test.sum()),
    )
    return FoldResult(fold, cfg, train_cm, test_cm)


def run_cv(
    x,
    labels: Sequence[str],
    k: int,
    grid: Sequence[SvmConfig],
    seed: int = 0,
    *,
    task: Literal["auto", "binary", "multiclass"] = "auto",
    classes: Sequence[str] | None = None,
    groups: Sequence[str] | None = None,
    inner_folds: int = 3,
    train_fn: TrainFn = train_classifier,
    workers: int = 1,
) -> CvReport:
    """
    Cross-validate an SVM grid.

    Args:
        x: (n, d) feature matrix
        labels: Class label per row
        k: Number of outer folds, lowered (never below 2) to the size of the
            rarest class when that class is smaller
        grid: Candidate SVM configurations
        seed: Master seed for fold assignment and inner splits
        task: "binary", "multiclass", or "auto" (by label arity)
        classes: Class order; for binary the first class is positive
        groups: Optional subject id per row for subject-level folds
        inner_folds: Folds of the inner selection split
        train_fn: Trainer with the signature of train_classifier
        workers: Process pool size for fold-parallel evaluation

    Raises:
        TooFewRows: Invalid k or too few rows
        SingleClass: Fewer than two classes
    """
    x = np.asarray(x, dtype=np.float64)
    labels = np.asarray([str(label) for label in labels])
    if not grid:
        raise EvaluationError("SVM grid is empty")
    classes = tuple(classes) if classes is not None else order_classes(labels.tolist())
    if len(set(labels.tolist())) < 2:
        raise SingleClass(f"cross-validation needs two classes, got {sorted(set(labels.tolist()))}")
    if task == "auto":
        task = "binary" if len(classes) == 2 else "multiclass"
    if task == "binary" and len(classes) != 2:
        raise EvaluationError(f"binary task needs exactly 2 classes, got {classes}")

    smallest = smallest_class_size(labels.tolist(), groups)
    if 2 <= k and smallest < k:
        clamped = max(smallest, 2)
        logger.warning("folds_clamped", requested=k, folds=clamped, smallest_class=smallest)
        k = clamped
    assignment = stratified_kfold(labels.tolist(), k, seed, groups)
    seeds = fold_seeds(seed, k)
    jobs = [
        (x, labels, fold, assignment, list(grid), classes, seeds[fold], inner_folds, train_fn)
        for fold in range(k)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            folds = tuple(pool.map(_evaluate_fold, jobs))
    else:
        folds = tuple(_evaluate_fold(job) for job in jobs)
    return CvReport(task, classes, folds)
