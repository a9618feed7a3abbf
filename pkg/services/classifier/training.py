"""SVM training: binary machines and one-vs-one ensembles."""

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from core.errors import ClassifierError, DegenerateFeatures, EmptyPair, SingleClass
from core.logging import get_logger
from core.models.common import order_classes
from services.classifier.kernels import kernel_matrix
from services.classifier.model import BinaryMachine, Standardizer, SvmModel, pairwise_classes
from services.classifier.schemas import KernelType, SvmConfig
from services.classifier.smo import solve_smo

logger = get_logger(__name__)

StepCallback = Callable[[int, float], None]


def resolve_gamma(cfg: SvmConfig, n_features: int) -> float | None:
    if cfg.kernel == KernelType.LINEAR:
        return None
    return cfg.gamma if cfg.gamma is not None else 1.0 / n_features


def class_multipliers(labels: Sequence[str], cfg: SvmConfig) -> dict[str, float]:
    """Per-class multipliers on C."""
    classes = order_classes(labels)
    if cfg.class_weight == "none":
        return dict.fromkeys(classes, 1.0)
    if cfg.class_weight == "balanced":
        counts = {c: sum(1 for label in labels if label == c) for c in classes}
        n, k = len(labels), len(classes)
        return {c: n / (k * counts[c]) for c in classes}
    return {c: float(cfg.class_weight.get(c, 1.0)) for c in classes}


def _check_rows(x: np.ndarray) -> None:
    if x.ndim != 2 or x.shape[0] < 2:
        raise ClassifierError(f"need a 2-d array with at least 2 rows, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ClassifierError("features must be finite")
    if np.all(x == x[0]):
        raise DegenerateFeatures("all training rows are identical")


def fit_machine(
    z: np.ndarray,
    y: np.ndarray,
    upper: np.ndarray,
    cfg: SvmConfig,
    gamma: float | None,
    positive: str,
    negative: str,
    on_step: StepCallback | None = None,
) -> BinaryMachine:
    """Solve one binary dual on already standardized rows ``z``; y in {+1, -1}."""
    kernel = kernel_matrix(z, z, cfg.kernel, gamma)
    result = solve_smo(
        kernel, y, upper, tol=cfg.tol, max_iter=cfg.max_passes * len(y), on_step=on_step
    )
    support = result.alpha > 0
    logger.debug(
        "machine_trained",
        positive=positive,
        negative=negative,
        rows=len(y),
        support_vectors=int(support.sum()),
        iterations=result.iterations,
        converged=result.converged,
    )
    return BinaryMachine(
        positive=positive,
        negative=negative,
        support_vectors=z[support].copy(),
        dual_coef=result.alpha[support] * y[support],
        intercept=-result.rho,
    )


def _pair_machine(args) -> BinaryMachine:
    z, labels, positive, negative, multipliers, cfg, gamma = args
    keep = (labels == positive) | (labels == negative)
    y = np.where(labels[keep] == positive, 1.0, -1.0)
    upper = cfg.C * np.array([multipliers[label] for label in labels[keep]])
    return fit_machine(z[keep], y, upper, cfg, gamma, positive, negative)


def _prepare(x, cfg: SvmConfig) -> tuple[np.ndarray, Standardizer, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    _check_rows(x)
    standardizer = Standardizer.fit(x) if cfg.standardize else Standardizer.identity(x.shape[1])
    return x, standardizer, standardizer.transform(x)


def train_binary(
    x,
    y,
    cfg: SvmConfig,
    labels: tuple[str, str] = ("+1", "-1"),
    on_step: StepCallback | None = None,
) -> SvmModel:
    """
    Train a two-class SVM on labels y in {+1, -1}.

    The model's classes are ``labels``, the first naming the +1 class.

    Raises:
        SingleClass: Only one label value present
        DegenerateFeatures: All rows identical
    """
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isin(y, (1.0, -1.0))):
        raise ClassifierError("binary labels must be +1 or -1")
    if np.unique(y).size < 2:
        raise SingleClass("training data contains a single class")
    x, standardizer, z = _prepare(x, cfg)
    names = np.where(y > 0, labels[0], labels[1])
    multipliers = class_multipliers(list(names), cfg)
    upper = cfg.C * np.array([multipliers[name] for name in names])
    gamma = resolve_gamma(cfg, x.shape[1])
    machine = fit_machine(z, y, upper, cfg, gamma, labels[0], labels[1], on_step)
    return SvmModel(tuple(labels), cfg.kernel, gamma, standardizer, (machine,))


def train_multiclass(
    x,
    labels: Sequence[str],
    cfg: SvmConfig,
    classes: Sequence[str] | None = None,
    workers: int = 1,
) -> SvmModel:
    """
    Train K(K-1)/2 one-vs-one machines with a shared standardization.

    Raises:
        EmptyPair: A class in ``classes`` has no rows
        ClassifierError: Fewer than three classes
    """
    labels_array = np.asarray([str(label) for label in labels])
    classes = tuple(classes) if classes is not None else order_classes(labels_array.tolist())
    if len(classes) < 3:
        raise ClassifierError(f"multiclass training needs at least 3 classes, got {len(classes)}")
    empty = [c for c in classes if not np.any(labels_array == c)]
    if empty:
        raise EmptyPair(f"classes without rows: {empty}", classes=empty)
    x, standardizer, z = _prepare(x, cfg)
    gamma = resolve_gamma(cfg, x.shape[1])
    multipliers = class_multipliers(labels_array.tolist(), cfg)

    jobs = [
        (z, labels_array, positive, negative, multipliers, cfg, gamma)
        for positive, negative in pairwise_classes(classes)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            machines = tuple(pool.map(_pair_machine, jobs))
    else:
        machines = tuple(_pair_machine(job) for job in jobs)
    return SvmModel(classes, cfg.kernel, gamma, standardizer, machines)


def train_classifier(
    x,
    labels: Sequence[str],
    cfg: SvmConfig,
    classes: Sequence[str] | None = None,
    workers: int = 1,
) -> SvmModel:
    """
    Train a binary SVM (two classes; ``classes[0]`` is positive) or a
    one-vs-one ensemble (three or more classes).

    Raises:
        SingleClass: Fewer than two classes present
    """
    labels = [str(label) for label in labels]
    classes = tuple(classes) if classes is not None else order_classes(labels)
    present = set(labels)
    if len(present) < 2:
        raise SingleClass(f"training data contains a single class {sorted(present)}")
    if len(classes) == 2:
        unknown = present.difference(classes)
        if unknown:
            raise ClassifierError(f"labels {sorted(unknown)} are not among {classes}")
        y = np.where(np.asarray(labels) == classes[0], 1.0, -1.0)
        return train_binary(x, y, cfg, labels=(classes[0], classes[1]))
    return train_multiclass(x, labels, cfg, classes, workers)

