"""Stratified k-fold assignment."""

from collections import Counter
from collections.abc import Sequence

import numpy as np

from core.errors import TooFewRows
from core.models.common import order_classes


def _deal(units_by_class: dict[str, list], k: int, rng: np.random.Generator) -> dict:
    """Shuffle each class's units and deal them round-robin, continuing the
    fold counter from one class to the next."""
    fold_of = {}
    counter = 0
    for units in units_by_class.values():
        for unit in rng.permutation(len(units)):
            fold_of[units[unit]] = counter % k
            counter += 1
    return fold_of


def stratified_kfold(
    labels: Sequence[str],
    k: int,
    seed: int | np.random.SeedSequence = 0,
    groups: Sequence[str] | None = None,
) -> np.ndarray:
    """
    Fold index in [0, k) for every row.

    Without ``groups`` fold sizes differ by at most one, as do the per-class
    counts of any two folds. With ``groups`` whole groups (subjects) are dealt;
    a group's class is its most frequent label, ties going to class order.

    Raises:
        TooFewRows: k < 2, or fewer rows (groups) than folds
    """
    labels = [str(label) for label in labels]
    if k < 2:
        raise TooFewRows(f"need k >= 2 folds, got {k}", k=k)
    rng = np.random.default_rng(seed)
    classes = order_classes(labels)

    if groups is None:
        if len(labels) < k:
            raise TooFewRows(f"{len(labels)} rows cannot fill {k} folds", rows=len(labels), k=k)
        by_class = {c: [i for i, label in enumerate(labels) if label == c] for c in classes}
        fold_of = _deal(by_class, k, rng)
        return np.array([fold_of[i] for i in range(len(labels))], dtype=np.int64)

    groups = [str(group) for group in groups]
    if len(groups) != len(labels):
        raise TooFewRows("groups must have one entry per row")
    group_class = _group_classes(labels, groups, classes)
    if len(group_class) < k:
        raise TooFewRows(
            f"{len(group_class)} subjects cannot fill {k} folds", subjects=len(group_class), k=k
        )
    by_class = {c: [g for g in group_class if group_class[g] == c] for c in classes}
    fold_of = _deal(by_class, k, rng)
    return np.array([fold_of[group] for group in groups], dtype=np.int64)


def _group_classes(
    labels: Sequence[str], groups: Sequence[str], classes: tuple[str, ...]
) -> dict[str, str]:
    # most frequent label of each group, ties going to class order
    members: dict[str, list[str]] = {}
    for group, label in zip(groups, labels, strict=True):
        members.setdefault(group, []).append(label)
    rank = {c: i for i, c in enumerate(classes)}
    return {
        group: min(Counter(found).items(), key=lambda item: (-item[1], rank[item[0]]))[0]
        for group, found in members.items()
    }


def smallest_class_size(labels: Sequence[str], groups: Sequence[str] | None = None) -> int:
    """Rows in the rarest class, or subjects when ``groups`` is given."""
    labels = [str(label) for label in labels]
    if groups is None:
        return min(Counter(labels).values(), default=0)
    if len(groups) != len(labels):
        raise TooFewRows("groups must have one entry per row")
    group_class = _group_classes(labels, [str(g) for g in groups], order_classes(labels))
    return min(Counter(group_class.values()).values(), default=0)
