"""Tests for stratified fold assignment."""

from collections import Counter

import numpy as np
import pytest

from core.errors import TooFewRows
from services.evaluation.folds import smallest_class_size, stratified_kfold


class TestStratifiedKfold:
    """Test cases for stratified_kfold."""

    def test_one_of_each_per_fold(self):
        """Ten per class in ten folds puts one of each in every fold."""
        labels = ["MI"] * 10 + ["HC"] * 10
        folds = stratified_kfold(labels, 10, seed=3)
        for fold in range(10):
            members = [labels[i] for i in np.flatnonzero(folds == fold)]
            assert sorted(members) == ["HC", "MI"]

    def test_ptb_binary_counts(self):
        """368 MI and 80 HC in ten folds."""
        labels = ["MI"] * 368 + ["HC"] * 80
        folds = stratified_kfold(labels, 10, seed=0)
        sizes = Counter(folds.tolist())
        assert sorted(sizes.values()) == [44, 44] + [45] * 8
        for label in ("MI", "HC"):
            per_fold = Counter(f for f, lab in zip(folds.tolist(), labels, strict=True) if lab == label)
            assert max(per_fold.values()) - min(per_fold.values()) <= 1
            assert len(per_fold) == 10

    def test_every_row_in_one_fold(self):
        """Folds partition the rows."""
        labels = ["a"] * 7 + ["b"] * 5 + ["c"] * 3
        folds = stratified_kfold(labels, 3, seed=1)
        assert folds.shape == (15,)
        assert set(folds.tolist()) == {0, 1, 2}

    def test_deterministic(self):
        """Same seed, same folds; another seed shuffles."""
        labels = ["MI"] * 30 + ["HC"] * 30
        first = stratified_kfold(labels, 5, seed=9)
        assert np.array_equal(first, stratified_kfold(labels, 5, seed=9))
        assert not np.array_equal(first, stratified_kfold(labels, 5, seed=10))

    def test_groups_keep_subjects_together(self):
        """All records of a subject share a fold."""
        labels = ["MI"] * 12 + ["HC"] * 8
        groups = [f"p{i // 2}" for i in range(20)]
        folds = stratified_kfold(labels, 4, seed=2, groups=groups)
        for subject in set(groups):
            assert len({int(folds[i]) for i, g in enumerate(groups) if g == subject}) == 1

    @pytest.mark.parametrize("k", [0, 1])
    def test_invalid_k(self, k):
        """k must be at least two."""
        with pytest.raises(TooFewRows):
            stratified_kfold(["MI", "HC"], k)

    def test_too_few_rows(self):
        """More folds than rows."""
        with pytest.raises(TooFewRows):
            stratified_kfold(["MI", "HC", "MI"], 4)

    def test_too_few_subjects(self):
        """More folds than subjects."""
        with pytest.raises(TooFewRows):
            stratified_kfold(["MI", "MI", "HC", "HC"], 3, groups=["a", "a", "b", "b"])


class TestSmallestClassSize:
    """Test cases for smallest_class_size."""

    def test_rows(self):
        assert smallest_class_size(["MI"] * 5 + ["HC"] * 2 + ["BBB"] * 3) == 2

    def test_subjects(self):
        """With groups, subjects are counted under their majority label."""
        labels = ["MI", "MI", "HC", "HC", "MI", "HC"]
        groups = ["s1", "s1", "s2", "s2", "s3", "s3"]
        # s3 ties MI/HC and goes to MI by class order
        assert smallest_class_size(labels, groups) == 1
