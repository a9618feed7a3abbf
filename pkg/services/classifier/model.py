"""Trained SVM models and their JSON documents."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.errors import DimensionMismatch
from services.classifier.kernels import kernel_matrix
from services.classifier.schemas import (
    KernelType,
    MachineDocument,
    StandardizerDocument,
    SvmModelDocument,
)


@dataclass(frozen=True, eq=False)
class Standardizer:
    """Per-feature z-scoring with training-set mean and population sd."""

    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        scale = x.std(axis=0)
        return cls(x.mean(axis=0), np.where(scale > 0, scale, 1.0))

    @classmethod
    def identity(cls, n_features: int) -> "Standardizer":
        return cls(np.zeros(n_features), np.ones(n_features))

    def transform(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale


@dataclass(frozen=True, eq=False)
class BinaryMachine:
    """One two-class SVM: decision(z) = sum_i dual_coef_i k(sv_i, z) + intercept.

    ``dual_coef`` holds alpha_i * y_i with y = +1 for ``positive``.
    """

    positive: str
    negative: str
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    intercept: float

    def decision(self, z: np.ndarray, kernel: KernelType, gamma: float | None) -> np.ndarray:
        if self.dual_coef.size == 0:
            return np.full(z.shape[0], self.intercept)
        return kernel_matrix(z, self.support_vectors, kernel, gamma) @ self.dual_coef + self.intercept


@dataclass(frozen=True, eq=False)
class SvmModel:
    """Binary SVM or one-vs-one ensemble over ``classes``.

    For two classes there is a single machine whose positive class is
    ``classes[0]``. A decision value of exactly 0 predicts the positive class.
    """

    classes: tuple[str, ...]
    kernel: KernelType
    gamma: float | None
    standardizer: Standardizer
    machines: tuple[BinaryMachine, ...]

    @property
    def n_features(self) -> int:
        return int(self.standardizer.mean.size)

    @property
    def is_binary(self) -> bool:
        return len(self.classes) == 2

    def _prepare(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.n_features:
            raise DimensionMismatch(
                f"rows have {x.shape[1]} features, model expects {self.n_features}",
                expected=self.n_features,
                actual=int(x.shape[1]),
            )
        return self.standardizer.transform(x)

    def decision_values(self, x) -> np.ndarray:
        """(n_rows, n_machines) decision values."""
        z = self._prepare(x)
        return np.column_stack([m.decision(z, self.kernel, self.gamma) for m in self.machines])

    def decision_function(self, x) -> np.ndarray:
        """Decision value of the single machine of a binary model."""
        return self.decision_values(x)[:, 0]

    def predict(self, x) -> list[str]:
        values = self.decision_values(x)
        if self.is_binary:
            machine = self.machines[0]
            return [machine.positive if v >= 0 else machine.negative for v in values[:, 0]]
        return [self._vote(row) for row in values]

    def _vote(self, row: np.ndarray) -> str:
        votes = dict.fromkeys(self.classes, 0)
        margins = dict.fromkeys(self.classes, 0.0)
        for machine, value in zip(self.machines, row, strict=True):
            winner = machine.positive if value >= 0 else machine.negative
            votes[winner] += 1
            margins[winner] += abs(float(value))
        # most votes, then largest summed margin, then class order
        return max(self.classes, key=lambda c: (votes[c], margins[c], -self.classes.index(c)))

    def to_document(self) -> SvmModelDocument:
        return SvmModelDocument(
            kernel=self.kernel,
            gamma=self.gamma,
            classes=list(self.classes),
            n_features=self.n_features,
            standardizer=StandardizerDocument(
                mean=self.standardizer.mean.tolist(), scale=self.standardizer.scale.tolist()
            ),
            machines=[
                MachineDocument(
                    positive=m.positive,
                    negative=m.negative,
                    support_vectors=m.support_vectors.tolist(),
                    dual_coef=m.dual_coef.tolist(),
                    intercept=m.intercept,
                )
                for m in self.machines
            ],
        )

    def to_json(self) -> str:
        return self.to_document().model_dump_json(indent=2)

    @classmethod
    def from_document(cls, document: SvmModelDocument) -> "SvmModel":
        n = document.n_features
        machines = tuple(
            BinaryMachine(
                positive=m.positive,
                negative=m.negative,
                support_vectors=np.asarray(m.support_vectors, dtype=np.float64).reshape(-1, n),
                dual_coef=np.asarray(m.dual_coef, dtype=np.float64),
                intercept=m.intercept,
            )
            for m in document.machines
        )
        return cls(
            classes=tuple(document.classes),
            kernel=document.kernel,
            gamma=document.gamma,
            standardizer=Standardizer(
                np.asarray(document.standardizer.mean, dtype=np.float64),
                np.asarray(document.standardizer.scale, dtype=np.float64),
            ),
            machines=machines,
        )

    @classmethod
    def from_json(cls, text: str) -> "SvmModel":
        return cls.from_document(SvmModelDocument.model_validate_json(text))


def pairwise_classes(classes: Sequence[str]) -> list[tuple[str, str]]:
    """One-vs-one pairs in class order: (c0, c1), (c0, c2), ..., (c_{K-2}, c_{K-1})."""
    return [(a, b) for i, a in enumerate(classes) for b in classes[i + 1 :]]
