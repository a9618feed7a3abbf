"""Soft-margin kernel SVM trained by SMO, with one-vs-one multiclass voting."""

from services.classifier.kernels import kernel_matrix
from services.classifier.model import BinaryMachine, Standardizer, SvmModel, pairwise_classes
from services.classifier.schemas import KernelType, SvmConfig, SvmModelDocument
from services.classifier.smo import SmoResult, dual_objective, solve_smo
from services.classifier.training import (
    class_multipliers,
    fit_machine,
    resolve_gamma,
    train_binary,
    train_classifier,
    train_multiclass,
)

__all__ = [
    "BinaryMachine",
    "KernelType",
    "SmoResult",
    "Standardizer",
    "SvmConfig",
    "SvmModel",
    "SvmModelDocument",
    "class_multipliers",
    "dual_objective",
    "fit_machine",
    "kernel_matrix",
    "pairwise_classes",
    "resolve_gamma",
    "solve_smo",
    "train_binary",
    "train_classifier",
    "train_multiclass",
]
