"""Kernel matrices for the SVM."""

import numpy as np
from scipy.spatial.distance import cdist

from services.classifier.schemas import KernelType


def kernel_matrix(
    a: np.ndarray, b: np.ndarray, kernel: KernelType, gamma: float | None = None
) -> np.ndarray:
    """K[i, j] = k(a_i, b_j)."""
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    b = np.atleast_2d(np.asarray(b, dtype=np.float64))
    if kernel == KernelType.LINEAR:
        return a @ b.T
    if gamma is None:
        raise ValueError("rbf kernel needs gamma")
    return np.exp(-gamma * cdist(a, b, "sqeuclidean"))
