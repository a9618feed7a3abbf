"""Sequential minimal optimization for the soft-margin SVM dual.

Solves

    min_a  1/2 a^T Q a - e^T a    s.t.  y^T a = 0,  0 <= a_i <= C_i

with Q_ij = y_i y_j K_ij, two multipliers at a time. The working pair is the
maximal violating pair of the first-order optimality conditions, scanned in
index order, so the result is deterministic. Update and bias rules follow
LIBSVM.
"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from core.logging import get_logger

logger = get_logger(__name__)

# Curvature floor for non-positive-definite pairs
TAU = 1e-12


@dataclass(frozen=True, eq=False)
class SmoResult:
    """Dual solution and convergence diagnostics."""

    alpha: np.ndarray
    rho: float
    iterations: int
    converged: bool
    gap: float
    objective: float


def dual_objective(alpha: np.ndarray, q: np.ndarray) -> float:
    """Dual objective sum(a) - 1/2 a^T Q a, to be maximized."""
    return float(alpha.sum() - 0.5 * alpha @ q @ alpha)


def _violating_pair(
    alpha: np.ndarray, grad: np.ndarray, y: np.ndarray, upper: np.ndarray
) -> tuple[int, int, float]:
    minus_yg = -y * grad
    in_up = ((y > 0) & (alpha < upper)) | ((y < 0) & (alpha > 0))
    in_low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < upper))
    if not in_up.any() or not in_low.any():
        return -1, -1, 0.0
    up_scores = np.where(in_up, minus_yg, -np.inf)
    low_scores = np.where(in_low, minus_yg, np.inf)
    i = int(np.argmax(up_scores))
    j = int(np.argmin(low_scores))
    return i, j, float(up_scores[i] - low_scores[j])


def _calculate_rho(alpha: np.ndarray, grad: np.ndarray, y: np.ndarray, upper: np.ndarray) -> float:
    yg = y * grad
    at_upper = alpha >= upper
    at_lower = alpha <= 0
    free = ~(at_upper | at_lower)
    if free.any():
        return float(yg[free].mean())
    ub_mask = (at_upper & (y < 0)) | (at_lower & (y > 0))
    lb_mask = (at_upper & (y > 0)) | (at_lower & (y < 0))
    ub = yg[ub_mask].min() if ub_mask.any() else np.inf
    lb = yg[lb_mask].max() if lb_mask.any() else -np.inf
    return float((ub + lb) / 2)


def solve_smo(
    kernel: np.ndarray,
    y: np.ndarray,
    upper: np.ndarray,
    tol: float = 1e-3,
    max_iter: int = 100_000,
    on_step: Callable[[int, float], None] | None = None,
) -> SmoResult:
    """
    Run SMO until the maximal KKT violation is below ``tol``.

    Args:
        kernel: (n, n) kernel matrix
        y: Labels in {+1, -1}
        upper: Per-sample box bounds C_i
        tol: Stopping tolerance on the violating-pair gap
        max_iter: Cap on pair updates
        on_step: Called as ``on_step(iteration, dual_objective)`` after each update

    Returns:
        SmoResult; ``decision(x) = sum_i alpha_i y_i k(x_i, x) - rho``
    """
    y = np.asarray(y, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    n = y.size
    q = (y[:, None] * y[None, :]) * kernel
    diag = np.diag(q).copy()
    alpha = np.zeros(n)
    grad = -np.ones(n)

    iterations, gap, converged = 0, np.inf, False
    while iterations < max_iter:
        i, j, gap = _violating_pair(alpha, grad, y, upper)
        if i < 0 or gap < tol:
            converged = True
            break
        iterations += 1

        old_i, old_j = alpha[i], alpha[j]
        c_i, c_j = upper[i], upper[j]
        if y[i] != y[j]:
            quad = diag[i] + diag[j] + 2 * q[i, j]
            quad = quad if quad > 0 else TAU
            delta = (-grad[i] - grad[j]) / quad
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0
                    alpha[i] = diff
            elif alpha[i] < 0:
                alpha[i] = 0
                alpha[j] = -diff
            if diff > c_i - c_j:
                if alpha[i] > c_i:
                    alpha[i] = c_i
                    alpha[j] = c_i - diff
            elif alpha[j] > c_j:
                alpha[j] = c_j
                alpha[i] = c_j + diff
        else:
            quad = diag[i] + diag[j] - 2 * q[i, j]
            quad = quad if quad > 0 else TAU
            delta = (grad[i] - grad[j]) / quad
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > c_i:
                if alpha[i] > c_i:
                    alpha[i] = c_i
                    alpha[j] = total - c_i
            elif alpha[j] < 0:
                alpha[j] = 0
                alpha[i] = total
            if total > c_j:
                if alpha[j] > c_j:
                    alpha[j] = c_j
                    alpha[i] = total - c_j
            elif alpha[i] < 0:
                alpha[i] = 0
                alpha[j] = total

        grad += q[:, i] * (alpha[i] - old_i) + q[:, j] * (alpha[j] - old_j)
        if on_step is not None:
            on_step(iterations, float(-0.5 * alpha @ (grad - 1.0)))

    if not converged:
        logger.warning("smo_iteration_cap", iterations=iterations, gap=gap, tol=tol)
    rho = _calculate_rho(alpha, grad, y, upper)
    objective = float(-0.5 * alpha @ (grad - 1.0))
    logger.debug(
        "smo_converged" if converged else "smo_stopped",
        iterations=iterations,
        gap=gap,
        objective=objective,
    )
    return SmoResult(alpha, rho, iterations, converged, float(gap), objective)
