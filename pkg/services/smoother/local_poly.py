"""Kernel-weighted local polynomial regression for state and derivative estimation.

At each evaluation time t0 the samples near t0 are fitted by a degree-p
polynomial in the scaled offset s = (t_j - t0) / h, by weighted least
squares with a small ridge on every term but the intercept. The k-th
coefficient gamma_k gives the k-th derivative as k! * gamma_k / h**k.

On a uniform grid the map from a full window of samples to the derivatives
is the same linear operator at every interior point. It is factored once
and applied to all interior windows; points near the ends of the record get
their own one-sided solve.
"""

from math import factorial

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.linalg import qr, solve_triangular

from core.errors import InsufficientSupport, SingularDesign
from core.logging import get_logger
from core.models.dynamics import SmoothedState
from core.models.signal import LeadSignal
from services.smoother.kernels import kernel_weights, support_half_width
from services.smoother.schemas import SmootherConfig

logger = get_logger(__name__)

SINGULAR_RCOND = 1e-13


def local_operator(offsets: np.ndarray, cfg: SmootherConfig) -> np.ndarray:
    """
    Linear operator L of shape (p+1, m) with derivatives = L @ y_window.

    Args:
        offsets: t_j - t0 in seconds for the m samples of the window
        cfg: Smoother settings

    Raises:
        InsufficientSupport: Fewer than p+1 samples with positive weight
        SingularDesign: Weighted design is numerically rank deficient
    """
    p, h = cfg.poly_order, cfg.bandwidth
    offsets = np.asarray(offsets, dtype=np.float64)
    weights = kernel_weights(offsets, cfg)
    support = int(np.count_nonzero(weights > 0))
    if support < p + 1:
        raise InsufficientSupport(
            f"{support} samples carry kernel weight, need at least {p + 1}",
            support=support,
        )

    design = np.vander(offsets / h, p + 1, increasing=True)
    root_w = np.sqrt(weights)
    penalty = np.sqrt(cfg.ridge) * np.eye(p + 1)[1:]
    augmented = np.vstack([root_w[:, None] * design, penalty])

    q, r = qr(augmented, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() < SINGULAR_RCOND * diag.max():
        raise SingularDesign(
            f"local design is singular (rcond {diag.min() / diag.max():.3g})",
        )
    # gamma = R^-1 Q^T [sqrt(W) y; 0]; only the data rows of Q matter
    gamma_operator = solve_triangular(r, q[: offsets.size].T) * root_w
    scale = np.array([factorial(k) / h**k for k in range(p + 1)])
    return scale[:, None] * gamma_operator


def _window_offsets(lo: int, hi: int, center: float, fs: float) -> np.ndarray:
    return (np.arange(lo, hi) - center) / fs


def local_poly_fit(lead: LeadSignal, fs: float, t0: float, cfg: SmootherConfig) -> np.ndarray:
    """
    Derivatives (x, x', x'', ..., x^(p)) of the state at time ``t0``.

    Only samples within the kernel support around ``t0`` enter the solve.
    """
    center = t0 * fs
    half = support_half_width(cfg, fs)
    lo = max(int(np.ceil(center - half - 1e-9)), 0)
    hi = min(int(np.floor(center + half + 1e-9)) + 1, len(lead))
    if hi <= lo:
        raise InsufficientSupport(f"no samples within the kernel support of t0={t0}")
    operator = local_operator(_window_offsets(lo, hi, center, fs), cfg)
    return operator @ lead.samples[lo:hi]


def smooth_lead(lead: LeadSignal, fs: float, cfg: SmootherConfig) -> SmoothedState:
    """
    Estimate x, x', x'' at every ``eval_stride``-th sample of ``lead``.

    ``residual_variance`` is the mean of (y - x_hat)^2 over the evaluation points.
    """
    y = lead.samples
    n = y.size
    if n < cfg.poly_order + 1:
        raise InsufficientSupport(
            f"lead {lead.name!r} has {n} samples, need at least {cfg.poly_order + 1}"
        )
    half = support_half_width(cfg, fs)
    width = 2 * half + 1
    points = np.arange(0, n, cfg.eval_stride)
    estimates = np.empty((points.size, cfg.poly_order + 1))

    interior = (points >= half) & (points <= n - 1 - half)
    if np.any(interior):
        operator = local_operator(np.arange(-half, half + 1) / fs, cfg)
        windows = sliding_window_view(y, width)[points[interior] - half]
        estimates[interior] = windows @ operator.T

    for row in np.flatnonzero(~interior):
        i = int(points[row])
        lo, hi = max(i - half, 0), min(i + half + 1, n)
        operator = local_operator(_window_offsets(lo, hi, i, fs), cfg)
        estimates[row] = operator @ y[lo:hi]

    x = estimates[:, 0]
    residual_variance = float(np.mean((y[points] - x) ** 2))
    logger.debug(
        "lead_smoothed",
        lead=lead.name,
        points=int(points.size),
        boundary_points=int(np.count_nonzero(~interior)),
        residual_variance=residual_variance,
    )
    return SmoothedState(points / fs, x, estimates[:, 1], estimates[:, 2], residual_variance)
