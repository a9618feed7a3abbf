"""Windowed least-squares estimation of time-varying ODE coefficients.

Around each grid time t0 the coefficients are modelled as linear in time,
b(t) = b(t0) + b'(t0) (t - t0), and fitted to every grid point within the
window |t - t0| <= w from

    x''(t) + [b1(t0) + b1'(t0)(t - t0)] x'(t) + [b0(t0) + b0'(t0)(t - t0)] x(t) = 0

One design row per window point is [x', x' s, x, x s] with s = (t - t0) / w,
response -x''. All windows are solved together from one stacked QR
factorization.
"""

import numpy as np

from core.errors import InsufficientWindow, SingularDesign
from core.logging import get_logger
from core.models.dynamics import CoefficientTrack, SmoothedState
from services.coeff_estimator.schemas import EstimatorConfig

logger = get_logger(__name__)

N_PARAMS = 4
WINDOW_TOLERANCE = 1e-9


def window_bounds(grid: np.ndarray, window: float) -> tuple[np.ndarray, np.ndarray]:
    """Index ranges [lo, hi) of grid points within ``window`` of each grid point."""
    lo = np.searchsorted(grid, grid - window - WINDOW_TOLERANCE, side="left")
    hi = np.searchsorted(grid, grid + window + WINDOW_TOLERANCE, side="right")
    return lo, hi


def local_design(
    state: SmoothedState, index: int, lo: int, hi: int, window: float
) -> tuple[np.ndarray, np.ndarray]:
    """Design rows and response of the window around grid point ``index``."""
    s = (state.grid[lo:hi] - state.grid[index]) / window
    dx, x = state.dx[lo:hi], state.x[lo:hi]
    design = np.column_stack([dx, dx * s, x, x * s])
    return design, -state.d2x[lo:hi]


def _stacked_designs(
    state: SmoothedState, lo: np.ndarray, hi: np.ndarray, window: float
) -> tuple[np.ndarray, np.ndarray]:
    counts = hi - lo
    rows = np.arange(counts.max())
    mask = rows[None, :] < counts[:, None]
    idx = np.minimum(lo[:, None] + rows[None, :], len(state) - 1)

    s = (state.grid[idx] - state.grid[:, None]) / window
    dx, x = state.dx[idx], state.x[idx]
    design = np.stack([dx, dx * s, x, x * s], axis=-1) * mask[..., None]
    response = -state.d2x[idx] * mask
    return design, response


def fit_coefficients(state: SmoothedState, cfg: EstimatorConfig) -> CoefficientTrack:
    """
    Estimate b0(t) and b1(t) at every grid time of ``state``.

    Columns are equilibrated before factorization. Windows whose reciprocal
    condition estimate falls below ``cfg.ridge_rcond`` are re-solved with a
    ridge of ``cfg.ridge`` times the largest normal-matrix diagonal.

    Raises:
        InsufficientWindow: A window holds fewer than four grid points
        SingularDesign: A window's design is rank deficient (e.g. x == 0)
    """
    grid = state.grid
    lo, hi = window_bounds(grid, cfg.window)
    counts = hi - lo
    if np.any(counts < N_PARAMS):
        first = int(np.argmax(counts < N_PARAMS))
        raise InsufficientWindow(
            f"window at t={grid[first]} holds {counts[first]} points, need {N_PARAMS}",
            t=float(grid[first]),
        )

    design, response = _stacked_designs(state, lo, hi, cfg.window)
    norms = np.linalg.norm(design, axis=1)
    scaled = design / np.where(norms > 0, norms, 1.0)[:, None, :]

    q, r = np.linalg.qr(scaled)
    diag = np.abs(np.diagonal(r, axis1=1, axis2=2))
    rcond = diag.min(axis=1) / np.maximum(diag.max(axis=1), np.finfo(float).tiny)
    if np.any(rcond < cfg.singular_rcond):
        first = int(np.argmax(rcond < cfg.singular_rcond))
        raise SingularDesign(
            f"coefficient design at t={grid[first]} is singular (rcond {rcond[first]:.3g})",
            t=float(grid[first]),
        )

    qty = np.einsum("mki,mk->mi", q, response)
    beta = np.linalg.solve(r, qty[..., None])[..., 0]

    ridged = rcond < cfg.ridge_rcond
    if np.any(ridged):
        a, b = scaled[ridged], response[ridged]
        normal = np.einsum("mki,mkj->mij", a, a)
        lam = cfg.ridge * np.max(np.diagonal(normal, axis1=1, axis2=2), axis=1)
        normal += lam[:, None, None] * np.eye(N_PARAMS)
        rhs = np.einsum("mki,mk->mi", a, b)
        beta[ridged] = np.linalg.solve(normal, rhs[..., None])[..., 0]

    beta = beta / np.where(norms > 0, norms, 1.0)
    logger.debug(
        "coefficients_fitted",
        points=len(state),
        ridged_windows=int(np.count_nonzero(ridged)),
        min_rcond=float(rcond.min()),
    )
    return CoefficientTrack(grid, beta[:, 2], beta[:, 0])
