"""Fixed-step RK4 for x'' + b1(t) x' + b0(t) x = 0."""

import numpy as np

from core.errors import GridCoverage, NonFinite, OdeError
from core.logging import get_logger
from core.models.dynamics import CoefficientTrack, OdeInitialState, Trajectory

logger = get_logger(__name__)

COVERAGE_TOLERANCE = 1e-9


def sample_count(fs: float, duration: float) -> int:
    """Number of uniform samples a record of ``duration`` seconds holds at ``fs``."""
    return int(round(duration * fs))


def solve_ode(
    track: CoefficientTrack,
    init: OdeInitialState,
    fs: float,
    duration: float,
) -> Trajectory:
    """
    Integrate the homogeneous second-order ODE forward from ``init``.

    The state (x, v) is advanced with classical RK4 at step 1/fs.
    Coefficients between track grid points are linearly interpolated. The
    result holds round(duration * fs) samples starting at ``init.t0``.

    Raises:
        GridCoverage: The track does not span [t0, t0 + duration]
        NonFinite: The solution overflowed
    """
    if not fs > 0 or not duration > 0:
        raise OdeError(f"fs and duration must be positive, got fs={fs}, duration={duration}")
    t0 = init.t0
    if track.grid[0] > t0 + COVERAGE_TOLERANCE or track.grid[-1] < t0 + duration - COVERAGE_TOLERANCE:
        raise GridCoverage(
            f"track covers [{track.grid[0]}, {track.grid[-1]}], "
            f"need [{t0}, {t0 + duration}]",
        )

    n = max(sample_count(fs, duration), 1)
    step = 1.0 / fs
    t = t0 + step * np.arange(n)
    b0, b1 = track.at(t)
    b0_mid, b1_mid = track.at(t + 0.5 * step)

    x = np.empty(n)
    v = np.empty(n)
    x[0], v[0] = init.x0, init.v0
    for j in range(n - 1):
        xj, vj = x[j], v[j]
        k1x, k1v = vj, -b1[j] * vj - b0[j] * xj
        x2, v2 = xj + 0.5 * step * k1x, vj + 0.5 * step * k1v
        k2x, k2v = v2, -b1_mid[j] * v2 - b0_mid[j] * x2
        x3, v3 = xj + 0.5 * step * k2x, vj + 0.5 * step * k2v
        k3x, k3v = v3, -b1_mid[j] * v3 - b0_mid[j] * x3
        x4, v4 = xj + step * k3x, vj + step * k3v
        k4x, k4v = v4, -b1[j + 1] * v4 - b0[j + 1] * x4
        x[j + 1] = xj + step * (k1x + 2 * k2x + 2 * k3x + k4x) / 6
        v[j + 1] = vj + step * (k1v + 2 * k2v + 2 * k3v + k4v) / 6

    finite = np.isfinite(x) & np.isfinite(v)
    if not np.all(finite):
        first = int(np.argmin(finite))
        raise NonFinite(f"solution is not finite from t={t[first]}", t=float(t[first]))
    return Trajectory(t, x, v)
