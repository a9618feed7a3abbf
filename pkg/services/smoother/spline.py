"""Natural cubic spline baseline."""

import numpy as np
from scipy.interpolate import CubicSpline

from core.errors import TooFewKnots
from core.models.dynamics import SmoothedState
from core.models.signal import LeadSignal

MIN_KNOTS = 4


def cubic_spline_fit(lead: LeadSignal, fs: float, knot_stride: int = 10) -> SmoothedState:
    """
    Interpolate every ``knot_stride``-th sample with a natural cubic spline.

    The state is evaluated at every sample time from the first to the last
    knot, with derivatives taken from the spline's pieces.
    """
    if knot_stride < 1:
        raise TooFewKnots(f"knot_stride must be at least 1, got {knot_stride}")
    knots = np.arange(0, len(lead), knot_stride)
    if knots.size < MIN_KNOTS:
        raise TooFewKnots(f"{knots.size} knots, need at least {MIN_KNOTS}", knots=int(knots.size))

    spline = CubicSpline(knots / fs, lead.samples[knots], bc_type="natural")
    samples = np.arange(0, knots[-1] + 1)
    t = samples / fs
    x = spline(t)
    residual_variance = float(np.mean((lead.samples[samples] - x) ** 2))
    return SmoothedState(t, x, spline(t, 1), spline(t, 2), residual_variance)
