"""State and derivative estimation from noisy samples."""

from services.smoother.kernels import kernel, kernel_weights, support_half_width
from services.smoother.local_poly import local_operator, local_poly_fit, smooth_lead
from services.smoother.schemas import KernelName, SmootherConfig
from services.smoother.spline import cubic_spline_fit

__all__ = [
    "KernelName",
    "SmootherConfig",
    "cubic_spline_fit",
    "kernel",
    "kernel_weights",
    "local_operator",
    "local_poly_fit",
    "smooth_lead",
    "support_half_width",
]
