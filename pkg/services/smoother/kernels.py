"""Kernel functions for local polynomial smoothing."""

import numpy as np

from services.smoother.schemas import KernelName, SmootherConfig

# Support radius in units of the bandwidth
SUPPORT = {
    KernelName.EPANECHNIKOV: 1.0,
    KernelName.GAUSSIAN: 4.0,
}


def kernel(u: np.ndarray, name: KernelName) -> np.ndarray:
    """K(u), zero outside the kernel's support."""
    u = np.asarray(u, dtype=np.float64)
    inside = np.abs(u) <= SUPPORT[name]
    if name == KernelName.EPANECHNIKOV:
        values = 0.75 * (1.0 - u**2)
    else:
        values = np.exp(-0.5 * u**2) / np.sqrt(2.0 * np.pi)
    return np.where(inside, values, 0.0)


def kernel_weights(offsets: np.ndarray, cfg: SmootherConfig) -> np.ndarray:
    """Weights K((t_j - t0) / h) / h for time offsets t_j - t0 in seconds."""
    return kernel(np.asarray(offsets) / cfg.bandwidth, cfg.kernel) / cfg.bandwidth


def support_half_width(cfg: SmootherConfig, fs: float) -> int:
    """Samples on each side of t0 that can carry weight."""
    return int(np.floor(SUPPORT[cfg.kernel] * cfg.bandwidth * fs + 1e-9))
