"""Peak signal-to-noise ratio on the 0-255 intensity scale."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["psnr"]


def psnr(x, x_recon, max_value: float = 255.0) -> float:
    """20 * log10(max_value * sqrt(D) / ||x - x_recon||_F), D = entry count.

    Returns ``math.inf`` when the two arrays are identical (zero error).
    """
    x = np.asarray(x, dtype=np.float64)
    r = np.asarray(x_recon, dtype=np.float64)
    if x.shape != r.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {r.shape}")
    err = np.linalg.norm((x - r).ravel())
    if err == 0.0:
        return math.inf
    return 20.0 * math.log10(max_value * math.sqrt(x.size) / err)
