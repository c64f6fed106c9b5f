import numpy as np

from jointsparse.ops import svd


def soft_threshold(z, tau):
    """Proximal map of tau * |.| for complex entries.

    Shrinks the modulus by ``tau`` and keeps the phase: z * max(1 - tau / |z|, 0).
    Entries with |z| <= tau map to 0, ties included.

    Args:
        z (complex | ndarray): Input, scalar or array.
        tau (float): Threshold, tau >= 0.

    Returns:
        complex | ndarray: Same shape as ``z``.
    """
    if tau < 0:
        raise ValueError(f'Threshold must be non-negative, but got {tau}.')
    z = np.asarray(z, dtype=np.complex128)
    mag = np.abs(z)
    scale = np.zeros_like(mag)
    keep = mag > tau
    scale[keep] = 1. - tau / mag[keep]
    out = z * scale
    if out.ndim == 0:
        return complex(out)
    return out


def svt(mat, tau):
    """Singular value thresholding, the proximal map of tau * nuclear norm."""
    if tau < 0:
        raise ValueError(f'Threshold must be non-negative, but got {tau}.')
    u, s, vh = svd(mat, full_matrices=False)
    shrunk = np.maximum(s - tau, 0.)
    keep = shrunk > 0
    return (u[:, keep] * shrunk[keep]) @ vh[keep]
