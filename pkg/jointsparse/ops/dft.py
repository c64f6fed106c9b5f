"""Unitary DFT matrix and its fast application.

Indexing is 0-based throughout: D[i, j] = W**(i*j) / sqrt(n) with
W = exp(-2*pi*1j / n), so D @ x equals ``scipy.fft.fft(x, norm='ortho')``.
"""
import numpy as np
from scipy import fft as sp_fft


def dft_matrix(n):
    """Build the unitary DFT matrix.

    Args:
        n (int): Signal length, n >= 1.

    Returns:
        ndarray: Complex (n, n) matrix D.
    """
    if n < 1:
        raise ValueError(f'DFT size must be positive, but got {n}.')
    idx = np.arange(n)
    # reduce the exponent mod n first to keep the angle small and exact
    exponent = np.outer(idx, idx) % n
    return np.exp(-2j * np.pi * exponent / n) / np.sqrt(n)


def apply_dft(x, inverse=False, axis=-1):
    """Apply D (or D* when ``inverse`` is set) along ``axis``.

    scipy.fft handles every length in O(n log n), composite or prime.
    """
    x = np.asarray(x, dtype=np.complex128)
    if inverse:
        return sp_fft.ifft(x, axis=axis, norm='ortho')
    return sp_fft.fft(x, axis=axis, norm='ortho')


def restricted_dft_projector(mask, adjoint_first=True):
    """Dense D* I_S D (``adjoint_first``) or D I_S D* for a boolean mask."""
    mask = np.asarray(mask, dtype=bool)
    dft = dft_matrix(mask.size)
    if adjoint_first:
        return dft.conj().T @ (mask[:, None] * dft)
    return dft @ (mask[:, None] * dft.conj().T)
