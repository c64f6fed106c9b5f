import re
from dataclasses import dataclass

import numpy as np

from jointsparse.ops import apply_dft
from .support_util import SupportSet

# generators produce entries of modulus 0 or >= 1, so any tolerance in (0, 0.5) is safe
DEFAULT_SUPPORT_TOL = 1e-8

_HEADER_PATTERN = re.compile(r'^n=(\d+)\s+tol=(\S+)$')


def detect_supports(x, tol=DEFAULT_SUPPORT_TOL):
    """Thresholded time and frequency supports of ``x``.

    Args:
        x (ndarray): Complex signal of length n.
        tol (float): Absolute threshold, entries with modulus above it are kept.

    Returns:
        tuple[SupportSet]: (support of x, support of Dx).
    """
    if tol < 0:
        raise ValueError(f'Support tolerance must be non-negative, but got {tol}.')
    x = np.asarray(x, dtype=np.complex128)
    return (SupportSet.from_mask(np.abs(x) > tol), SupportSet.from_mask(np.abs(apply_dft(x)) > tol))


@dataclass(frozen=True)
class Signal:
    """A length-n complex signal with its cached time and frequency supports."""
    x: np.ndarray
    support_time: SupportSet
    support_freq: SupportSet
    support_tol: float = DEFAULT_SUPPORT_TOL

    @classmethod
    def from_vector(cls, x, tol=DEFAULT_SUPPORT_TOL):
        x = np.array(x, dtype=np.complex128)
        if x.ndim != 1 or x.size < 1:
            raise ValueError(f'Signal must be a non-empty vector, but got shape {x.shape}.')
        if not np.all(np.isfinite(x)):
            raise ValueError('Signal entries must be finite.')
        x.setflags(write=False)
        support_time, support_freq = detect_supports(x, tol)
        return cls(x, support_time, support_freq, tol)

    @property
    def n(self):
        return self.x.size

    @property
    def spectrum(self):
        return apply_dft(self.x)


def write_signal(signal, path):
    """Write a signal in plain text: ``n=<int> tol=<float>`` then n lines ``re im``."""
    data = np.stack([signal.x.real, signal.x.imag], axis=1)
    try:
        np.savetxt(path, data, fmt='%.17g', header=f'n={signal.n} tol={float(signal.support_tol)!r}', comments='')
    except OSError as err:
        raise OSError(f'Failed to write signal to {path}: {err}') from err


def read_signal(path):
    """Read a signal written by :func:`write_signal`."""
    try:
        with open(path, 'r') as f:
            header = f.readline().strip()
            data = np.loadtxt(f, ndmin=2)
    except OSError as err:
        raise OSError(f'Failed to read signal from {path}: {err}') from err
    match = _HEADER_PATTERN.match(header)
    if match is None:
        raise ValueError(f'{path}: malformed header {header!r}, expected "n=<int> tol=<float>".')
    n, tol = int(match.group(1)), float(match.group(2))
    if data.shape != (n, 2):
        raise ValueError(f'{path}: expected {n} lines of "re im", got data of shape {data.shape}.')
    return Signal.from_vector(data[:, 0] + 1j * data[:, 1], tol)
