from dataclasses import dataclass
from functools import cached_property

import numpy as np

from jointsparse.ops import apply_dft, dft_matrix, gaussian_matrix, make_rng, null_space, pseudo_inverse, sigma_min

GOODCON_THRESHOLD = 1. / np.sqrt(2.)
INVERTIBILITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SensingEnsemble:
    """Measurement matrix A together with its frequency composite B = A D*.

    The ensemble is reproducible from ``(seed, m, n)``; only these three values
    are ever persisted. ``pinv`` and ``null_basis`` are computed once per
    ensemble and cached.
    """
    A: np.ndarray
    B: np.ndarray
    seed: object = None

    @classmethod
    def from_matrix(cls, A, seed=None):
        A = np.asarray(A, dtype=np.complex128)
        if A.ndim != 2 or min(A.shape) < 1:
            raise ValueError(f'Sensing matrix must be a non-empty 2D array, but got shape {A.shape}.')
        # A D* applies the inverse DFT to every row
        B = apply_dft(A, inverse=True, axis=1)
        return cls(A, B, seed)

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    @cached_property
    def pinv(self):
        return pseudo_inverse(self.A)

    @cached_property
    def null_basis(self):
        return null_space(self.A)

    def measure(self, x):
        return self.A @ np.asarray(x, dtype=np.complex128)


def make_ensemble(rng, m, n):
    """Draw A with i.i.d. complex Gaussian entries of variance 1 / m.

    Args:
        rng (Generator | int): Random generator or seed. An integer seed is
            recorded on the ensemble.
        m (int): Number of measurements.
        n (int): Signal length.
    """
    seed = None if isinstance(rng, np.random.Generator) else int(rng)
    A = gaussian_matrix(make_rng(rng), m, n, variance=1. / m)
    return SensingEnsemble.from_matrix(A, seed)


def restrict_columns(mat, support):
    """Columns of ``mat`` indexed by ``support`` in sorted order."""
    cols = mat.shape[1]
    if support.n != cols or (len(support) and support.indices[-1] >= cols):
        raise IndexError(f'Support over [{support.n}] does not index a matrix with {cols} columns.')
    return mat[:, support.array]


@dataclass(frozen=True)
class GoodconReport:
    sigma_min_time: float
    sigma_min_freq: float
    threshold: float = GOODCON_THRESHOLD

    @property
    def passed(self):
        return self.sigma_min_time >= self.threshold and self.sigma_min_freq >= self.threshold


def check_goodcon(ens, support_time, support_freq):
    """Smallest singular values of A restricted to S1 and B restricted to S2.

    The report is advisory; callers record it rather than fail on it.
    """
    for name, support in (('S1', support_time), ('S2', support_freq)):
        if len(support) > ens.m:
            raise ValueError(f'|{name}| = {len(support)} exceeds the number of measurements m = {ens.m}.')
    return GoodconReport(
        sigma_min(restrict_columns(ens.A, support_time)), sigma_min(restrict_columns(ens.B, support_freq)))


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis stored as the columns of ``vectors``."""
    vectors: np.ndarray

    @property
    def dim(self):
        return self.vectors.shape[1]

    @property
    def ambient_dim(self):
        return self.vectors.shape[0]

    def project(self, v):
        return self.vectors @ (self.vectors.conj().T @ v)


def intersection_basis(support_time, support_freq, n):
    """Basis of {v : v vanishes off S1 and Dv vanishes off S2}.

    Computed as the null space of the stacked rows of I on the complement of
    S1 and of D on the complement of S2.
    """
    if support_time.n != n or support_freq.n != n:
        raise ValueError(f'Supports must live in [{n}], but got [{support_time.n}] and [{support_freq.n}].')
    constraints = np.concatenate([
        np.eye(n, dtype=np.complex128)[support_time.complement().array],
        dft_matrix(n)[support_freq.complement().array]
    ])
    return SubspaceBasis(null_space(constraints))


@dataclass(frozen=True)
class InvertibilityReport:
    sigma_min: float
    dim: int
    tol: float = INVERTIBILITY_TOL

    @property
    def passed(self):
        return self.dim == 0 or self.sigma_min > self.tol


def check_invertibility_on(A, basis, tol=INVERTIBILITY_TOL):
    """Whether A is injective on the span of ``basis``."""
    if basis.dim == 0:
        return InvertibilityReport(float('inf'), 0, tol)
    return InvertibilityReport(sigma_min(A @ basis.vectors), basis.dim, tol)
