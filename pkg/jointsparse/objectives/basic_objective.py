import numpy as np

from jointsparse.data import csgn
from jointsparse.ops import apply_dft, singular_values, svd
from jointsparse.utils.registry import OBJECTIVE_REGISTRY
from .objective_util import soft_threshold, svt

_bases = ['identity', 'dft']
UNITARY_TOL = 1e-10


def _random_unit_ball(rng, shape):
    """Complex numbers drawn uniformly from the closed unit disc."""
    radius = np.sqrt(rng.uniform(size=shape))
    angle = rng.uniform(0., 2. * np.pi, size=shape)
    return radius * np.exp(1j * angle)


@OBJECTIVE_REGISTRY.register()
class L1Norm():
    """Weighted l1 norm of an analysis transform, weight * ||T x||_1.

    T is unitary, so the proximal map of the term is applied to the
    transformed copy T x and mapped back with T*.

    Args:
        weight (float): Weight of the term. Default: 1.0.
        basis (str | ndarray): 'identity', 'dft' or an explicit unitary matrix.
            Default: 'identity'.
    """

    def __init__(self, weight=1.0, basis='identity'):
        if weight < 0:
            raise ValueError(f'Term weight must be non-negative, but got {weight}.')
        if isinstance(basis, str):
            if basis not in _bases:
                raise ValueError(f'Unsupported basis: {basis}. Supported ones are: {_bases}')
        else:
            basis = np.asarray(basis, dtype=np.complex128)
            if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
                raise ValueError(f'Basis matrix must be square, but got shape {basis.shape}.')
            if np.max(np.abs(basis.conj().T @ basis - np.eye(basis.shape[0]))) > UNITARY_TOL:
                raise ValueError('Basis matrix must be unitary.')
        self.weight = weight
        self.basis = basis

    def transform(self, x):
        if isinstance(self.basis, str):
            return apply_dft(x) if self.basis == 'dft' else np.asarray(x, dtype=np.complex128)
        return self.basis @ x

    def adjoint(self, z):
        if isinstance(self.basis, str):
            return apply_dft(z, inverse=True) if self.basis == 'dft' else np.asarray(z, dtype=np.complex128)
        return self.basis.conj().T @ z

    def value(self, x):
        return self.weight * float(np.sum(np.abs(self.transform(x))))

    def prox(self, z, step):
        """Proximal map of step * weight * ||.||_1 in the transformed domain."""
        return soft_threshold(z, step * self.weight)

    def subgradient(self, x, rng=None, zero_tol=0.):
        """An element of the subdifferential at ``x``.

        Zero entries of T x take 0, or a uniform draw from the unit disc when
        ``rng`` is given.
        """
        z = self.transform(x)
        g = csgn(z)
        zero = np.abs(z) <= zero_tol
        g[zero] = _random_unit_ball(rng, int(zero.sum())) if rng is not None else 0
        return self.weight * self.adjoint(g)


@OBJECTIVE_REGISTRY.register()
class NuclearNorm():
    """Weighted nuclear norm, weight * sum of singular values."""

    def __init__(self, weight=1.0):
        if weight < 0:
            raise ValueError(f'Term weight must be non-negative, but got {weight}.')
        self.weight = weight

    def transform(self, x):
        return x

    def adjoint(self, z):
        return z

    def value(self, x):
        return self.weight * float(np.sum(singular_values(x)))

    def prox(self, z, step):
        return svt(z, step * self.weight)

    def subgradient(self, x, rng=None, zero_tol=1e-12):
        u, s, vh = svd(x)
        keep = s > zero_tol * max(s[0], 1.) if s.size else s > 0
        return self.weight * (u[:, keep] @ vh[keep])
