from dataclasses import dataclass

import numpy as np


def csgn(z):
    """Entrywise complex sign: 0 maps to 0, any other z to z / |z|.

    Works on scalars and arrays alike.
    """
    z = np.asarray(z, dtype=np.complex128)
    mag = np.abs(z)
    out = np.zeros_like(z)
    nonzero = mag > 0
    out[nonzero] = z[nonzero] / mag[nonzero]
    if out.ndim == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class SupportSet:
    """Sorted index subset of {0, ..., n-1}.

    Args:
        indices (tuple[int]): Strictly increasing indices, all below ``n``.
        n (int): Ambient dimension.
    """
    indices: tuple
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f'Ambient dimension must be positive, but got {self.n}.')
        indices = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError(f'Support indices must be strictly increasing, but got {indices}.')
        if indices and (indices[0] < 0 or indices[-1] >= self.n):
            raise ValueError(f'Support indices must lie in [0, {self.n}), but got {indices}.')
        object.__setattr__(self, 'indices', indices)

    @classmethod
    def from_indices(cls, indices, n):
        return cls(tuple(sorted(set(int(i) for i in indices))), n)

    @classmethod
    def from_mask(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        return cls(tuple(np.flatnonzero(mask).tolist()), mask.size)

    @classmethod
    def full(cls, n):
        return cls(tuple(range(n)), n)

    @property
    def mask(self):
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.indices)] = True
        return mask

    @property
    def array(self):
        return np.asarray(self.indices, dtype=int)

    def complement(self):
        return SupportSet.from_mask(~self.mask)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, item):
        return item in self.indices


def is_periodic_support(support, period):
    """Whether ``support`` is ``period``-periodic.

    A subset S of [n] is l-periodic if l divides n and membership is constant
    on every residue class mod l. A periodic support always has a size
    divisible by n / l.

    Args:
        support (SupportSet): Support to test.
        period (int): Period l, 1 <= l <= n.

    Returns:
        bool: Periodicity flag.
    """
    n = support.n
    if period < 1:
        raise ValueError(f'Period must be positive, but got {period}.')
    if period > n:
        raise ValueError(f'Period {period} exceeds the ambient dimension {n}.')
    if n % period != 0:
        return False
    # rows run over shifts, columns over residue classes
    classes = support.mask.reshape(n // period, period)
    periodic = bool(np.all(classes == classes[0]))
    if periodic:
        assert len(support) % (n // period) == 0, (f'A {period}-periodic support of [{n}] must have a size '
                                                   f'divisible by {n // period}, got {len(support)}.')
    return periodic


def residue_class_support(n, period, residues):
    """The ``period``-periodic support made of the given residue classes."""
    if n % period != 0:
        raise ValueError(f'Period {period} does not divide {n}.')
    residues = set(int(r) % period for r in residues)
    return SupportSet.from_mask(np.isin(np.arange(n) % period, list(residues)))
