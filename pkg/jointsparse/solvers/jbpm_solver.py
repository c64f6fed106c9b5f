"""Sparse and low-rank matrix recovery from lifted quadratic measurements.

A measurement |<a_i, x>|^2 = a_i* (x x*) a_i is linear in X = x x*, so the
lifted map is X -> (a_i* X a_i)_i. In row-major vec form its i-th row is
M_i[j n + k] = conj(a_ij) a_ik.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from jointsparse.data import csgn
from jointsparse.objectives.basic_objective import L1Norm, NuclearNorm
from jointsparse.ops import pseudo_inverse, singular_values, svd
from jointsparse.utils.registry import SOLVER_REGISTRY
from .base_solver import AffineSet, BaseSolver


def lift_measure(vectors, x):
    """Phaseless measurements |<a_i, x>|^2 for the rows a_i of ``vectors``."""
    vectors = np.asarray(vectors, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    if vectors.ndim != 2 or vectors.shape[1] != x.size:
        raise ValueError(f'Measurement vectors of shape {vectors.shape} do not match a signal of length {x.size}.')
    return np.abs(vectors.conj() @ x)**2


def lifted_map_matrix(vectors):
    vectors = np.asarray(vectors, dtype=np.complex128)
    m, n = vectors.shape
    return np.einsum('ij,ik->ijk', vectors.conj(), vectors).reshape(m, n * n)


def apply_lifted(vectors, mat):
    """(a_i* X a_i)_i for the rows a_i of ``vectors``."""
    return np.einsum('ij,jk,ik->i', vectors.conj(), mat, vectors)


def lifted_adjoint(vectors, s):
    """sum_i s_i a_i a_i*, the adjoint of the lifted map."""
    return (vectors.T * s) @ vectors.conj()


@dataclass(frozen=True, eq=False)
class LiftedProblem:
    """min ||X||_* + lam ||X||_1 subject to a_i* X a_i = observations_i.

    Args:
        vectors (ndarray): (m, n) matrix whose rows are the a_i.
        observations (ndarray): Length-m real observations.
        lam (float): Weight of the entrywise l1 term, lam >= 0.
    """
    vectors: np.ndarray
    observations: np.ndarray
    lam: float = 1.0

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=np.complex128)
        observations = np.asarray(self.observations, dtype=np.float64)
        if vectors.ndim != 2 or observations.shape != (vectors.shape[0], ):
            raise ValueError(f'Expected (m, n) vectors and m observations, but got shapes '
                             f'{vectors.shape} and {observations.shape}.')
        if self.lam < 0:
            raise ValueError(f'lambda must be non-negative, but got {self.lam}.')
        object.__setattr__(self, 'vectors', vectors)
        object.__setattr__(self, 'observations', observations)

    @classmethod
    def from_signal(cls, vectors, x, lam=1.0):
        return cls(vectors, lift_measure(vectors, x), lam)

    @property
    def m(self):
        return self.vectors.shape[0]

    @property
    def n(self):
        return self.vectors.shape[1]

    @cached_property
    def map_matrix(self):
        return lifted_map_matrix(self.vectors)

    @cached_property
    def map_pinv(self):
        return pseudo_inverse(self.map_matrix)


def tangent_projection(mat, u, v):
    """L(Y) = U U* Y + Y V V* - U U* Y V V*."""
    pu = u @ u.conj().T
    pv = v @ v.conj().T
    return pu @ mat + mat @ pv - pu @ mat @ pv


def tangent_complement(mat, u, v):
    """(I - U U*) Y (I - V V*), the part of Y that L removes."""
    n_rows, n_cols = mat.shape
    return (np.eye(n_rows) - u @ u.conj().T) @ mat @ (np.eye(n_cols) - v @ v.conj().T)


@dataclass
class MatrixVar:
    """A matrix with its entrywise support and rank subspace (U, V).

    ``result`` holds the solver statistics when the matrix comes from
    :func:`solve_jbpm`.
    """
    X: np.ndarray
    support: np.ndarray
    U: np.ndarray
    V: np.ndarray
    result: object = None

    @classmethod
    def from_matrix(cls, X, tol=1e-8, rank_tol=1e-8, result=None):
        X = np.asarray(X, dtype=np.complex128)
        u, s, vh = svd(X)
        rank = int(np.sum(s > rank_tol * max(s[0], 1.))) if s.size else 0
        return cls(X, np.abs(X) > tol, u[:, :rank], vh[:rank].conj().T, result)

    @property
    def support_pairs(self):
        return [tuple(int(i) for i in pair) for pair in np.argwhere(self.support)]

    @property
    def rank(self):
        return self.U.shape[1]

    def tangent(self, mat):
        return tangent_projection(mat, self.U, self.V)

    def tangent_complement(self, mat):
        return tangent_complement(mat, self.U, self.V)


def jbpm_objective(X, lam=1.0):
    return float(np.sum(singular_values(X))) + lam * float(np.sum(np.abs(X)))


@SOLVER_REGISTRY.register()
class JBPMSolver(BaseSolver):
    """Splitting over a nuclear-norm copy (singular value thresholding) and an
    entrywise l1 copy (soft thresholding with lam / rho).

    The x-update projects onto the lifted affine set with the pseudo-inverse
    of the stacked measurement functionals. With ``cfg.hermitian`` the
    averaged copies are symmetrized first. lam = 0 drops the l1 copy.
    """

    def __init__(self, problem, cfg=None):
        self.problem = problem
        terms = [NuclearNorm(1.)]
        if problem.lam > 0:
            terms.append(L1Norm(problem.lam, 'identity'))
        constraint = AffineSet(problem.map_matrix, problem.observations, pinv=problem.map_pinv)
        super(JBPMSolver, self).__init__(terms, constraint, (problem.n, problem.n), cfg)


def solve_jbpm(problem, cfg=None, support_tol=1e-8):
    """Solve the lifted program.

    Returns:
        MatrixVar: The recovered matrix, its support and rank subspace, with
            the solver statistics in ``result``.
    """
    result = JBPMSolver(problem, cfg).run()
    return MatrixVar.from_matrix(result.x_hat, tol=support_tol, result=result)


def extract_signal(X):
    """Rank-1 readout x_hat = sqrt(s1) u1 with residual s2 / s1.

    The readout is defined up to a global phase.
    """
    u, s, _ = svd(np.asarray(X, dtype=np.complex128))
    if s[0] == 0:
        return np.zeros(u.shape[0], dtype=np.complex128), 0.
    residual = float(s[1] / s[0]) if s.size > 1 else 0.
    return np.sqrt(s[0]) * u[:, 0], residual


def phase_align(x_hat, x):
    """Rotate ``x_hat`` by exp(-i arg<x_hat, x>) so it best matches ``x``."""
    inner = np.vdot(x, x_hat)
    return x_hat * np.conj(csgn(inner)) if inner != 0 else x_hat
