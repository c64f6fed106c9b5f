"""Certificates for simultaneously sparse and low-rank matrices.

Conditions checked for a matrix X with support S and rank subspace (U, V),
where A* is the adjoint of the lifted measurement map:

    1. L(A*(S1) + S) = U V*
    2. ||(I - UU*)(A*(S1) + S)(I - VV*)||_op < 1
    3. S(A*(S2) - S) = lam sgn(X) on the support
    4. ||A*(S2) - S||_inf < lam off the support
    5. the lifted map is injective on {Y : L(Y) = Y, Y supported on S}

Matrices are vectorized row-major; there vec(P Y Q) = kron(P, Q^T) vec(Y).
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sp_linalg

from jointsparse.data import SubspaceBasis, csgn
from jointsparse.ops import null_space, sigma_min, singular_values
from jointsparse.solvers.jbpm_solver import lifted_adjoint, tangent_complement, tangent_projection
from .dual_certificate import EQ_TOL, STRICT_MARGIN


def _complement_projector(basis):
    return np.eye(basis.shape[0]) - basis @ basis.conj().T


def tangent_complement_matrix(var):
    """Matrix of Y -> (I - UU*) Y (I - VV*) acting on row-major vec(Y)."""
    return np.kron(_complement_projector(var.U), _complement_projector(var.V).T)


def matrix_intersection_basis(var):
    """Orthonormal basis (in vec form) of {Y : L(Y) = Y, Y vanishes off the support}."""
    n_sq = var.X.size
    off_support = np.flatnonzero(~var.support.ravel())
    constraints = np.concatenate([tangent_complement_matrix(var), np.eye(n_sq, dtype=np.complex128)[off_support]])
    return SubspaceBasis(null_space(constraints))


@dataclass
class MatrixCertReport:
    tangent_dev: float
    complement_norm: float
    sign_dev: float
    offsupport_norm: float
    sigma_min_intersection: float
    intersection_dim: int
    lam: float

    @property
    def conditions(self):
        return (self.tangent_dev <= EQ_TOL, 1. - self.complement_norm >= STRICT_MARGIN, self.sign_dev <= EQ_TOL,
                self.lam - self.offsupport_norm >= STRICT_MARGIN, self.intersection_dim == 0
                or self.sigma_min_intersection > EQ_TOL)

    @property
    def passed(self):
        return all(self.conditions)

    def to_row(self):
        return {
            'cond1': EQ_TOL - self.tangent_dev,
            'cond2': 1. - self.complement_norm,
            'cond3': EQ_TOL - self.sign_dev,
            'cond4': self.lam - self.offsupport_norm,
            'cond5': self.sigma_min_intersection - EQ_TOL if self.intersection_dim else float('inf'),
            'pass': self.passed
        }


@dataclass
class MatrixCert:
    S1m: np.ndarray
    S2m: np.ndarray
    Sm: np.ndarray
    report: MatrixCertReport = None


def build_matrix_certificate(problem, var, lam):
    """Least-squares candidate (S1m, S2m, Sm = 0).

    S1m is the minimum-norm solution of L(A*(S1m)) = U V*, S2m of
    A*(S2m) = lam sgn(X) on the support. Nothing guarantees the strict
    inequalities; the verifier decides.
    """
    adjoint = problem.map_matrix.conj().T
    tangent = np.eye(var.X.size) - tangent_complement_matrix(var)
    target_tangent = (var.U @ var.V.conj().T).ravel()
    s1m = sp_linalg.lstsq(tangent @ adjoint, target_tangent)[0]
    on_support = np.flatnonzero(var.support.ravel())
    target_sign = lam * csgn(var.X).ravel()[on_support]
    s2m = sp_linalg.lstsq(adjoint[on_support], target_sign)[0] if on_support.size else np.zeros(problem.m, complex)
    return MatrixCert(s1m, s2m, np.zeros_like(var.X))


def verify_matrix_certificate(cert, problem, var, lam, intersection=None):
    """Evaluate the five conditions; ``report.passed`` is the verdict."""
    y1 = lifted_adjoint(problem.vectors, cert.S1m) + cert.Sm
    y2 = lifted_adjoint(problem.vectors, cert.S2m) - cert.Sm
    support = var.support
    if intersection is None:
        intersection = matrix_intersection_basis(var)
    sv = singular_values(tangent_complement(y1, var.U, var.V))
    report = MatrixCertReport(
        tangent_dev=float(np.max(np.abs(tangent_projection(y1, var.U, var.V) - var.U @ var.V.conj().T))),
        complement_norm=float(sv[0]) if sv.size else 0.,
        sign_dev=float(np.max(np.abs(y2[support] - lam * csgn(var.X)[support]), initial=0.)),
        offsupport_norm=float(np.max(np.abs(y2[~support]), initial=0.)),
        sigma_min_intersection=(sigma_min(problem.map_matrix @ intersection.vectors)
                                if intersection.dim else float('inf')),
        intersection_dim=intersection.dim,
        lam=float(lam))
    cert.report = report
    return report
