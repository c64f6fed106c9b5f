import numpy as np
from scipy import linalg as sp_linalg

# full column rank test relative to the largest singular value
RANK_TOL = 1e-10


class RankDeficientError(ValueError):
    """Raised when a matrix expected to have full rank does not."""


class NoConvergenceError(RuntimeError):
    """Raised when the SVD iteration fails to converge."""


def svd(mat, full_matrices=False):
    """Singular value decomposition ``mat = U @ diag(s) @ Vh``.

    Singular values are returned non-negative and in descending order.

    Returns:
        tuple: (U, s, Vh).
    """
    try:
        return sp_linalg.svd(mat, full_matrices=full_matrices, lapack_driver='gesdd')
    except sp_linalg.LinAlgError:
        try:
            # gesvd is slower but more robust
            return sp_linalg.svd(mat, full_matrices=full_matrices, lapack_driver='gesvd')
        except sp_linalg.LinAlgError as err:
            raise NoConvergenceError(f'SVD did not converge for a {mat.shape} matrix.') from err


def singular_values(mat):
    """Singular values in descending order."""
    if mat.size == 0:
        return np.zeros(0)
    try:
        return sp_linalg.svdvals(mat)
    except sp_linalg.LinAlgError as err:
        raise NoConvergenceError(f'SVD did not converge for a {mat.shape} matrix.') from err


def sigma_min(mat):
    """Smallest singular value over min(rows, cols) values; 0 for empty matrices."""
    sv = singular_values(mat)
    return float(sv[-1]) if sv.size else 0.0


def has_full_column_rank(mat, rank_tol=RANK_TOL):
    rows, cols = mat.shape
    if cols == 0:
        return True
    if cols > rows:
        return False
    sv = singular_values(mat)
    return sv[-1] > rank_tol * sv[0]


def least_squares_min_norm(mat, rhs, rank_tol=RANK_TOL):
    """Compute ``mat @ inv(mat* @ mat) @ rhs``.

    This is the minimum-norm vector s with ``mat* @ s = rhs``. It is
    evaluated through an economic QR factorization, ``Q @ inv(R*) @ rhs``,
    instead of forming the normal equations.

    Args:
        mat (ndarray): (m, k) matrix with full column rank.
        rhs (ndarray): Length-k vector.
        rank_tol (float): Relative singular value threshold for the rank test.

    Returns:
        ndarray: Length-m vector.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    rhs = np.asarray(rhs, dtype=np.complex128)
    rows, cols = mat.shape
    if rhs.shape != (cols, ):
        raise ValueError(f'rhs must have length {cols}, but got shape {rhs.shape}.')
    if cols == 0:
        return np.zeros(rows, dtype=np.complex128)
    if not has_full_column_rank(mat, rank_tol):
        raise RankDeficientError(f'Matrix of shape {mat.shape} does not have full column rank.')
    q, r = sp_linalg.qr(mat, mode='economic')
    coef = sp_linalg.solve_triangular(r, rhs, trans='C')
    return q @ coef


def pseudo_inverse(mat, rank_tol=RANK_TOL):
    """Moore-Penrose pseudo-inverse of a matrix with full row or full column rank.

    Raises:
        RankDeficientError: If the matrix has neither.
    """
    u, s, vh = svd(mat, full_matrices=False)
    if s.size == 0 or s[-1] <= rank_tol * s[0]:
        raise RankDeficientError(f'Matrix of shape {mat.shape} is numerically rank deficient '
                                 f'(sigma_min / sigma_max = {s[-1] / s[0] if s.size and s[0] else 0:.3e}).')
    return (vh.conj().T / s) @ u.conj().T


def null_space(mat, rcond=RANK_TOL):
    """Orthonormal basis (as columns) of the null space of ``mat``."""
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1], dtype=np.complex128)
    return sp_linalg.null_space(mat, rcond=rcond)
