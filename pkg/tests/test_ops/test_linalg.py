import numpy as np
import pytest

from jointsparse.ops import (RankDeficientError, has_full_column_rank, least_squares_min_norm, null_space,
                             pseudo_inverse, sigma_min, singular_values, svd)


def _complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_svd_and_singular_values():
    """Test svd: descending non-negative values that reconstruct the matrix"""

    rng = np.random.default_rng(0)
    mat = _complex(rng, 6, 4)
    u, s, vh = svd(mat)
    assert np.all(np.diff(s) <= 0)
    assert np.all(s >= 0)
    np.testing.assert_allclose((u * s) @ vh, mat, atol=1e-12)
    np.testing.assert_allclose(singular_values(mat), s, atol=1e-12)

    assert singular_values(np.zeros((0, 3))).size == 0
    assert sigma_min(np.zeros((3, 0))) == 0.


def test_sigma_min_diagonal():
    """Test sigma_min: smallest singular value of a diagonal matrix"""

    assert np.isclose(sigma_min(np.diag([3., 0.5, 2.])), 0.5)


def test_has_full_column_rank():
    """Test has_full_column_rank: wide, rank deficient and empty matrices"""

    assert has_full_column_rank(np.eye(3))
    assert not has_full_column_rank(np.ones((3, 4)))
    assert not has_full_column_rank(np.array([[1., 2.], [2., 4.], [3., 6.]]))
    assert has_full_column_rank(np.zeros((3, 0)))


def test_least_squares_min_norm():
    """Test least_squares_min_norm: mat* s = rhs with s in the range of mat"""

    rng = np.random.default_rng(1)
    mat = _complex(rng, 8, 3)
    rhs = _complex(rng, 3)
    s = least_squares_min_norm(mat, rhs)
    np.testing.assert_allclose(mat.conj().T @ s, rhs, atol=1e-10)
    # minimum norm: s lies in the column span of mat
    coef, *_ = np.linalg.lstsq(mat, s, rcond=None)
    np.testing.assert_allclose(mat @ coef, s, atol=1e-10)

    # empty column set
    np.testing.assert_array_equal(least_squares_min_norm(np.zeros((4, 0)), np.zeros(0)), np.zeros(4))

    with pytest.raises(ValueError):
        least_squares_min_norm(mat, rhs[:2])
    with pytest.raises(RankDeficientError):
        least_squares_min_norm(np.ones((4, 2)), np.ones(2))


def test_pseudo_inverse():
    """Test pseudo_inverse: wide full-row-rank and rank deficient input"""

    rng = np.random.default_rng(2)
    mat = _complex(rng, 3, 7)
    pinv = pseudo_inverse(mat)
    np.testing.assert_allclose(mat @ pinv, np.eye(3), atol=1e-10)

    with pytest.raises(RankDeficientError):
        pseudo_inverse(np.ones((3, 3)))


def test_null_space():
    """Test null_space: orthonormal basis annihilated by the matrix"""

    rng = np.random.default_rng(3)
    mat = _complex(rng, 2, 5)
    basis = null_space(mat)
    assert basis.shape == (5, 3)
    np.testing.assert_allclose(mat @ basis, 0, atol=1e-10)
    np.testing.assert_allclose(basis.conj().T @ basis, np.eye(3), atol=1e-10)

    assert null_space(np.zeros((0, 4))).shape == (4, 4)
