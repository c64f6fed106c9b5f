import numpy as np
import pytest

from jointsparse.ops import apply_dft, dft_matrix, restricted_dft_projector


def test_dft_matrix_n4():
    """Test dft_matrix: entries for n = 4"""

    dft = dft_matrix(4)
    assert dft.shape == (4, 4)
    np.testing.assert_allclose(dft[0], np.full(4, 0.5))
    np.testing.assert_allclose(dft[1, 1], -0.5j, atol=1e-15)
    np.testing.assert_allclose(dft[2, 1], -0.5, atol=1e-15)

    with pytest.raises(ValueError):
        dft_matrix(0)


@pytest.mark.parametrize('n', [1, 2, 7, 16, 36])
def test_dft_matrix_unitary(n):
    """Test dft_matrix: D* D = I"""

    dft = dft_matrix(n)
    np.testing.assert_allclose(dft.conj().T @ dft, np.eye(n), atol=1e-12)


@pytest.mark.parametrize('n', [5, 12, 64])
def test_apply_dft_matches_matrix(n):
    """Test apply_dft: fast transform equals the dense matrix"""

    rng = np.random.default_rng(n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    dft = dft_matrix(n)
    np.testing.assert_allclose(apply_dft(x), dft @ x, atol=1e-12)
    np.testing.assert_allclose(apply_dft(x, inverse=True), dft.conj().T @ x, atol=1e-12)
    np.testing.assert_allclose(apply_dft(apply_dft(x), inverse=True), x, atol=1e-12)

    # along rows of a matrix
    mat = np.stack([x, 2 * x])
    np.testing.assert_allclose(apply_dft(mat, axis=1)[1], 2 * (dft @ x), atol=1e-12)


def test_restricted_dft_projector():
    """Test restricted_dft_projector: orthogonal projector of rank |S|"""

    mask = np.array([True, False, True, False, False, True])
    proj = restricted_dft_projector(mask)
    np.testing.assert_allclose(proj @ proj, proj, atol=1e-12)
    np.testing.assert_allclose(proj, proj.conj().T, atol=1e-12)
    assert np.isclose(np.trace(proj).real, 3)

    other = restricted_dft_projector(mask, adjoint_first=False)
    assert np.isclose(np.trace(other).real, 3)
