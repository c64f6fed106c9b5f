import numpy as np
import pytest

from jointsparse.objectives import build_objective, soft_threshold, svt
from jointsparse.objectives.basic_objective import L1Norm, NuclearNorm
from jointsparse.ops import apply_dft, dft_matrix


def test_soft_threshold():
    """Test soft_threshold: shrinks the modulus and keeps the phase"""

    assert np.isclose(soft_threshold(3 + 4j, 1.), 2.4 + 3.2j)
    assert isinstance(soft_threshold(3 + 4j, 1.), complex)
    # ties go to zero
    assert soft_threshold(1j, 1.) == 0
    out = soft_threshold(np.array([2., -0.5, 0., -3j]), 1.)
    np.testing.assert_allclose(out, [1., 0., 0., -2j])
    np.testing.assert_allclose(soft_threshold(np.array([1 + 1j]), 0.), [1 + 1j])

    with pytest.raises(ValueError):
        soft_threshold(1., -1.)


def test_soft_threshold_is_prox():
    """Test soft_threshold: minimizes tau |w| + |w - z|^2 / 2 against random perturbations"""

    rng = np.random.default_rng(0)
    z = 1.3 - 0.4j
    tau = 0.7
    w = soft_threshold(z, tau)

    def cost(v):
        return tau * abs(v) + abs(v - z)**2 / 2

    for _ in range(200):
        v = w + 0.1 * (rng.standard_normal() + 1j * rng.standard_normal())
        assert cost(v) >= cost(w) - 1e-12


def test_svt():
    """Test svt: thresholds singular values and drops the ones that reach 0"""

    out = svt(np.diag([3., 0.5]), 1.)
    np.testing.assert_allclose(out, np.diag([2., 0.]), atol=1e-12)
    np.testing.assert_allclose(svt(np.diag([3., 0.5]), 0.), np.diag([3., 0.5]), atol=1e-12)
    assert np.allclose(svt(np.eye(3), 5.), 0)

    with pytest.raises(ValueError):
        svt(np.eye(2), -1.)


def test_l1norm():
    """Test L1Norm: value, prox and subgradient in identity and DFT bases"""

    x = np.array([1., 0., 1., 0.], dtype=complex)
    identity = L1Norm()
    assert np.isclose(identity.value(x), 2.)
    freq = L1Norm(weight=0.5, basis='dft')
    assert np.isclose(freq.value(x), 0.5 * np.sum(np.abs(apply_dft(x))))
    np.testing.assert_allclose(freq.adjoint(freq.transform(x)), x, atol=1e-12)

    # explicit unitary basis agrees with the fast transform
    explicit = L1Norm(weight=0.5, basis=dft_matrix(4))
    assert np.isclose(explicit.value(x), freq.value(x))
    np.testing.assert_allclose(explicit.transform(x), freq.transform(x), atol=1e-12)

    np.testing.assert_allclose(identity.prox(np.array([2., 0.5]), 1.), [1., 0.])
    np.testing.assert_allclose(freq.prox(np.array([2.]), 1.), [1.5])

    g = identity.subgradient(x)
    np.testing.assert_allclose(g, [1., 0., 1., 0.])
    g = identity.subgradient(x, rng=np.random.default_rng(0))
    assert np.all(np.abs(g) <= 1 + 1e-12)
    np.testing.assert_allclose(g[[0, 2]], [1., 1.])

    with pytest.raises(ValueError):
        L1Norm(weight=-1.)
    with pytest.raises(ValueError):
        L1Norm(basis='wavelet')
    with pytest.raises(ValueError):
        L1Norm(basis=np.ones((2, 2)))
    with pytest.raises(ValueError):
        L1Norm(basis=np.ones((2, 3)))


def test_nuclear_norm():
    """Test NuclearNorm: value, prox and subgradient"""

    term = NuclearNorm(weight=2.)
    mat = np.diag([3., 1., 0.])
    assert np.isclose(term.value(mat), 8.)
    np.testing.assert_allclose(term.prox(mat, 1.), np.diag([1., 0., 0.]), atol=1e-12)
    g = term.subgradient(mat)
    np.testing.assert_allclose(g, 2 * np.diag([1., 1., 0.]), atol=1e-12)
    np.testing.assert_array_equal(term.transform(mat), mat)

    with pytest.raises(ValueError):
        NuclearNorm(weight=-0.1)


def test_build_objective():
    """Test build_objective: registry lookup"""

    term = build_objective({'type': 'L1Norm', 'weight': 0.25, 'basis': 'dft'})
    assert isinstance(term, L1Norm)
    assert term.weight == 0.25
    assert isinstance(build_objective({'type': 'NuclearNorm'}), NuclearNorm)
    with pytest.raises(KeyError):
        build_objective({'type': 'TVNorm'})


def test_svt_nonexpansive():
    """Test svt: ||svt(X) - svt(Y)||_F <= ||X - Y||_F on 100 random pairs"""

    rng = np.random.default_rng(7)
    for _ in range(100):
        rows, cols = rng.integers(1, 7, size=2)
        X = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
        Y = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
        tau = float(rng.uniform(0, 2))
        assert np.linalg.norm(svt(X, tau) - svt(Y, tau)) <= np.linalg.norm(X - Y) + 1e-12
