import numpy as np
import pytest

from jointsparse.data.comb_signal import random_support_signal
from jointsparse.metrics import calculate_phase_aligned_err, calculate_rel_err
from jointsparse.ops import gaussian_matrix
from jointsparse.solvers import (LiftedProblem, MatrixVar, SolverConfig, apply_lifted, extract_signal, jbpm_objective,
                                 lift_measure, lifted_adjoint, lifted_map_matrix, phase_align, solve_jbpm,
                                 tangent_complement, tangent_projection)


def _complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_lifted_map():
    """Test lifted_map_matrix: rows act on row-major vec(X) like a_i* X a_i"""

    rng = np.random.default_rng(0)
    vectors = _complex(rng, 5, 3)
    x = _complex(rng, 3)
    X = np.outer(x, x.conj())
    np.testing.assert_allclose(apply_lifted(vectors, X), lift_measure(vectors, x), atol=1e-10)
    np.testing.assert_allclose(lifted_map_matrix(vectors) @ X.ravel(), apply_lifted(vectors, X), atol=1e-10)

    with pytest.raises(ValueError):
        lift_measure(vectors, np.ones(4))


def test_lifted_adjoint():
    """Test lifted_adjoint: <A(X), s> = <X, A*(s)>"""

    rng = np.random.default_rng(1)
    vectors = _complex(rng, 6, 4)
    X = _complex(rng, 4, 4)
    s = _complex(rng, 6)
    lhs = np.vdot(s, apply_lifted(vectors, X))
    rhs = np.vdot(lifted_adjoint(vectors, s), X)
    assert np.isclose(lhs, rhs)
    np.testing.assert_allclose(lifted_adjoint(vectors, s).ravel(), lifted_map_matrix(vectors).conj().T @ s, atol=1e-10)


def test_lifted_problem():
    """Test LiftedProblem: shapes and validation"""

    rng = np.random.default_rng(2)
    vectors = _complex(rng, 7, 3)
    problem = LiftedProblem.from_signal(vectors, _complex(rng, 3), lam=0.5)
    assert (problem.m, problem.n) == (7, 3)
    assert problem.map_matrix.shape == (7, 9)
    assert problem.map_pinv.shape == (9, 7)

    with pytest.raises(ValueError):
        LiftedProblem(vectors, np.ones(6))
    with pytest.raises(ValueError):
        LiftedProblem(vectors, np.ones(7), lam=-1.)


def test_tangent_space():
    """Test tangent_projection: L is a projector and L + complement = identity"""

    rng = np.random.default_rng(3)
    x = _complex(rng, 5)
    var = MatrixVar.from_matrix(np.outer(x, x.conj()))
    assert var.rank == 1
    Y = _complex(rng, 5, 5)
    ly = var.tangent(Y)
    np.testing.assert_allclose(var.tangent(ly), ly, atol=1e-10)
    np.testing.assert_allclose(ly + var.tangent_complement(Y), Y, atol=1e-10)
    np.testing.assert_allclose(tangent_projection(Y, var.U, var.V) + tangent_complement(Y, var.U, var.V), Y, atol=1e-10)
    np.testing.assert_allclose(var.tangent(var.X), var.X, atol=1e-10)


def test_matrix_var_support():
    """Test MatrixVar: entrywise support of x x*"""

    x = np.array([1., 0., 2j, 0.])
    var = MatrixVar.from_matrix(np.outer(x, x.conj()), tol=1e-8)
    assert var.support_pairs == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert MatrixVar.from_matrix(np.zeros((3, 3))).rank == 0


def test_jbpm_objective():
    """Test jbpm_objective: nuclear plus weighted entrywise l1 norm"""

    x = np.array([1., 1j, 0.])
    X = np.outer(x, x.conj())
    assert np.isclose(jbpm_objective(X, 0.5), 2. + 0.5 * 4.)


def test_extract_signal_and_phase_align():
    """Test extract_signal: rank-1 readout up to a global phase"""

    x = np.array([1. + 1j, 0., -2., 0.5j])
    x_hat, residual = extract_signal(np.outer(x, x.conj()))
    assert residual < 1e-12
    aligned = phase_align(x_hat, x)
    np.testing.assert_allclose(aligned, x, atol=1e-10)
    assert calculate_phase_aligned_err(np.exp(0.7j) * x, x) < 1e-12

    zero, residual = extract_signal(np.zeros((3, 3)))
    np.testing.assert_array_equal(zero, np.zeros(3))
    assert residual == 0.


def test_solve_jbpm_fully_determined():
    """Test solve_jbpm: m = n^2 measurements recover x x* and x up to phase"""

    n, m = 8, 64
    rng = np.random.default_rng(4)
    x = random_support_signal(rng, n, 2).x
    problem = LiftedProblem.from_signal(gaussian_matrix(rng, m, n), x, lam=1.0)
    var = solve_jbpm(problem, SolverConfig(hermitian=True, raise_on_max_iters=False), support_tol=1e-6)
    truth = np.outer(x, x.conj())
    assert calculate_rel_err(var.X, truth) < 1e-6
    assert var.rank == 1
    x_hat, residual = extract_signal(var.X)
    assert residual < 1e-6
    assert calculate_phase_aligned_err(x_hat, x) < 1e-6
    assert var.result.x_hat is var.X or np.array_equal(var.result.x_hat, var.X)


def test_solve_jbpm_without_l1():
    """Test solve_jbpm: lam = 0 keeps only the nuclear norm"""

    n, m = 4, 16
    rng = np.random.default_rng(5)
    x = _complex(rng, n)
    problem = LiftedProblem.from_signal(gaussian_matrix(rng, m, n), x, lam=0.)
    var = solve_jbpm(problem, SolverConfig(hermitian=True, raise_on_max_iters=False))
    assert calculate_rel_err(var.X, np.outer(x, x.conj())) < 1e-6


def test_lift_measure_global_phase():
    """Test lift_measure: measurements ignore a global phase of x"""

    rng = np.random.default_rng(8)
    vectors = _complex(rng, 9, 5)
    x = _complex(rng, 5)
    for theta in (0.3, np.pi / 2, 2.5):
        np.testing.assert_allclose(lift_measure(vectors, np.exp(1j * theta) * x), lift_measure(vectors, x), rtol=1e-12)


def test_lifted_affine_projection():
    """Test AffineSet: the lifted projection is idempotent and keeps Hermitian iterates Hermitian"""

    from jointsparse.solvers.base_solver import AffineSet
    rng = np.random.default_rng(9)
    problem = LiftedProblem.from_signal(_complex(rng, 10, 4), _complex(rng, 4))
    constraint = AffineSet(problem.map_matrix, problem.observations, pinv=problem.map_pinv)
    Y = _complex(rng, 4, 4)
    Y = Y + Y.conj().T
    P = constraint.project(Y)
    np.testing.assert_allclose(constraint.project(P), P, atol=1e-10)
    np.testing.assert_allclose(apply_lifted(problem.vectors, P), problem.observations, atol=1e-9)
    np.testing.assert_allclose(P, P.conj().T, atol=1e-9)
