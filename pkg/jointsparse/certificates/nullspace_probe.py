from dataclasses import dataclass

import numpy as np

from jointsparse.data import csgn
from jointsparse.ops import apply_dft, make_rng

VIOLATION_TOL = 1e-10


def null_space_lhs(signal, lam, w):
    """Directional growth of ||x||_1 + lam ||D x||_1 along w.

    Re<sgn x, w> + ||w off S1||_1 + lam (Re<sgn Dx, Dw> + ||Dw off S2||_1).
    x is the unique optimum when this is positive for every nonzero w in N(A).
    """
    w = np.asarray(w, dtype=np.complex128)
    dw = apply_dft(w)
    time_part = np.vdot(csgn(signal.x), w).real + np.sum(np.abs(w[signal.support_time.complement().array]))
    freq_part = np.vdot(csgn(signal.spectrum), dw).real + np.sum(np.abs(dw[signal.support_freq.complement().array]))
    return float(time_part + lam * freq_part)


@dataclass
class NullspaceReport:
    min_value: float
    violation: np.ndarray
    dim: int
    evaluations: int

    @property
    def found_violation(self):
        return self.violation is not None


def _coordinate_descent(objective, coef, step, min_step, max_sweeps):
    """Minimize ``objective`` over unit-norm complex coefficients by signed coordinate moves."""
    value = objective(coef)
    evaluations = 1
    units = [1., 1j]
    for _ in range(max_sweeps):
        improved = False
        for idx in range(coef.size):
            for unit in units:
                for sign in (1., -1.):
                    trial = coef.copy()
                    trial[idx] += sign * step * unit
                    trial /= np.linalg.norm(trial)
                    trial_value = objective(trial)
                    evaluations += 1
                    if trial_value < value:
                        coef, value, improved = trial, trial_value, True
        if not improved:
            step /= 2.
            if step < min_step:
                break
    return coef, value, evaluations


def nullspace_probe(ens, signal, lam, num_samples, rng, restarts=100, max_sweeps=30, min_step=1e-6):
    """Search N(A) for a direction that breaks uniqueness.

    Random unit directions from an orthonormal null basis are scored first,
    then coordinate descent over the null-space coefficients is run from
    ``restarts`` starting points, the best samples first. A direction with a
    non-positive score proves x is not the unique optimum; finding none proves
    nothing.

    Args:
        ens (SensingEnsemble): Measurement ensemble.
        signal (Signal): Candidate optimum.
        lam (float): Frequency weight.
        num_samples (int): Number of random directions.
        rng (Generator | int): Random generator or seed.
        restarts (int): Number of local searches. Default: 100.

    Returns:
        NullspaceReport: Smallest score found and the violating direction, if any.
    """
    if num_samples < 1:
        raise ValueError(f'Number of samples must be positive, but got {num_samples}.')
    basis = ens.null_basis
    dim = basis.shape[1]
    if dim == 0:
        return NullspaceReport(float('inf'), None, 0, 0)
    rng = make_rng(rng)

    def objective(coef):
        return null_space_lhs(signal, lam, basis @ coef)

    coefs = rng.standard_normal((num_samples, dim)) + 1j * rng.standard_normal((num_samples, dim))
    coefs /= np.linalg.norm(coefs, axis=1, keepdims=True)
    values = np.array([objective(c) for c in coefs])
    evaluations = num_samples
    order = np.argsort(values)
    best_idx = int(order[0])
    best_coef, best_value = coefs[best_idx], float(values[best_idx])

    for restart in range(restarts):
        if best_value <= VIOLATION_TOL:
            break
        if restart < num_samples:
            start = coefs[order[restart]]
        else:
            start = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            start /= np.linalg.norm(start)
        coef, value, used = _coordinate_descent(objective, start, 0.5, min_step, max_sweeps)
        evaluations += used
        if value < best_value:
            best_coef, best_value = coef, value

    violation = basis @ best_coef if best_value <= VIOLATION_TOL else None
    return NullspaceReport(best_value, violation, dim, evaluations)
