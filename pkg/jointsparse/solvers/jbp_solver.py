from dataclasses import dataclass

import numpy as np

from jointsparse.data import SensingEnsemble
from jointsparse.objectives.basic_objective import L1Norm
from jointsparse.utils.registry import SOLVER_REGISTRY
from .base_solver import AffineSet, BaseSolver

MODES = ('JBP', 'BP_time', 'BP_freq')


def resolve_lambda(value, n):
    """Turn a lambda option into a number.

    ``'log_inverse'`` resolves to 1 / log(n), the weight for signals with
    unbalanced time and frequency sparsity.
    """
    if isinstance(value, str):
        if value != 'log_inverse':
            raise ValueError(f'Unsupported lambda rule: {value}. Supported ones are: [\'log_inverse\']')
        if n < 2:
            raise ValueError(f'lambda = 1 / log(n) needs n >= 2, but got n = {n}.')
        return 1. / np.log(n)
    return float(value)


@dataclass(frozen=True)
class JbpProblem:
    """min ||x||_1 + lam ||D x||_1 subject to A x = b, or one of its BP baselines.

    Args:
        ens (SensingEnsemble): Measurement ensemble.
        b (ndarray): Measurements, length m.
        lam (float): Weight of the frequency term. Default: 1.0.
        mode (str): 'JBP', 'BP_time' (min ||x||_1) or 'BP_freq' (min ||D x||_1).
            Default: 'JBP'.
    """
    ens: SensingEnsemble
    b: np.ndarray
    lam: float = 1.0
    mode: str = 'JBP'

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f'Unsupported mode: {self.mode}. Supported ones are: {list(MODES)}')
        b = np.asarray(self.b, dtype=np.complex128)
        if b.shape != (self.ens.m, ):
            raise ValueError(f'Measurements must have length m = {self.ens.m}, but got shape {b.shape}.')
        object.__setattr__(self, 'b', b)
        lam = resolve_lambda(self.lam, self.ens.n)
        if self.mode == 'JBP' and not lam > 0:
            raise ValueError(f'JBP needs a positive lambda, but got {lam}.')
        object.__setattr__(self, 'lam', lam)

    @classmethod
    def from_signal(cls, ens, signal, lam=1.0, mode='JBP'):
        x = signal.x if hasattr(signal, 'x') else signal
        return cls(ens, ens.measure(x), lam, mode)


def jbp_terms(lam, mode):
    if mode == 'JBP':
        return [L1Norm(1., 'identity'), L1Norm(lam, 'dft')]
    if mode == 'BP_time':
        return [L1Norm(1., 'identity')]
    if mode == 'BP_freq':
        return [L1Norm(1., 'dft')]
    raise ValueError(f'Unsupported mode: {mode}. Supported ones are: {list(MODES)}')


def jbp_objective(x, lam=1.0, mode='JBP'):
    return sum(term.value(x) for term in jbp_terms(lam, mode))


def project_affine(ens, b, v):
    """Euclidean projection of ``v`` onto {x : A x = b}.

    Uses the ensemble's cached pseudo-inverse. For m > n with A of full column
    rank this returns the unique feasible point.
    """
    v = np.asarray(v, dtype=np.complex128)
    return v - ens.pinv @ (ens.A @ v - b)


@SOLVER_REGISTRY.register()
class JBPSolver(BaseSolver):
    """Consensus splitting over a time copy z1 = x and a frequency copy z2 = D x.

    The time copy is soft-thresholded with 1 / rho, the frequency copy with
    lam / rho. BP modes keep a single copy.
    """

    def __init__(self, problem, cfg=None):
        self.problem = problem
        constraint = AffineSet(problem.ens.A, problem.b, pinv=problem.ens.pinv)
        super(JBPSolver, self).__init__(jbp_terms(problem.lam, problem.mode), constraint, (problem.ens.n, ), cfg)


def solve(problem, cfg=None, x0=None):
    """Solve a JBP or BP problem.

    Raises:
        MaxItersExceeded: When the iteration cap is hit and
            ``cfg.raise_on_max_iters`` is set. The exception carries the last
            iterate.
    """
    return JBPSolver(problem, cfg).run(x0)
