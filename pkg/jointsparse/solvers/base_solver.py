from dataclasses import dataclass, fields

import numpy as np

from jointsparse.ops import pseudo_inverse
from jointsparse.utils import get_root_logger


@dataclass(frozen=True)
class SolverConfig:
    """Settings of the consensus splitting solvers.

    Args:
        rho (float): Splitting penalty. Default: 1.0.
        max_iters (int): Iteration cap. Default: 20000.
        eps_primal (float): Tolerance on the normalized primal residual. Default: 1e-9.
        eps_dual (float): Tolerance on the normalized dual residual. Default: 1e-9.
        over_relaxation (float): Relaxation parameter in [1, 1.9]. Default: 1.6.
        raise_on_max_iters (bool): Raise MaxItersExceeded when the cap is hit,
            otherwise return the unconverged result. Default: True.
        hermitian (bool): Symmetrize matrix iterates. Default: False.
    """
    rho: float = 1.0
    max_iters: int = 20000
    eps_primal: float = 1e-9
    eps_dual: float = 1e-9
    over_relaxation: float = 1.6
    raise_on_max_iters: bool = True
    hermitian: bool = False

    def __post_init__(self):
        for name in ('rho', 'eps_primal', 'eps_dual'):
            if not getattr(self, name) > 0:
                raise ValueError(f'Solver option {name} must be positive, but got {getattr(self, name)}.')
        if int(self.max_iters) < 1:
            raise ValueError(f'Solver option max_iters must be at least 1, but got {self.max_iters}.')
        if not 1. <= self.over_relaxation <= 1.9:
            raise ValueError(f'Solver option over_relaxation must lie in [1, 1.9], but got {self.over_relaxation}.')

    @classmethod
    def from_opt(cls, opt=None):
        """Build from an option dict, ignoring keys that are not solver settings (e.g. ``type``)."""
        opt = opt or {}
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in opt.items() if k in names})


@dataclass
class SolverResult:
    x_hat: np.ndarray
    objective: float
    iters: int
    primal_residual: float
    dual_residual: float
    converged: bool
    history: list = None


class MaxItersExceeded(RuntimeError):
    """Raised when the iteration cap is hit; ``result`` holds the last iterate and residuals."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class AffineSet():
    """The affine set {x : mat @ vec(x) = rhs}, projected onto with a cached pseudo-inverse.

    Variables may be vectors or matrices; matrices are vectorized row-major.

    Args:
        mat (ndarray): (m, d) constraint matrix of full row or full column rank.
        rhs (ndarray): Length-m right-hand side.
        pinv (ndarray | None): Precomputed pseudo-inverse of ``mat``. Default: None.
    """

    def __init__(self, mat, rhs, pinv=None):
        self.mat = np.asarray(mat, dtype=np.complex128)
        self.rhs = np.asarray(rhs, dtype=np.complex128)
        if self.rhs.shape != (self.mat.shape[0], ):
            raise ValueError(f'Right-hand side must have length {self.mat.shape[0]}, but got shape {self.rhs.shape}.')
        self.pinv = pseudo_inverse(self.mat) if pinv is None else pinv

    def residual(self, x):
        return self.mat @ np.ravel(x) - self.rhs

    def relative_residual(self, x):
        scale = np.linalg.norm(self.rhs)
        res = np.linalg.norm(self.residual(x))
        return res / scale if scale > 0 else res

    def project(self, v):
        flat = np.ravel(v)
        return (flat - self.pinv @ (self.mat @ flat - self.rhs)).reshape(np.shape(v))

    def min_norm_point(self, shape=None):
        point = self.pinv @ self.rhs
        return point if shape is None else point.reshape(shape)


class BaseSolver():
    """Consensus ADMM over a list of terms subject to an affine constraint.

    Minimizes sum_i f_i(T_i x) over {x : A x = b}, where every term f_i is
    composed with a unitary analysis transform T_i. Each term keeps a copy
    z_i = T_i x and a scaled dual u_i. One iteration reads:

        x   = P(mean_i T_i*(z_i - u_i))
        r_i = alpha T_i x + (1 - alpha) z_i + u_i
        z_i = prox_{f_i / rho}(r_i)
        u_i = r_i - z_i

    Residuals are normalized as in standard ADMM practice: the primal residual
    by the largest of ||T x|| and ||z||, the dual residual by rho ||T* u||.
    """

    def __init__(self, terms, constraint, shape, cfg=None):
        if not terms:
            raise ValueError('At least one objective term is required.')
        self.terms = list(terms)
        self.constraint = constraint
        self.shape = tuple(shape)
        self.cfg = cfg or SolverConfig()
        self.logger = get_root_logger()

    def objective(self, x):
        return sum(term.value(x) for term in self.terms)

    def postprocess(self, x):
        """Hook applied to the averaged copies before projection."""
        if self.cfg.hermitian:
            return (x + x.conj().T) / 2.
        return x

    def init_state(self, x0=None):
        if x0 is None:
            x = self.constraint.min_norm_point(self.shape)
        else:
            x = np.asarray(x0, dtype=np.complex128)
            if x.shape != self.shape:
                raise ValueError(f'Initial point must have shape {self.shape}, but got {x.shape}.')
        z = [term.transform(x) for term in self.terms]
        u = [np.zeros_like(zi) for zi in z]
        return x, z, u

    def x_step(self, z, u):
        avg = sum(term.adjoint(zi - ui) for term, zi, ui in zip(self.terms, z, u)) / len(self.terms)
        return self.constraint.project(self.postprocess(avg))

    def z_u_step(self, x, z, u):
        alpha = self.cfg.over_relaxation
        step = 1. / self.cfg.rho
        tx = [term.transform(x) for term in self.terms]
        z_new, u_new = [], []
        for term, txi, zi, ui in zip(self.terms, tx, z, u):
            relaxed = alpha * txi + (1. - alpha) * zi + ui
            zi_new = term.prox(relaxed, step)
            z_new.append(zi_new)
            u_new.append(relaxed - zi_new)
        return tx, z_new, u_new

    def compute_residuals(self, tx, z, z_prev, u):
        r = np.sqrt(sum(np.linalg.norm(txi - zi)**2 for txi, zi in zip(tx, z)))
        rn = max(np.sqrt(sum(np.linalg.norm(txi)**2 for txi in tx)), np.sqrt(sum(np.linalg.norm(zi)**2 for zi in z)))
        s = self.cfg.rho * np.linalg.norm(sum(term.adjoint(zi - zp) for term, zi, zp in zip(self.terms, z, z_prev)))
        sn = self.cfg.rho * np.linalg.norm(sum(term.adjoint(ui) for term, ui in zip(self.terms, u)))
        return r / (rn if rn > 0 else 1.), s / (sn if sn > 0 else 1.)

    def run(self, x0=None):
        x, z, u = self.init_state(x0)
        r = s = float('inf')
        for it in range(1, int(self.cfg.max_iters) + 1):
            z_prev = z
            x = self.x_step(z, u)
            tx, z, u = self.z_u_step(x, z, u)
            r, s = self.compute_residuals(tx, z, z_prev, u)
            if r <= self.cfg.eps_primal and s <= self.cfg.eps_dual:
                return SolverResult(x, self.objective(x), it, float(r), float(s), True)

        result = SolverResult(x, self.objective(x), int(self.cfg.max_iters), float(r), float(s), False)
        message = (f'{self.__class__.__name__} did not converge in {self.cfg.max_iters} iterations '
                   f'(primal residual {r:.3e}, dual residual {s:.3e}).')
        if self.cfg.raise_on_max_iters:
            raise MaxItersExceeded(message, result)
        self.logger.warning(message)
        return result
