import numpy as np

from jointsparse.ops import make_rng
from .base_solver import SolverResult
from .jbp_solver import jbp_terms, project_affine

NULL_GRAD_TOL = 1e-12


def oracle_solve(problem, iters=100000, seed=0, step_scale=None, record_history=False):
    """Projected subgradient descent, kept independent of the splitting solver.

    Starts at the minimum-norm feasible point x0 and takes normalized steps of
    length c / sqrt(t) along the subgradient projected onto N(A), with
    c = ||x0|| / 2 (1 when x0 = 0). Subgradient entries at zeros of the
    transformed iterate are drawn at random from the unit disc. The best
    iterate seen is returned, so its objective upper-bounds the optimum.

    Args:
        problem (JbpProblem): Problem to solve.
        iters (int): Number of subgradient steps.
        seed (int): Seed of the subgradient choices at zero entries.
        step_scale (float | None): Overrides c. Default: None.
        record_history (bool): Keep the best-so-far objective after every step.

    Returns:
        SolverResult: ``converged`` is set only when the projected subgradient
            vanishes, which certifies optimality.
    """
    if iters < 1:
        raise ValueError(f'Oracle iterations must be at least 1, but got {iters}.')
    ens = problem.ens
    rng = make_rng(seed)
    terms = jbp_terms(problem.lam, problem.mode)

    x = project_affine(ens, problem.b, np.zeros(ens.n, dtype=np.complex128))
    x0_norm = np.linalg.norm(x)
    c = step_scale if step_scale is not None else (x0_norm / 2. if x0_norm > 0 else 1.)
    best_x = x
    best_obj = sum(term.value(x) for term in terms)
    history = [best_obj] if record_history else None

    for t in range(1, int(iters) + 1):
        g = sum(term.subgradient(x, rng=rng) for term in terms)
        raw_norm = np.linalg.norm(g)
        g = g - ens.pinv @ (ens.A @ g)
        g_norm = np.linalg.norm(g)
        if g_norm <= NULL_GRAD_TOL * max(raw_norm, 1.):
            return SolverResult(x, sum(term.value(x) for term in terms), t, 0., 0., True, history)
        # re-project to keep round-off from drifting off the affine set
        x = project_affine(ens, problem.b, x - (c / np.sqrt(t)) * g / g_norm)
        obj = sum(term.value(x) for term in terms)
        if obj < best_obj:
            best_obj, best_x = obj, x
        if record_history:
            history.append(best_obj)

    primal = np.linalg.norm(ens.A @ best_x - problem.b)
    return SolverResult(best_x, best_obj, int(iters), float(primal), float('nan'), False, history)
