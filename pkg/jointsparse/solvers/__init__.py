import importlib
from copy import deepcopy
from os import path as osp

from jointsparse.utils import get_root_logger, scandir
from jointsparse.utils.registry import SOLVER_REGISTRY
from .base_solver import AffineSet, BaseSolver, MaxItersExceeded, SolverConfig, SolverResult
from .jbp_solver import JbpProblem, jbp_objective, jbp_terms, project_affine, resolve_lambda, solve
from .jbpm_solver import (LiftedProblem, MatrixVar, apply_lifted, extract_signal, jbpm_objective, lift_measure,
                          lifted_adjoint, lifted_map_matrix, phase_align, solve_jbpm, tangent_complement,
                          tangent_projection)
from .oracle_solver import oracle_solve

__all__ = [
    'build_solver', 'AffineSet', 'BaseSolver', 'MaxItersExceeded', 'SolverConfig', 'SolverResult', 'JbpProblem',
    'jbp_objective', 'jbp_terms', 'project_affine', 'resolve_lambda', 'solve', 'oracle_solve', 'LiftedProblem',
    'MatrixVar', 'apply_lifted', 'extract_signal', 'jbpm_objective', 'lift_measure', 'lifted_adjoint',
    'lifted_map_matrix', 'phase_align', 'solve_jbpm', 'tangent_complement', 'tangent_projection'
]

# automatically scan and import solver modules for registry
# scan all the files under the 'solvers' folder and collect files ending with '_solver.py'
solver_folder = osp.dirname(osp.abspath(__file__))
solver_filenames = [osp.splitext(osp.basename(v))[0] for v in scandir(solver_folder) if v.endswith('_solver.py')]
# import all the solver modules
_solver_modules = [importlib.import_module(f'jointsparse.solvers.{file_name}') for file_name in solver_filenames]


def build_solver(problem, opt=None):
    """Build a solver for ``problem`` from options.

    Args:
        problem (JbpProblem | LiftedProblem): Problem to solve.
        opt (dict | None): Configuration. It may contain:
            type (str): Solver type. Default: 'JBPSolver'.
            Any SolverConfig field.
    """
    opt = deepcopy(opt or {})
    solver_type = opt.pop('type', 'JBPSolver')
    solver = SOLVER_REGISTRY.get(solver_type)(problem, SolverConfig.from_opt(opt))
    logger = get_root_logger()
    logger.debug(f'Solver [{solver.__class__.__name__}] is created.')
    return solver
