import importlib
from copy import deepcopy
from os import path as osp

from jointsparse.utils import get_root_logger, scandir
from jointsparse.utils.registry import OBJECTIVE_REGISTRY
from .objective_util import soft_threshold, svt

__all__ = ['build_objective', 'soft_threshold', 'svt']

# automatically scan and import objective modules for registry
# scan all the files under the 'objectives' folder and collect files ending with '_objective.py'
objective_folder = osp.dirname(osp.abspath(__file__))
objective_filenames = [
    osp.splitext(osp.basename(v))[0] for v in scandir(objective_folder) if v.endswith('_objective.py')
]
# import all the objective modules
_objective_modules = [
    importlib.import_module(f'jointsparse.objectives.{file_name}') for file_name in objective_filenames
]


def build_objective(opt):
    """Build an objective term from options.

    Args:
        opt (dict): Configuration. It must contain:
            type (str): Term type, e.g. ``L1Norm``.
    """
    opt = deepcopy(opt)
    objective_type = opt.pop('type')
    objective = OBJECTIVE_REGISTRY.get(objective_type)(**opt)
    logger = get_root_logger()
    logger.debug(f'Objective [{objective.__class__.__name__}] is created.')
    return objective
