import importlib
import inspect
from copy import deepcopy
from os import path as osp

from jointsparse.utils import get_root_logger, scandir
from jointsparse.utils.registry import SIGNAL_REGISTRY
from .sensing import (GoodconReport, InvertibilityReport, SensingEnsemble, SubspaceBasis, check_goodcon,
                      check_invertibility_on, intersection_basis, make_ensemble, restrict_columns)
from .signal_util import DEFAULT_SUPPORT_TOL, Signal, detect_supports, read_signal, write_signal
from .support_util import SupportSet, csgn, is_periodic_support, residue_class_support

__all__ = [
    'build_signal', 'SupportSet', 'csgn', 'is_periodic_support', 'residue_class_support', 'Signal',
    'detect_supports', 'read_signal', 'write_signal', 'DEFAULT_SUPPORT_TOL', 'SensingEnsemble', 'SubspaceBasis',
    'GoodconReport', 'InvertibilityReport', 'make_ensemble', 'restrict_columns', 'check_goodcon',
    'intersection_basis', 'check_invertibility_on'
]

# automatically scan and import signal modules for registry
# scan all the files under the data folder with '_signal' in file names
data_folder = osp.dirname(osp.abspath(__file__))
signal_filenames = [osp.splitext(osp.basename(v))[0] for v in scandir(data_folder) if v.endswith('_signal.py')]
# import all the signal modules
_signal_modules = [importlib.import_module(f'jointsparse.data.{file_name}') for file_name in signal_filenames]


def build_signal(opt, rng=None):
    """Build a signal from options.

    Args:
        opt (dict): Configuration. It must contain:
            type (str): Generator name, e.g. ``dirac_comb``.
        rng (Generator | int | None): Passed to generators that take one.
            Default: None.
    """
    opt = deepcopy(opt)
    signal_type = opt.pop('type')
    generator = SIGNAL_REGISTRY.get(signal_type)
    if rng is not None and 'rng' in inspect.signature(generator).parameters:
        opt['rng'] = rng
    signal = generator(**opt)
    logger = get_root_logger()
    logger.debug(f'Signal [{signal_type}] is created with {len(signal.support_time)} nonzeros.')
    return signal
