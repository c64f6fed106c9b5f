from .logger import AvgTimer, get_env_info, get_root_logger
from .misc import get_time_str, make_result_dirs, mkdir_and_rename, scandir
from .options import dict2str, resolve_options, yaml_load

__all__ = [
    # logger.py
    'AvgTimer',
    'get_root_logger',
    'get_env_info',
    # misc.py
    'get_time_str',
    'mkdir_and_rename',
    'make_result_dirs',
    'scandir',
    # options
    'yaml_load',
    'dict2str',
    'resolve_options',
]
