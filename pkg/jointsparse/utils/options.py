import os
import yaml
from collections import OrderedDict
from copy import deepcopy
from os import path as osp


def ordered_yaml():
    """Support OrderedDict for yaml.

    Returns:
        tuple: yaml Loader and Dumper.
    """
    try:
        from yaml import CDumper as Dumper
        from yaml import CLoader as Loader
    except ImportError:
        from yaml import Dumper, Loader

    _mapping_tag = yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG

    def dict_representer(dumper, data):
        return dumper.represent_dict(data.items())

    def dict_constructor(loader, node):
        return OrderedDict(loader.construct_pairs(node))

    Dumper.add_representer(OrderedDict, dict_representer)
    Loader.add_constructor(_mapping_tag, dict_constructor)
    return Loader, Dumper


def yaml_load(f):
    """Load yaml file or string.

    Args:
        f (str): File path or a python string.

    Returns:
        dict: Loaded dict.
    """
    if os.path.isfile(f):
        with open(f, 'r') as f:
            return yaml.load(f, Loader=ordered_yaml()[0])
    else:
        return yaml.load(f, Loader=ordered_yaml()[0])


def dict2str(opt, indent_level=1):
    """dict to string for printing options.

    Args:
        opt (dict): Option dict.
        indent_level (int): Indent level. Default: 1.

    Return:
        (str): Option string for printing.
    """
    msg = '\n'
    for k, v in opt.items():
        if isinstance(v, dict):
            msg += ' ' * (indent_level * 2) + k + ':['
            msg += dict2str(v, indent_level + 1)
            msg += ' ' * (indent_level * 2) + ']\n'
        else:
            msg += ' ' * (indent_level * 2) + k + ': ' + str(v) + '\n'
    return msg


def _postprocess_value(value):
    # None
    if value == '~' or value.lower() == 'none':
        return None
    # bool
    if value.lower() == 'true':
        return True
    elif value.lower() == 'false':
        return False
    # !!float number
    if value.startswith('!!float'):
        return float(value.replace('!!float', ''))
    # number
    if value.lstrip('-').isdigit():
        return int(value)
    try:
        return float(value)
    except ValueError:
        pass
    # list
    if value.startswith('['):
        return [_postprocess_value(str(v)) for v in yaml.safe_load(value)]
    # str
    return value


def set_option(opt, keys, value):
    """Set a (possibly nested) option. Nested keys are separated by ':'.

    Missing intermediate levels are created.
    """
    keys = keys.split(':')
    node = opt
    for key in keys[:-1]:
        if node.get(key) is None:
            node[key] = OrderedDict()
        node = node[key]
    node[keys[-1]] = value
    return opt


def parse_flat_config(f):
    """Parse a flat ``key=value`` config file.

    Blank lines and lines starting with '#' are ignored. Keys may address
    nested options with ':', e.g. ``experiment:trials=20``.

    Args:
        f (str): Path to the config file.

    Returns:
        OrderedDict: Parsed options.
    """
    opt = OrderedDict()
    with open(f, 'r') as fin:
        for line_no, line in enumerate(fin, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if '=' not in line:
                raise ValueError(f'{f}:{line_no}: expected key=value, got {line!r}.')
            keys, value = line.split('=', 1)
            set_option(opt, keys.strip(), _postprocess_value(value.strip()))
    return opt


def merge_options(base, override):
    """Recursively merge ``override`` into a deep copy of ``base``.

    A sub-dict whose ``type`` differs from the base one replaces it as a whole.
    """
    merged = deepcopy(base)
    for k, v in override.items():
        base_v = merged.get(k)
        if isinstance(v, dict) and isinstance(base_v, dict) and v.get('type', base_v.get('type')) == base_v.get('type'):
            merged[k] = merge_options(merged[k], v)
        else:
            merged[k] = deepcopy(v)
    return merged


def load_config(config_path):
    """Load a YAML option file or a flat key=value config file."""
    if not osp.isfile(config_path):
        raise FileNotFoundError(f'Config file {config_path} does not exist.')
    if config_path.endswith(('.yml', '.yaml')):
        return yaml_load(config_path)
    return parse_flat_config(config_path)


def resolve_options(defaults, config_path=None, overrides=None):
    """Resolve options: defaults < config file < ``key=value`` overrides.

    Args:
        defaults (dict): Built-in defaults of the command.
        config_path (str | None): YAML or flat config file.
        overrides (list[str] | None): Entries like ``solver:rho=2.0``.

    Returns:
        OrderedDict: Resolved options.
    """
    opt = deepcopy(defaults)
    if config_path is not None:
        opt = merge_options(opt, load_config(config_path))
    for entry in overrides or []:
        if '=' not in entry:
            raise ValueError(f'Override {entry!r} must look like key=value.')
        keys, value = entry.split('=', 1)
        set_option(opt, keys.strip(), _postprocess_value(value.strip()))
    return opt
