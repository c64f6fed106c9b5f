from collections import OrderedDict

import pytest

from jointsparse.utils import dict2str, resolve_options, yaml_load
from jointsparse.utils.options import load_config, merge_options, parse_flat_config, set_option

DEFAULTS = OrderedDict(
    name='phase',
    master_seed=0,
    experiment=OrderedDict(trials=50, signal=OrderedDict(type='dirac_comb', offset=0, modulation=0)),
    solver=OrderedDict(rho=1.0, max_iters=20000))


def test_set_option():
    """Test set_option: nested keys create missing levels"""

    opt = set_option(OrderedDict(), 'solver:rho', 2.0)
    assert opt == {'solver': {'rho': 2.0}}
    set_option(opt, 'solver:max_iters', 10)
    assert opt['solver'] == {'rho': 2.0, 'max_iters': 10}


def test_merge_options():
    """Test merge_options: recursive merge, replacement on a new type"""

    merged = merge_options(DEFAULTS, {'experiment': {'trials': 5}, 'solver': {'rho': 3.0}})
    assert merged['experiment']['trials'] == 5
    assert merged['experiment']['signal']['offset'] == 0
    assert merged['solver'] == {'rho': 3.0, 'max_iters': 20000}
    assert DEFAULTS['solver']['rho'] == 1.0

    merged = merge_options(DEFAULTS, {'experiment': {'signal': {'type': 'random_comb_mixture', 'num_terms': 2}}})
    assert merged['experiment']['signal'] == {'type': 'random_comb_mixture', 'num_terms': 2}
    merged = merge_options(DEFAULTS, {'experiment': {'signal': {'offset': 1}}})
    assert merged['experiment']['signal'] == {'type': 'dirac_comb', 'offset': 1, 'modulation': 0}


def test_parse_flat_config(tmp_path):
    """Test parse_flat_config: typed values, comments and malformed lines"""

    cfg = tmp_path / 'run.cfg'
    cfg.write_text('# comment\n\nname=demo\nexperiment:trials=20\nexperiment:k_values=[4, 6]\n'
                   'solver:eps_primal=1e-10\nemit:svg=false\nexperiment:m_max=~\nproblem:lambda=log_inverse\n')
    opt = parse_flat_config(str(cfg))
    assert opt['name'] == 'demo'
    assert opt['experiment']['trials'] == 20
    assert opt['experiment']['k_values'] == [4, 6]
    assert opt['solver']['eps_primal'] == 1e-10
    assert opt['emit']['svg'] is False
    assert opt['experiment']['m_max'] is None
    assert opt['problem']['lambda'] == 'log_inverse'

    bad = tmp_path / 'bad.cfg'
    bad.write_text('name demo\n')
    with pytest.raises(ValueError):
        parse_flat_config(str(bad))


def test_load_config(tmp_path):
    """Test load_config: YAML and flat files"""

    yml = tmp_path / 'opt.yml'
    yml.write_text('name: demo\nsolver:\n  rho: 2.0\n  eps_dual: !!float 1e-9\n')
    opt = load_config(str(yml))
    assert opt['solver']['rho'] == 2.0
    assert opt['solver']['eps_dual'] == 1e-9
    assert isinstance(opt, OrderedDict)
    assert yaml_load('a: 1')['a'] == 1

    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / 'missing.yml'))


def test_resolve_options(tmp_path):
    """Test resolve_options: defaults < config file < overrides"""

    yml = tmp_path / 'opt.yml'
    yml.write_text('master_seed: 3\nsolver:\n  rho: 2.0\n')
    opt = resolve_options(DEFAULTS, str(yml), ['solver:rho=4', 'experiment:trials=7'])
    assert opt['master_seed'] == 3
    assert opt['solver']['rho'] == 4
    assert opt['solver']['max_iters'] == 20000
    assert opt['experiment']['trials'] == 7
    assert resolve_options(DEFAULTS) == DEFAULTS

    with pytest.raises(ValueError):
        resolve_options(DEFAULTS, overrides=['solver:rho'])


def test_dict2str():
    """Test dict2str: nested options are indented"""

    text = dict2str(DEFAULTS)
    assert 'solver:[' in text
    assert '    rho: 1.0' in text
