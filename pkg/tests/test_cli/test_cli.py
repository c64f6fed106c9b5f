import os

import pandas as pd
import pytest

from jointsparse.cli import apply_cli_flags, main, parse_args
from jointsparse.data import read_signal
from jointsparse.experiments import CSV_COLUMNS


def test_parse_args():
    """Test parse_args: subcommands and flags"""

    args = parse_args(['solve', '--n', '16', '--k', '4', '--m', '6', '--lambda', 'log_inverse', '--seed', '3'])
    assert args.command == 'solve'
    assert (args.n, args.k, args.m, args.lam, args.seed) == (16, 4, 6, 'log_inverse', 3)
    args = parse_args(['phase', '--full', '--workers', '4'])
    assert args.full and args.workers == 4
    assert parse_args(['lemmas', '--suite', 'rank']).command == 'lemmas'
    assert parse_args(['suites']).command == 'lemmas'
    with pytest.raises(SystemExit):
        parse_args(['solve', '--mode', 'BP_both'])
    with pytest.raises(SystemExit):
        parse_args([])


def test_apply_cli_flags():
    """Test apply_cli_flags: flags beat config values"""

    from jointsparse.cli import _defaults
    args = parse_args(['gen', '--type', 'random_comb_mixture', '--k', '2', '--n', '8', '--seed', '5'])
    opt = apply_cli_flags(_defaults('gen'), args)
    assert opt['master_seed'] == 5
    assert opt['signal'] == {'type': 'random_comb_mixture', 'n': 8, 'n1': 2, 'num_terms': 2}


def test_gen_and_solve(tmp_path):
    """Test main: gen writes a signal file that solve reads back"""

    out = str(tmp_path)
    assert main(['gen', '--out', out, '--n', '16', '--k', '4']) == 0
    signal_file = os.path.join(out, 'signal_dirac_comb_n16.txt')
    assert read_signal(signal_file).n == 16

    assert main(['solve', '--out', out, '--signal', signal_file, '--m', '16', '--set', 'oracle:iters=5']) == 0
    row = pd.read_csv(os.path.join(out, 'solve.csv'))
    assert list(row.columns) == CSV_COLUMNS
    assert bool(row.loc[0, 'success'])
    assert row.loc[0, 'k'] == 4


def test_certify(tmp_path):
    """Test main: certify writes text and CSV reports"""

    out = str(tmp_path)
    assert main(['certify', '--out', out, '--n', '16', '--k', '4', '--m', '12', '--set', 'probe:num_samples=8',
                 '--set', 'probe:restarts=1']) == 0
    assert os.path.isfile(os.path.join(out, 'certificate.txt'))
    row = pd.read_csv(os.path.join(out, 'certificate.csv'))
    assert 'pass' in row.columns


def test_phase(tmp_path):
    """Test main: a tiny phase grid writes CSV, cell table, crossings and SVG"""

    out = str(tmp_path)
    assert main([
        'phase', '--out', out, '--trials', '2', '--set', 'experiment:k_values=[2]', '--set', 'experiment:m_max=3',
        '--set', 'solver:max_iters=500', '--set', 'pbar=false'
    ]) == 0
    for suffix in ('.csv', '_cells.csv', '_crossings.txt', '.svg'):
        assert os.path.isfile(os.path.join(out, f'phase{suffix}'))
    assert len(pd.read_csv(os.path.join(out, 'phase.csv'))) == 3 * 2 * 2


def test_lemmas_and_jbpm(tmp_path):
    """Test main: theory suites and the lifted demo"""

    out = str(tmp_path)
    argv = ['lemmas', '--out', out, '--suite', 'dft_identity', '--set', 'suites:dft_identity:n_values=[4, 8]']
    assert main(argv) == 0
    with open(os.path.join(out, 'lemmas_report.txt')) as f:
        assert 'dft_identity: PASS' in f.read()

    assert main(['jbpm-demo', '--out', out, '--n', '4', '--sparsity', '1', '--m', '16']) == 0
    row = pd.read_csv(os.path.join(out, 'jbpm_demo.csv'))
    assert row.loc[0, 'matrix_rel_err'] < 1e-6


def test_main_reports_failure(tmp_path):
    """Test main: a comb period that does not divide n exits with status 1"""

    assert main(['gen', '--out', str(tmp_path), '--n', '16', '--k', '5']) == 1
