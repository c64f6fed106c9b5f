import argparse
import logging
import sys
import time
from collections import OrderedDict
from copy import deepcopy
from os import path as osp

import numpy as np
import pandas as pd

from jointsparse.certificates import build_matrix_certificate, certify, nullspace_probe, verify_matrix_certificate
from jointsparse.data import build_signal, make_ensemble, read_signal, write_signal
from jointsparse.experiments import (CSV_COLUMNS, DEFAULT_EXPERIMENT, crossing_curve, dft_identity_suite,
                                     plot_phase_svg, rank_suite, run_phase_experiment, shrinkage_suite,
                                     write_cell_csv, write_phase_csv, write_text_report)
from jointsparse.metrics import calculate_metric
from jointsparse.ops import derive_seed, gaussian_matrix, make_rng
from jointsparse.solvers import (JbpProblem, LiftedProblem, MatrixVar, MaxItersExceeded, SolverConfig, extract_signal,
                                 jbp_objective, oracle_solve, solve, solve_jbpm)
from jointsparse.utils import (dict2str, get_env_info, get_root_logger, get_time_str, make_result_dirs,
                               resolve_options)

SOLVER_DEFAULTS = OrderedDict(
    type='JBPSolver',
    rho=1.0,
    max_iters=20000,
    eps_primal=1e-9,
    eps_dual=1e-9,
    over_relaxation=1.6,
    raise_on_max_iters=True,
    hermitian=False)

SIGNAL_DEFAULTS = OrderedDict(type='dirac_comb', n=16, period=4, offset=0, modulation=0)


def _defaults(command):
    opt = OrderedDict(name=command.replace('-', '_'), master_seed=0, path=OrderedDict(results_root='results'))
    if command in ('gen', 'solve', 'certify'):
        opt['signal'] = deepcopy(SIGNAL_DEFAULTS)
    if command in ('solve', 'certify'):
        opt['problem'] = OrderedDict(m=8, mode='JBP', **{'lambda': 1.0})
        opt['solver'] = deepcopy(SOLVER_DEFAULTS)
    if command == 'solve':
        opt['oracle'] = OrderedDict(iters=0)
    if command == 'certify':
        opt['probe'] = OrderedDict(num_samples=0, restarts=100)
    if command == 'phase':
        opt.update(num_worker=1, pbar=True)
        opt['experiment'] = deepcopy(DEFAULT_EXPERIMENT)
        opt['solver'] = deepcopy(SOLVER_DEFAULTS)
        opt['solver']['raise_on_max_iters'] = False
        opt['emit'] = OrderedDict(svg=True, cells=True)
    if command == 'lemmas':
        opt['suites'] = OrderedDict(
            rank=OrderedDict(enabled=True, n_values=[4, 8, 16], trials=100, prime_n=5),
            shrinkage=OrderedDict(enabled=True, n=256, m=64, support_size=1, trials=200),
            dft_identity=OrderedDict(enabled=True, n_values=[4, 8, 9, 12, 16, 36, 64]))
    if command == 'jbpm-demo':
        opt['jbpm'] = OrderedDict(n=8, sparsity=2, m=64, **{'lambda': 1.0}, support_tol=1e-6)
        opt['solver'] = deepcopy(SOLVER_DEFAULTS)
        opt['solver'].update(type='JBPMSolver', hermitian=True, eps_primal=1e-10, eps_dual=1e-10)
    return opt


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog='jointsparse', description='Joint time and frequency sparse recovery.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Master seed.')
    common.add_argument('--out', type=str, default=None, help='Result folder.')
    common.add_argument('--config', type=str, default=None, help='YAML option file or flat key=value file.')
    common.add_argument(
        '--set', action='append', default=[], metavar='KEY=VALUE', help='Override an option, e.g. solver:rho=2.')
    common.add_argument('--debug', action='store_true')

    subparsers = parser.add_subparsers(dest='command', required=True)
    gen = subparsers.add_parser('gen', parents=[common], help='Generate a signal file.')
    gen.add_argument('--type', type=str, default=None, help='Signal generator.')
    solve_parser = subparsers.add_parser('solve', parents=[common], help='Solve JBP or a BP baseline.')
    cert_parser = subparsers.add_parser('certify', parents=[common], help='Build and verify a dual certificate.')
    for p in (gen, solve_parser, cert_parser):
        p.add_argument('--signal', type=str, default=None, help='Signal file written by "gen".')
        p.add_argument('--n', type=int, default=None)
        p.add_argument('--k', type=int, default=None, help='Comb period, mixture period or sparsity.')
    for p in (solve_parser, cert_parser):
        p.add_argument('--m', type=int, default=None)
        p.add_argument('--mode', type=str, default=None, choices=['JBP', 'BP_time', 'BP_freq'])
        p.add_argument('--lambda', dest='lam', type=str, default=None, help='A number or "log_inverse".')

    phase = subparsers.add_parser('phase', parents=[common], help='Run a phase-transition grid.')
    phase.add_argument('--full', action='store_true', help='k in {2, ..., 32}, m in [1, 30].')
    phase.add_argument('--trials', type=int, default=None)
    phase.add_argument('--workers', type=int, default=None)

    suites = subparsers.add_parser(
        'lemmas', aliases=['suites'], parents=[common], help='Run the theory check suites.')
    suites.add_argument('--suite', type=str, default='all', choices=['all', 'rank', 'shrinkage', 'dft_identity'])

    demo = subparsers.add_parser('jbpm-demo', parents=[common], help='Sparse phase retrieval by lifting.')
    demo.add_argument('--n', type=int, default=None)
    demo.add_argument('--sparsity', type=int, default=None)
    demo.add_argument('--m', type=int, default=None)
    demo.add_argument('--lambda', dest='lam', type=float, default=None)
    args = parser.parse_args(argv)
    if args.command == 'suites':
        args.command = 'lemmas'
    return args


def _signal_size_key(signal_type):
    return {'dirac_comb': 'period', 'random_comb_mixture': 'n1', 'random_support_signal': 'sparsity'}[signal_type]


def apply_cli_flags(opt, args):
    """Explicit flags override everything else."""
    if args.seed is not None:
        opt['master_seed'] = args.seed
    if args.out is not None:
        opt['path']['results_root'] = args.out
    if 'signal' in opt:
        if getattr(args, 'type', None) is not None and args.type != opt['signal']['type']:
            opt['signal'] = OrderedDict(type=args.type, n=opt['signal'].get('n', 16))
            opt['signal'][_signal_size_key(args.type)] = 4
            if args.type == 'random_comb_mixture':
                opt['signal']['num_terms'] = 2
        if args.signal is not None:
            opt['signal']['file'] = args.signal
        if args.n is not None:
            opt['signal']['n'] = args.n
        if args.k is not None:
            opt['signal'][_signal_size_key(opt['signal']['type'])] = args.k
    if 'problem' in opt:
        for flag, key in (('m', 'm'), ('mode', 'mode'), ('lam', 'lambda')):
            value = getattr(args, flag)
            if value is not None:
                opt['problem'][key] = value if key != 'lambda' or value == 'log_inverse' else float(value)
    if args.command == 'phase':
        if args.full:
            opt['experiment']['full'] = True
        if args.trials is not None:
            opt['experiment']['trials'] = args.trials
        if args.workers is not None:
            opt['num_worker'] = args.workers
    if args.command == 'jbpm-demo':
        for flag, key in (('n', 'n'), ('sparsity', 'sparsity'), ('m', 'm'), ('lam', 'lambda')):
            value = getattr(args, flag)
            if value is not None:
                opt['jbpm'][key] = value
    return opt


def load_signal(opt):
    signal_opt = deepcopy(opt['signal'])
    if signal_opt.get('file'):
        return read_signal(signal_opt['file'])
    signal_opt.pop('file', None)
    return build_signal(signal_opt, rng=derive_seed(opt['master_seed'], 1))


def gen_pipeline(opt, logger):
    signal = load_signal(opt)
    signal_file = osp.join(opt['path']['results_root'], f"signal_{opt['signal']['type']}_n{signal.n}.txt")
    write_signal(signal, signal_file)
    logger.info(f'Signal with {len(signal.support_time)} time and {len(signal.support_freq)} frequency nonzeros '
                f'written to {signal_file}.')
    return signal_file


def _problem(opt, signal):
    prob_opt = opt['problem']
    ens = make_ensemble(derive_seed(opt['master_seed'], 0), int(prob_opt['m']), signal.n)
    return JbpProblem.from_signal(ens, signal, prob_opt['lambda'], prob_opt['mode'])


def solve_pipeline(opt, logger):
    signal = load_signal(opt)
    problem = _problem(opt, signal)
    cfg = SolverConfig.from_opt(opt['solver'])
    tic = time.perf_counter()
    try:
        result = solve(problem, cfg)
    except MaxItersExceeded as err:
        logger.warning(str(err))
        result = err.result
    wall_ms = (time.perf_counter() - tic) * 1e3
    data = {'x_hat': result.x_hat, 'x_true': signal.x}
    rel_err = calculate_metric(data, {'type': 'calculate_rel_err'})
    success = calculate_metric(data, {'type': 'calculate_success'})
    logger.info(f'{problem.mode} (lambda={problem.lam:.6g}) m={problem.ens.m} n={signal.n}: '
                f'objective {result.objective:.10g}, iters {result.iters}, converged {result.converged}, '
                f'rel_err {rel_err:.3e}, success {success}.')
    logger.info(f'Objective of the ground truth: {jbp_objective(signal.x, problem.lam, problem.mode):.10g}.')
    if int(opt['oracle']['iters']) > 0:
        oracle = oracle_solve(problem, int(opt['oracle']['iters']), seed=derive_seed(opt['master_seed'], 2))
        logger.info(f'Oracle best objective {oracle.objective:.10g} after {oracle.iters} steps.')
    row = pd.DataFrame([{
        'k': len(signal.support_time),
        'n': signal.n,
        'm': problem.ens.m,
        'method': problem.mode,
        'lambda': problem.lam,
        'trial': 0,
        'seed': problem.ens.seed,
        'success': success,
        'rel_err': rel_err,
        'iters': result.iters,
        'wall_ms': wall_ms
    }], columns=CSV_COLUMNS)
    csv_file = osp.join(opt['path']['results_root'], 'solve.csv')
    row.to_csv(csv_file, index=False, float_format='%.17g')
    return result


def certify_pipeline(opt, logger):
    signal = load_signal(opt)
    problem = _problem(opt, signal)
    _, report = certify(problem.ens, signal, problem.lam)
    logger.info('\n' + report.to_text())
    write_text_report(report.to_text(), osp.join(opt['path']['results_root'], 'certificate.txt'))
    pd.DataFrame([report.to_row()]).to_csv(
        osp.join(opt['path']['results_root'], 'certificate.csv'), index=False, float_format='%.17g')
    if int(opt['probe']['num_samples']) > 0:
        probe = nullspace_probe(
            problem.ens,
            signal,
            problem.lam,
            int(opt['probe']['num_samples']),
            derive_seed(opt['master_seed'], 3),
            restarts=int(opt['probe']['restarts']))
        verdict = 'violation found, x is not the unique optimum' if probe.found_violation else 'no violation found'
        logger.info(f'Null-space probe over {probe.dim} dimensions: min value {probe.min_value:.4e}, {verdict}.')
    return report


def phase_pipeline(opt, logger):
    grid = run_phase_experiment(opt)
    root = opt['path']['results_root']
    write_phase_csv(grid, osp.join(root, f"{opt['name']}.csv"))
    if opt['emit'].get('cells', True):
        write_cell_csv(grid, osp.join(root, f"{opt['name']}_cells.csv"))
    methods = list(grid.methods)
    lines = []
    for method, lam in methods:
        curve = crossing_curve(grid, method, lam)
        for k in grid.k_values:
            m50 = curve.m50.get(k)
            text = f'{m50:.3f} (m50/k = {m50 / k:.3f})' if m50 is not None else 'unbracketed'
            lines.append(f'{method:<8} lambda={lam:<8.4g} k={k:<3d} m50 = {text}')
        for k, m in curve.monotonicity_flags:
            lines.append(f'{method:<8} k={k:<3d} success fraction drops beyond 2 sigma at m={m}')
    summary = '\n'.join(lines)
    logger.info('50% crossings:\n' + summary)
    write_text_report(summary, osp.join(root, f"{opt['name']}_crossings.txt"))
    if opt['emit'].get('svg', True) and len(methods) > 0:
        plot_phase_svg(grid, osp.join(root, f"{opt['name']}.svg"), methods=methods)
    return grid


def suites_pipeline(opt, logger, suite='all'):
    suites = opt['suites']
    reports = []
    if suite in ('all', 'rank') and suites['rank'].get('enabled', True):
        reports.append(
            rank_suite(
                derive_seed(opt['master_seed'], 4), suites['rank']['n_values'], int(suites['rank']['trials']),
                suites['rank'].get('prime_n')))
    if suite in ('all', 'shrinkage') and suites['shrinkage'].get('enabled', True):
        s_opt = suites['shrinkage']
        reports.append(
            shrinkage_suite(
                derive_seed(opt['master_seed'], 5), int(s_opt['n']), int(s_opt['m']), int(s_opt['support_size']),
                int(s_opt['trials'])))
    if suite in ('all', 'dft_identity') and suites['dft_identity'].get('enabled', True):
        reports.append(dft_identity_suite(suites['dft_identity']['n_values'], seed=derive_seed(opt['master_seed'], 6)))
    text = '\n'.join(report.to_text() for report in reports)
    write_text_report(text, osp.join(opt['path']['results_root'], f"{opt['name']}_report.txt"))
    return reports


def jbpm_pipeline(opt, logger):
    j_opt = opt['jbpm']
    n, sparsity, m, lam = int(j_opt['n']), int(j_opt['sparsity']), int(j_opt['m']), float(j_opt['lambda'])
    rng = make_rng(derive_seed(opt['master_seed'], 7))
    x = build_signal({'type': 'random_support_signal', 'n': n, 'sparsity': sparsity}, rng=rng).x
    vectors = gaussian_matrix(rng, m, n)
    problem = LiftedProblem.from_signal(vectors, x, lam)
    cfg = SolverConfig.from_opt(opt['solver'])
    try:
        var = solve_jbpm(problem, cfg, support_tol=float(j_opt['support_tol']))
        result = var.result
    except MaxItersExceeded as err:
        logger.warning(str(err))
        result = err.result
        var = None
    truth = np.outer(x, x.conj())
    matrix_err = calculate_metric({'x_hat': result.x_hat, 'x_true': truth}, {'type': 'calculate_rel_err'})
    x_hat, residual = extract_signal(result.x_hat)
    phase_err = calculate_metric({'x_hat': x_hat, 'x_true': x}, {'type': 'calculate_phase_aligned_err'})

    truth_var = MatrixVar.from_matrix(truth, tol=float(j_opt['support_tol']))
    cert = build_matrix_certificate(problem, truth_var, lam) if lam > 0 else None
    cert_pass = verify_matrix_certificate(cert, problem, truth_var, lam).passed if cert is not None else False

    lines = [
        f'JBPM demo: n={n} sparsity={sparsity} m={m} lambda={lam:g} seed={opt["master_seed"]}',
        f'\tconverged: {result.converged} after {result.iters} iterations',
        f'\tmatrix relative error: {matrix_err:.4e}',
        f'\tphase-aligned signal error: {phase_err:.4e}',
        f'\trank-1 residual sigma2/sigma1: {residual:.4e}',
        f'\tleast-squares certificate candidate passes: {cert_pass}',
    ]
    if var is not None:
        lines.append(f'\trecovered support size {len(var.support_pairs)}, rank {var.rank}')
    text = '\n'.join(lines)
    logger.info('\n' + text)
    root = opt['path']['results_root']
    write_text_report(text, osp.join(root, 'jbpm_demo.txt'))
    pd.DataFrame([{
        'n': n,
        'sparsity': sparsity,
        'm': m,
        'lambda': lam,
        'seed': opt['master_seed'],
        'converged': result.converged,
        'iters': result.iters,
        'matrix_rel_err': matrix_err,
        'phase_err': phase_err,
        'rank1_residual': residual,
        'cert_pass': cert_pass
    }]).to_csv(osp.join(root, 'jbpm_demo.csv'), index=False, float_format='%.17g')
    return result


def main(argv=None):
    args = parse_args(argv)
    opt = resolve_options(_defaults(args.command), args.config, args.set)
    opt = apply_cli_flags(opt, args)

    make_result_dirs(opt)
    log_file = osp.join(opt['path']['results_root'], f"{args.command}_{opt['name']}_{get_time_str()}.log")
    logger = get_root_logger(log_level=logging.DEBUG if args.debug else logging.INFO, log_file=log_file)
    logger.info(get_env_info())
    logger.info(dict2str(opt))

    try:
        if args.command == 'gen':
            gen_pipeline(opt, logger)
        elif args.command == 'solve':
            solve_pipeline(opt, logger)
        elif args.command == 'certify':
            certify_pipeline(opt, logger)
        elif args.command == 'phase':
            phase_pipeline(opt, logger)
        elif args.command == 'lemmas':
            suites_pipeline(opt, logger, args.suite)
        else:
            jbpm_pipeline(opt, logger)
    except (ValueError, KeyError, OSError, RuntimeError) as err:
        logger.error(f'{args.command} failed: {err}')
        if args.debug:
            raise
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
