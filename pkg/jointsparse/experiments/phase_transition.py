"""Monte Carlo phase transitions of JBP against BP.

Every cell (k, m, method, lambda) runs ``trials`` independent problems with
n = k^2. Trial seeds are derived from (master_seed, k, m, method index, trial)
only, so cells can run in any order and on any worker.
"""
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from copy import deepcopy
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import stats
from tqdm import tqdm

from jointsparse.data import build_signal, make_ensemble
from jointsparse.metrics import calculate_metric
from jointsparse.ops import NoConvergenceError, RankDeficientError, derive_seed
from jointsparse.solvers import JbpProblem, MaxItersExceeded, SolverConfig, resolve_lambda, solve
from jointsparse.utils import AvgTimer, get_root_logger

CSV_COLUMNS = ['k', 'n', 'm', 'method', 'lambda', 'trial', 'seed', 'success', 'rel_err', 'iters', 'wall_ms']
CELL_KEYS = ['k', 'n', 'm', 'method', 'lambda']

DEFAULT_EXPERIMENT = {
    'k_values': [2, 4, 6, 8, 10, 12, 14, 16],
    'm_min': 1,
    'm_max': None,
    'm_max_factor': 3,
    'trials': 50,
    'methods': [{
        'mode': 'JBP',
        'lambda': 1.0
    }, {
        'mode': 'BP_time'
    }],
    'signal': {
        'type': 'dirac_comb',
        'offset': 0,
        'modulation': 0
    },
    'success_tol': 1e-4,
    'support_tol': 1e-6,
    'record_timing': False,
}

FULL_RANGE = {'k_values': list(range(2, 33, 2)), 'm_min': 1, 'm_max': 30, 'm_max_factor': None}


class UnbracketedError(ValueError):
    """The success fraction does not cross 1/2 inside the measured m range."""


def wilson_interval(successes, trials, confidence=0.95):
    """Wilson score interval for a binomial success fraction."""
    if trials < 1:
        raise ValueError(f'Wilson interval needs at least one trial, but got {trials}.')
    ci = stats.binomtest(int(successes), int(trials)).proportion_ci(confidence_level=confidence, method='wilson')
    return float(ci.low), float(ci.high)


def m_values_for(k, exp_opt):
    m_max = exp_opt.get('m_max')
    if m_max is None:
        m_max = int(exp_opt['m_max_factor']) * k
    return list(range(int(exp_opt.get('m_min', 1)), int(m_max) + 1))


def signal_opt_for(k, signal_opt):
    """Fill the size parameters of a signal generator for n = k^2."""
    opt = deepcopy(signal_opt)
    opt['n'] = k * k
    size_key = {'dirac_comb': 'period', 'random_comb_mixture': 'n1', 'random_support_signal': 'sparsity'}
    key = size_key.get(opt['type'])
    if key is not None:
        opt.setdefault(key, k)
    if opt['type'] == 'random_comb_mixture':
        opt.setdefault('num_terms', 1)
    return opt


def method_lambda(method, n):
    if method['mode'] == 'JBP':
        return resolve_lambda(method.get('lambda', 1.0), n)
    return 0.


def _run_cell(task):
    """Run every trial of one cell; returns a list of CSV rows."""
    k, m, method_idx, method, exp_opt, solver_opt, master_seed = task
    n = k * k
    lam = method_lambda(method, n)
    cfg = SolverConfig.from_opt(solver_opt)
    signal_opt = signal_opt_for(k, exp_opt['signal'])
    logger = get_root_logger()
    rows = []
    for trial in range(int(exp_opt['trials'])):
        seed = derive_seed(master_seed, k, m, method_idx, trial)
        tic = time.perf_counter()
        try:
            signal = build_signal(signal_opt, rng=derive_seed(seed, 1))
            ens = make_ensemble(seed, m, n)
            problem = JbpProblem.from_signal(ens, signal, lam if method['mode'] == 'JBP' else 1.0, method['mode'])
            try:
                result = solve(problem, cfg)
            except MaxItersExceeded as err:
                logger.warning(f'k={k} m={m} {method["mode"]} trial {trial}: {err}')
                result = err.result
            rel_err = calculate_metric({'x_hat': result.x_hat, 'x_true': signal.x}, {'type': 'calculate_rel_err'})
            success = rel_err <= exp_opt['success_tol']
            support_ok = calculate_metric({
                'x_hat': result.x_hat,
                'x_true': signal.x
            }, {
                'type': 'calculate_support_recovery',
                'support_tol': exp_opt['support_tol']
            })
            iters = result.iters
        except (RankDeficientError, NoConvergenceError, RuntimeError) as err:
            logger.warning(f'k={k} m={m} {method["mode"]} trial {trial} failed: {err}')
            rel_err, success, support_ok, iters = float('nan'), False, False, 0
        wall_ms = (time.perf_counter() - tic) * 1e3 if exp_opt.get('record_timing', False) else 0.
        rows.append({
            'k': k,
            'n': n,
            'm': m,
            'method': method['mode'],
            'lambda': lam,
            'trial': trial,
            'seed': seed,
            'success': bool(success),
            'rel_err': float(rel_err),
            'iters': int(iters),
            'wall_ms': float(wall_ms),
            'support_ok': bool(support_ok),
            '_method_idx': method_idx
        })
    return rows


@dataclass
class PhaseGrid:
    """Per-trial records of a phase-transition run.

    ``records`` has the CSV columns, one row per trial. Grids built by
    :func:`run_phase_experiment` also carry ``support_ok``, the exact support
    recovery flag, which is not part of the CSV.
    """
    records: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=CSV_COLUMNS))

    @property
    def k_values(self):
        return sorted(int(k) for k in self.records['k'].unique())

    @property
    def methods(self):
        return list(dict.fromkeys(zip(self.records['method'], self.records['lambda'])))

    def cell_table(self):
        """Successes, trials, mean error and iterations per cell, with Wilson 95% bounds."""
        if self.records.empty:
            return pd.DataFrame(columns=CELL_KEYS + [
                'successes', 'trials', 'fraction', 'mean_rel_err', 'mean_iters', 'ci_low', 'ci_high'
            ])
        table = self.records.groupby(
            CELL_KEYS, sort=True).agg(
                successes=('success', 'sum'),
                trials=('success', 'size'),
                mean_rel_err=('rel_err', 'mean'),
                mean_iters=('iters', 'mean')).reset_index()
        if 'support_ok' in self.records:
            support = self.records.groupby(CELL_KEYS, sort=True)['support_ok'].mean().reset_index(drop=True)
            table['support_fraction'] = support.to_numpy()
        table['successes'] = table['successes'].astype(int)
        table['fraction'] = table['successes'] / table['trials']
        bounds = [wilson_interval(s, t) for s, t in zip(table['successes'], table['trials'])]
        table['ci_low'] = [lo for lo, _ in bounds]
        table['ci_high'] = [hi for _, hi in bounds]
        return table

    def fractions(self, method, lam=None):
        """Success fractions of one method as {k: DataFrame[m, fraction, trials]}."""
        table = self.cell_table()
        table = table[table['method'] == method]
        if lam is not None:
            table = table[np.isclose(table['lambda'].astype(float), lam)]
        return {int(k): group.sort_values('m')[['m', 'fraction', 'trials']] for k, group in table.groupby('k')}


def build_tasks(exp_opt, solver_opt, master_seed):
    tasks = []
    for k in exp_opt['k_values']:
        k = int(k)
        for m in m_values_for(k, exp_opt):
            for method_idx, method in enumerate(exp_opt['methods']):
                tasks.append((k, m, method_idx, dict(method), exp_opt, solver_opt, master_seed))
    return tasks


def run_phase_experiment(opt):
    """Run a phase-transition grid.

    Args:
        opt (dict): Options with keys ``experiment`` (grid description, see
            DEFAULT_EXPERIMENT), ``solver`` (SolverConfig fields),
            ``master_seed``, ``num_worker`` and ``pbar``.

    Returns:
        PhaseGrid: All trial records, sorted by (k, m, method, trial).
    """
    exp_opt = deepcopy(DEFAULT_EXPERIMENT)
    exp_opt.update(opt.get('experiment', {}))
    if exp_opt.get('full', False):
        exp_opt.update(FULL_RANGE)
    if int(exp_opt['trials']) < 1:
        raise ValueError(f'Trials per cell must be positive, but got {exp_opt["trials"]}.')
    if any(int(k) < 1 for k in exp_opt['k_values']):
        raise ValueError(f'k values must be positive, but got {exp_opt["k_values"]}.')
    solver_opt = dict(opt.get('solver', {}))
    # fail fast on bad solver options before any worker starts
    SolverConfig.from_opt(solver_opt)
    master_seed = int(opt.get('master_seed', 0))
    num_worker = int(opt.get('num_worker', 1))

    logger = get_root_logger()
    tasks = build_tasks(exp_opt, solver_opt, master_seed)
    logger.info(f'Phase grid: k in {exp_opt["k_values"]}, {len(tasks)} cells, {exp_opt["trials"]} trials per cell, '
                f'{num_worker} worker(s).')

    rows = []
    timer = AvgTimer()
    pbar = tqdm(total=len(tasks), unit='cell', disable=not opt.get('pbar', False))
    if num_worker > 1:
        with ProcessPoolExecutor(max_workers=num_worker) as executor:
            futures = [executor.submit(_run_cell, task) for task in tasks]
            for future in as_completed(futures):
                rows.extend(future.result())
                timer.record()
                pbar.update(1)
    else:
        for task in tasks:
            rows.extend(_run_cell(task))
            timer.record()
            pbar.update(1)
            pbar.set_description(f'k={task[0]} m={task[1]}')
    pbar.close()
    logger.info(f'Phase grid finished, {timer.get_avg_time():.3f}s per cell on average.')

    if not rows:
        return PhaseGrid()
    records = pd.DataFrame(rows).sort_values(['k', 'm', '_method_idx', 'trial'], kind='mergesort')
    return PhaseGrid(records[CSV_COLUMNS + ['support_ok']].reset_index(drop=True))


@dataclass
class CrossingCurve:
    """50% success crossing m50 per k for one method."""
    method: str
    lam: float = None
    m50: dict = field(default_factory=dict)
    unbracketed: list = field(default_factory=list)
    monotonicity_flags: list = field(default_factory=list)


def crossing_point(m_values, fractions):
    """Linear interpolation of the crossing of 1/2.

    Interpolates between the last m with fraction < 1/2 and the m after it,
    so an early upward fluctuation does not decide the crossing.

    Raises:
        UnbracketedError: If no m is below 1/2 or the largest m still is.
    """
    m_values = np.asarray(m_values, dtype=float)
    fractions = np.asarray(fractions, dtype=float)
    if fractions.size == 0:
        raise UnbracketedError('No m values to bracket 1/2.')
    below = np.flatnonzero(fractions < 0.5)
    if below.size == 0:
        raise UnbracketedError(f'Success fraction is already {fractions[0]:.3f} at the smallest m = {m_values[0]:g}.')
    idx = int(below[-1])
    if idx == fractions.size - 1:
        raise UnbracketedError(f'Success fraction is still below 1/2 at the largest m in [{m_values.min()}, {m_values.max()}].')
    m0, m1 = m_values[idx], m_values[idx + 1]
    f0, f1 = fractions[idx], fractions[idx + 1]
    return float(m0 + (0.5 - f0) / (f1 - f0) * (m1 - m0))


def monotonicity_violations(m_values, fractions, trials, num_sigma=2.):
    """m values where the fraction drops by more than ``num_sigma`` binomial standard deviations."""
    flags = []
    for i in range(1, len(m_values)):
        f0, f1 = fractions[i - 1], fractions[i]
        sigma = np.sqrt(f0 * (1 - f0) / trials[i - 1] + f1 * (1 - f1) / trials[i])
        if f0 - f1 > num_sigma * sigma:
            flags.append(int(m_values[i]))
    return flags


def crossing_curve(grid, method, lam=None, strict=False):
    """50% crossing per k.

    k values whose range never brackets 1/2 are listed in ``unbracketed``;
    with ``strict`` the first of them raises UnbracketedError instead.
    """
    curve = CrossingCurve(method, lam)
    for k, table in grid.fractions(method, lam).items():
        m_values = table['m'].to_numpy()
        fractions = table['fraction'].to_numpy(dtype=float)
        for m in monotonicity_violations(m_values, fractions, table['trials'].to_numpy()):
            curve.monotonicity_flags.append((k, m))
        try:
            curve.m50[k] = crossing_point(m_values, fractions)
        except UnbracketedError as err:
            if strict:
                raise UnbracketedError(f'k={k}: {err}') from err
            curve.unbracketed.append(k)
    return curve
