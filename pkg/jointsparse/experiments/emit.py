import os

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from .phase_transition import CSV_COLUMNS, PhaseGrid, crossing_curve  # noqa: E402

FLOAT_FORMAT = '%.17g'


def _makedirs_for(path):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)


def write_phase_csv(grid, path):
    """Write the per-trial CSV. An empty grid gives a header-only file."""
    try:
        _makedirs_for(path)
        grid.records[CSV_COLUMNS].to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as err:
        raise OSError(f'Failed to write phase CSV to {path}: {err}') from err


def load_phase_csv(path):
    """Parse a CSV written by :func:`write_phase_csv` back into a PhaseGrid."""
    try:
        records = pd.read_csv(path, dtype={'method': str})
    except OSError as err:
        raise OSError(f'Failed to read phase CSV from {path}: {err}') from err
    missing = [col for col in CSV_COLUMNS if col not in records]
    if missing:
        raise ValueError(f'{path}: missing CSV columns {missing}.')
    records = records[CSV_COLUMNS]
    if records.empty:
        return PhaseGrid()
    records = records.astype({'k': int, 'n': int, 'm': int, 'lambda': float, 'trial': int, 'seed': np.int64})
    records['success'] = records['success'].astype(bool)
    return PhaseGrid(records.reset_index(drop=True))


def write_cell_csv(grid, path):
    """Per-cell summary with Wilson 95% intervals."""
    try:
        _makedirs_for(path)
        grid.cell_table().to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as err:
        raise OSError(f'Failed to write cell summary to {path}: {err}') from err


def write_text_report(text, path):
    try:
        _makedirs_for(path)
        with open(path, 'w') as f:
            f.write(text if text.endswith('\n') else text + '\n')
    except OSError as err:
        raise OSError(f'Failed to write report to {path}: {err}') from err


def plot_phase_svg(grid, path, methods=(('JBP', None), ('BP_time', None))):
    """Success heatmap of the first method with the 50% curves of every method.

    The heatmap is grayscale with dark cells for failure. The first curve is
    drawn solid, the others dashed.

    Args:
        grid (PhaseGrid): Phase-transition records.
        path (str): Output SVG path.
        methods (tuple[tuple]): (method, lambda) pairs; lambda None matches any.
    """
    table = grid.cell_table()
    base_method, base_lam = methods[0]
    base = table[table['method'] == base_method]
    if base_lam is not None:
        base = base[np.isclose(base['lambda'].astype(float), base_lam)]
    if base.empty:
        raise ValueError(f'No {base_method} cells to plot.')
    heat = base.pivot_table(index='m', columns='k', values='fraction', aggfunc='mean')

    fig, ax = plt.subplots(figsize=(7, 5))
    k_vals, m_vals = heat.columns.to_numpy(dtype=float), heat.index.to_numpy(dtype=float)
    mesh = ax.pcolormesh(k_vals, m_vals, heat.to_numpy(dtype=float), cmap='gray', vmin=0., vmax=1., shading='nearest')
    fig.colorbar(mesh, ax=ax, label='success fraction')
    for idx, (method, lam) in enumerate(methods):
        curve = crossing_curve(grid, method, lam)
        if not curve.m50:
            continue
        ks = sorted(curve.m50)
        ax.plot(ks, [curve.m50[k] for k in ks],
                linestyle='-' if idx == 0 else '--',
                color='tab:red' if idx == 0 else 'tab:blue',
                linewidth=2,
                label=f'{method} 50%')
    ax.set_xlabel('k')
    ax.set_ylabel('m')
    ax.set_title(f'Phase transition, {base_method} success (dark = failure)')
    ax.legend(loc='upper left')
    try:
        _makedirs_for(path)
        fig.savefig(path, format='svg')
    except OSError as err:
        raise OSError(f'Failed to write SVG to {path}: {err}') from err
    finally:
        plt.close(fig)
