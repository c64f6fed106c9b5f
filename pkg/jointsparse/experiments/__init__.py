from .emit import load_phase_csv, plot_phase_svg, write_cell_csv, write_phase_csv, write_text_report
from .phase_transition import (CSV_COLUMNS, DEFAULT_EXPERIMENT, CrossingCurve, PhaseGrid, UnbracketedError,
                               crossing_curve, crossing_point, monotonicity_violations, run_phase_experiment,
                               wilson_interval)
from .theory_suites import SuiteReport, dft_identity_suite, periodic_supports, rank_suite, shrinkage_suite

__all__ = [
    # phase_transition.py
    'CSV_COLUMNS',
    'DEFAULT_EXPERIMENT',
    'PhaseGrid',
    'CrossingCurve',
    'UnbracketedError',
    'run_phase_experiment',
    'crossing_curve',
    'crossing_point',
    'monotonicity_violations',
    'wilson_interval',
    # emit.py
    'write_phase_csv',
    'load_phase_csv',
    'write_cell_csv',
    'write_text_report',
    'plot_phase_svg',
    # theory_suites.py
    'SuiteReport',
    'rank_suite',
    'shrinkage_suite',
    'dft_identity_suite',
    'periodic_supports',
]
