import numpy as np

from jointsparse.data import detect_supports
from jointsparse.solvers.jbpm_solver import phase_align
from jointsparse.utils.registry import METRIC_REGISTRY

SUCCESS_TOL = 1e-4


@METRIC_REGISTRY.register()
def calculate_rel_err(x_hat, x_true, **kwargs):
    """Relative error ||x_hat - x_true||_2 / ||x_true||_2.

    Falls back to the absolute error when x_true is zero.

    Returns:
        float: Relative error.
    """
    x_hat = np.asarray(x_hat, dtype=np.complex128)
    x_true = np.asarray(x_true, dtype=np.complex128)
    assert x_hat.shape == x_true.shape, (f'Signal shapes are different: {x_hat.shape}, {x_true.shape}.')
    scale = np.linalg.norm(x_true)
    err = np.linalg.norm(x_hat - x_true)
    return float(err / scale) if scale > 0 else float(err)


@METRIC_REGISTRY.register()
def calculate_success(x_hat, x_true, tol=SUCCESS_TOL, **kwargs):
    """Recovery success: relative error at most ``tol`` (1e-4 by default)."""
    return calculate_rel_err(x_hat, x_true) <= tol


@METRIC_REGISTRY.register()
def calculate_support_recovery(x_hat, x_true, support_tol=1e-8, **kwargs):
    """Whether x_hat has exactly the time and frequency supports of x_true.

    Both supports are thresholded at ``support_tol``. Solver round-off easily
    exceeds 1e-8, so callers comparing solver output usually pass a looser
    tolerance.
    """
    return detect_supports(x_hat, support_tol) == detect_supports(x_true, support_tol)


@METRIC_REGISTRY.register()
def calculate_phase_aligned_err(x_hat, x_true, **kwargs):
    """min over phi of ||exp(i phi) x_hat - x_true|| / ||x_true||."""
    return calculate_rel_err(phase_align(np.asarray(x_hat, dtype=np.complex128), x_true), x_true)
