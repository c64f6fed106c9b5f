from copy import deepcopy

from jointsparse.utils.registry import METRIC_REGISTRY
from .recovery_metric import (calculate_phase_aligned_err, calculate_rel_err, calculate_success,
                              calculate_support_recovery)

__all__ = ['calculate_rel_err', 'calculate_success', 'calculate_support_recovery', 'calculate_phase_aligned_err']


def calculate_metric(data, opt):
    """Calculate metric from data and options.

    Args:
        data (dict): Keyword arguments of the metric, e.g. x_hat and x_true.
        opt (dict): Configuration. It must contain:
            type (str): Metric type.
    """
    opt = deepcopy(opt)
    metric_type = opt.pop('type')
    metric = METRIC_REGISTRY.get(metric_type)(**data, **opt)
    return metric
