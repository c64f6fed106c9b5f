import numpy as np

from jointsparse.ops import make_rng
from jointsparse.utils import get_root_logger
from jointsparse.utils.registry import SIGNAL_REGISTRY
from .signal_util import DEFAULT_SUPPORT_TOL, Signal
from .support_util import residue_class_support

MAX_REDRAWS = 8


def comb_vector(n, period, offset, modulation):
    """Modulated Dirac comb v_j = W^{j t} for j = offset (mod period), zero elsewhere.

    Indices are 0-based, W = exp(-2 pi i / n).
    """
    j = np.arange(n)
    v = np.exp(-2j * np.pi * ((j * modulation) % n) / n)
    v[j % period != offset] = 0
    return v


def _check_comb_args(n, period):
    if n < 1:
        raise ValueError(f'Signal length must be positive, but got {n}.')
    if period < 1 or n % period != 0:
        raise ValueError(f'Comb period {period} must divide the signal length {n}.')


@SIGNAL_REGISTRY.register()
def dirac_comb(n, period, offset=0, modulation=0, support_tol=DEFAULT_SUPPORT_TOL):
    """A single modulated Dirac comb.

    The comb has n / period nonzeros. Its time support is ``period``-periodic
    and its frequency support, the residue class -modulation mod n / period,
    is (n / period)-periodic.

    Args:
        n (int): Signal length.
        period (int): Comb period k, must divide n.
        offset (int): Residue l of the spikes, 0 <= l < k. Default: 0.
        modulation (int): Modulation t, 0 <= t < n. Default: 0.
        support_tol (float): Support detection tolerance. Default: 1e-8.

    Returns:
        Signal: The comb.
    """
    _check_comb_args(n, period)
    if not 0 <= offset < period:
        raise ValueError(f'Comb offset must lie in [0, {period}), but got {offset}.')
    if not 0 <= modulation < n:
        raise ValueError(f'Comb modulation must lie in [0, {n}), but got {modulation}.')
    return Signal.from_vector(comb_vector(n, period, offset, modulation), support_tol)


@SIGNAL_REGISTRY.register()
def random_comb_mixture(rng, n, n1, num_terms, pairs=None, support_tol=DEFAULT_SUPPORT_TOL):
    """Complex Gaussian mixture of distinct combs of period ``n1``.

    Args:
        rng (Generator | int): Random generator or seed.
        n (int): Signal length.
        n1 (int): Common comb period, must divide n.
        num_terms (int): Number of distinct (offset, modulation) pairs.
        pairs (list[tuple] | None): Explicit (offset, modulation) pairs. Drawn
            at random when None. Default: None.
        support_tol (float): Support detection tolerance. Default: 1e-8.

    Returns:
        Signal: A signal whose time support is n1-periodic and whose
            frequency support is (n / n1)-periodic.
    """
    _check_comb_args(n, n1)
    if num_terms < 1:
        raise ValueError(f'Number of mixture terms must be positive, but got {num_terms}.')
    num_pairs = n1 * n
    if num_terms > num_pairs:
        raise ValueError(f'Cannot draw {num_terms} distinct combs, only {num_pairs} (offset, modulation) pairs exist.')
    rng = make_rng(rng)
    if pairs is None:
        flat = rng.choice(num_pairs, size=num_terms, replace=False)
        pairs = [(int(p) // n, int(p) % n) for p in flat]
    else:
        pairs = [(int(l), int(t)) for l, t in pairs]
        if len(pairs) != num_terms:
            raise ValueError(f'Expected {num_terms} comb pairs, but got {len(pairs)}.')
        if len(set(pairs)) != len(pairs):
            raise ValueError(f'Comb pairs must be distinct, but got {pairs}.')
        for l, t in pairs:
            if not (0 <= l < n1 and 0 <= t < n):
                raise ValueError(f'Comb pair ({l}, {t}) out of range for n={n}, n1={n1}.')

    combs = np.stack([comb_vector(n, n1, l, t) for l, t in pairs])
    expected_time = residue_class_support(n, n1, [l for l, _ in pairs])
    expected_freq = residue_class_support(n, n // n1, [-t for _, t in pairs])
    for attempt in range(MAX_REDRAWS):
        alpha = (rng.standard_normal(num_terms) + 1j * rng.standard_normal(num_terms)) / np.sqrt(2.)
        signal = Signal.from_vector(alpha @ combs, support_tol)
        if signal.support_time == expected_time and signal.support_freq == expected_freq:
            return signal
        get_root_logger().warning(f'Comb mixture cancelled on attempt {attempt + 1}, redrawing coefficients.')
    raise RuntimeError(f'Comb mixture kept cancelling after {MAX_REDRAWS} coefficient draws.')


@SIGNAL_REGISTRY.register()
def random_support_signal(rng, n, sparsity, support_tol=DEFAULT_SUPPORT_TOL):
    """Signal with a uniformly random support of size ``sparsity``.

    Values on the support are complex Gaussian, rescaled to modulus at least 1
    so the support survives thresholding.
    """
    if not 0 <= sparsity <= n:
        raise ValueError(f'Sparsity must lie in [0, {n}], but got {sparsity}.')
    rng = make_rng(rng)
    x = np.zeros(n, dtype=np.complex128)
    support = rng.choice(n, size=sparsity, replace=False)
    values = (rng.standard_normal(sparsity) + 1j * rng.standard_normal(sparsity)) / np.sqrt(2.)
    # phase kept, modulus pushed to 1 + |g|
    x[support] = values / np.maximum(np.abs(values), 1e-300) * (1. + np.abs(values))
    return Signal.from_vector(x, support_tol)
