"""Numerical checks of the structural facts the recovery guarantees rest on.

* rank_suite: stacked restricted inverse bases [U1^-1_S1, U2^-1_S2] have full
  column rank whenever |S1| + |S2| <= n, for random continuous bases and,
  exhaustively, for (I, D) at a prime n.
* shrinkage_suite: with m >= 64 |S1| Gaussian measurements most off-support
  parts of b1 are shrunk to exactly zero.
* dft_identity_suite: for an (n / n1)-periodic S2, C = D* I_S2 D vanishes off
  the residue classes mod n1, its rows have squared norm |S2| / n, and it
  maps vectors supported off an n1-periodic S1 to vectors vanishing on S1;
  likewise for D I_S1 D*.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from jointsparse.certificates import shrink_b
from jointsparse.data import SupportSet, csgn, make_ensemble, residue_class_support, restrict_columns
from jointsparse.ops import (dft_matrix, gaussian_matrix, least_squares_min_norm, make_rng, restricted_dft_projector,
                             singular_values)
from jointsparse.utils import get_root_logger

RANK_RATIO_TOL = 1e-8
IDENTITY_TOL = 1e-12
MAX_ENUMERATED_SUBSETS = 256
MAX_REPORTED_FAILURES = 20


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: int = 0
    max_error: float = 0.
    details: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.checks > 0 and self.failures == 0

    def record(self, ok, error=0., detail=None):
        self.checks += 1
        self.max_error = max(self.max_error, float(error))
        if not ok:
            self.failures += 1
            if detail is not None and len(self.details) < MAX_REPORTED_FAILURES:
                self.details.append(detail)

    def to_text(self):
        lines = [f'{self.name}: {"PASS" if self.passed else "FAIL"} '
                 f'({self.checks - self.failures}/{self.checks} checks, max error {self.max_error:.3e})']
        lines.extend(f'\t{key}: {value}' for key, value in self.stats.items())
        lines.extend(f'\tfailure: {detail}' for detail in self.details)
        return '\n'.join(lines)


def _full_column_rank(mat):
    if mat.shape[1] == 0:
        return True, 0.
    sv = singular_values(mat)
    ratio = sv[-1] / sv[0] if sv[0] > 0 else 0.
    return mat.shape[1] <= mat.shape[0] and ratio > RANK_RATIO_TOL, ratio


def rank_suite(rng, n_values=(4, 8, 16), trials=100, prime_n=5):
    """Full column rank of stacked restricted inverse bases.

    Args:
        rng (Generator | int): Random generator or seed.
        n_values (list[int]): Dimensions of the random-basis trials.
        trials (int): Trials per dimension.
        prime_n (int | None): Prime dimension for the exhaustive (I, D) check.
            None skips it.
    """
    rng = make_rng(rng)
    report = SuiteReport('rank')
    for n in n_values:
        for trial in range(trials):
            inv1 = gaussian_matrix(rng, n, n)
            inv2 = gaussian_matrix(rng, n, n)
            size1 = int(rng.integers(0, n + 1))
            size2 = int(rng.integers(0, n - size1 + 1))
            cols1 = np.sort(rng.choice(n, size=size1, replace=False))
            cols2 = np.sort(rng.choice(n, size=size2, replace=False))
            ok, ratio = _full_column_rank(np.concatenate([inv1[:, cols1], inv2[:, cols2]], axis=1))
            report.record(ok, detail=f'n={n} trial={trial} |S1|={size1} |S2|={size2} ratio={ratio:.3e}')

    if prime_n is not None:
        identity = np.eye(prime_n, dtype=np.complex128)
        inv_dft = dft_matrix(prime_n).conj().T
        for size1 in range(prime_n + 1):
            for cols1 in itertools.combinations(range(prime_n), size1):
                for size2 in range(prime_n - size1 + 1):
                    for cols2 in itertools.combinations(range(prime_n), size2):
                        stacked = np.concatenate([identity[:, list(cols1)], inv_dft[:, list(cols2)]], axis=1)
                        ok, ratio = _full_column_rank(stacked)
                        report.record(ok, detail=f'n={prime_n} S1={cols1} S2={cols2} ratio={ratio:.3e}')
    get_root_logger().info(report.to_text())
    return report


def shrinkage_suite(rng, n=256, m=64, support_size=1, trials=200):
    """Fraction of off-support real and imaginary parts of b1 that are exactly zero.

    The fraction must reach 1 - 4 exp(-m / (16 |S1|)) less three binomial
    standard deviations.
    """
    if m < 64 * support_size:
        get_root_logger().warning(f'm = {m} is below 64 |S1| = {64 * support_size}; the bound is not guaranteed.')
    rng = make_rng(rng)
    report = SuiteReport('shrinkage')
    zeros = total = 0
    for trial in range(trials):
        ens = make_ensemble(rng, m, n)
        support = SupportSet.from_indices(rng.choice(n, size=support_size, replace=False), n)
        signs = csgn(rng.standard_normal(support_size) + 1j * rng.standard_normal(support_size))
        s1 = least_squares_min_norm(restrict_columns(ens.A, support), signs)
        b1 = shrink_b(ens.A.conj().T @ s1, support, 1.)
        off = support.complement().array
        zeros += int(np.sum(b1[off].real == 0) + np.sum(b1[off].imag == 0))
        total += 2 * off.size

    bound = 1. - 4. * np.exp(-m / (16. * support_size))
    sigma = np.sqrt(max(bound, 0.) * (1. - max(bound, 0.)) / total)
    fraction = zeros / total
    report.record(fraction >= bound - 3. * sigma, detail=f'zero fraction {fraction:.4f} below {bound - 3 * sigma:.4f}')
    report.stats.update({'zero_fraction': fraction, 'bound': bound, 'sigma': sigma, 'parts': total})
    get_root_logger().info(report.to_text())
    return report


def periodic_supports(n, period, rng, num_random_unions=32):
    """Supports that are unions of residue classes mod ``period``.

    All 2**period unions when there are at most 256 of them; otherwise the
    empty set, every single class, the full set and ``num_random_unions``
    random unions, so the identities are then checked on a sample only.
    """
    if 2**period <= MAX_ENUMERATED_SUBSETS:
        for size in range(period + 1):
            for classes in itertools.combinations(range(period), size):
                yield residue_class_support(n, period, classes)
        return
    yield SupportSet((), n)
    for r in range(period):
        yield residue_class_support(n, period, [r])
    yield SupportSet.full(n)
    for _ in range(num_random_unions):
        classes = np.flatnonzero(rng.integers(0, 2, size=period))
        yield residue_class_support(n, period, classes.tolist())


def _check_projector(report, proj, support_dim, n, period, row_support, row_support_label):
    """Claims for one restricted projector: residue structure, row norms, support blocks."""
    idx = np.arange(n)
    off_class = (idx[:, None] - idx[None, :]) % period != 0
    err = float(np.max(np.abs(proj[off_class]), initial=0.))
    report.record(err <= IDENTITY_TOL, err, f'n={n} period={period}: entry {err:.3e} outside residue classes')
    row_norms = np.sum(np.abs(proj)**2, axis=1)
    err = float(np.max(np.abs(row_norms - support_dim / n)))
    report.record(err <= IDENTITY_TOL, err, f'n={n} period={period}: row norm off by {err:.3e}')
    for support in row_support:
        block = proj[np.ix_(support.array, support.complement().array)]
        err = float(np.max(np.abs(block), initial=0.))
        report.record(err <= IDENTITY_TOL, err, f'n={n} {row_support_label}={support.indices}: leakage {err:.3e}')


def dft_identity_suite(n_values=(4, 8, 9, 12, 16, 36, 64), seed=0):
    """Check the DFT identities for every divisor n1 of every n and all periodic support pairs.

    Periods with more than 256 residue-class unions are sampled (see
    ``periodic_supports``); ``report.stats['sampled_periods']`` lists them.
    """
    rng = make_rng(seed)
    report = SuiteReport('dft_identity')
    sampled = []
    for n in n_values:
        sampled.extend(f'n={n} period={p}' for p in range(1, n + 1) if n % p == 0 and 2**p > MAX_ENUMERATED_SUBSETS)
        for n1 in (d for d in range(1, n + 1) if n % d == 0):
            supports_time = list(periodic_supports(n, n1, rng))
            supports_freq = list(periodic_supports(n, n // n1, rng))
            for support_freq in supports_freq:
                # D* I_S2 D with S2 (n / n1)-periodic, against n1-periodic S1
                proj = restricted_dft_projector(support_freq.mask, adjoint_first=True)
                _check_projector(report, proj, len(support_freq), n, n1, supports_time, 'S1')
            for support_time in supports_time:
                # D I_S1 D* with S1 n1-periodic, against (n / n1)-periodic S2
                proj = restricted_dft_projector(support_time.mask, adjoint_first=False)
                _check_projector(report, proj, len(support_time), n, n // n1, supports_freq, 'S2')
    report.stats['sampled_periods'] = sampled
    get_root_logger().info(report.to_text())
    return report
