"""Dual certificates for joint time and frequency sparsity.

Given x with time support S1 and frequency support S2, the candidate is built
in four steps:

    s1 = A_S1 (A_S1* A_S1)^-1 sgn(x)_S1          y1 = A* s1
    s2 = B_S2 (B_S2* B_S2)^-1 lam sgn(Dx)_S2     y2 = D A* s2
    b1, b2 = shrink_b(y1, S1, 1), shrink_b(y2, S2, lam)
    c1 = D* I_S2 D b1,  c2 = D I_S1 D* b2
    s  = D*(b2 - c2) - (b1 - c1)

and x is certified as the unique optimum when v1 = y1 + s and v2 = y2 - D s
match the signs on the supports and stay strictly below 1 and lam off them.
"""
from dataclasses import dataclass

import numpy as np

from jointsparse.data import check_invertibility_on, csgn, intersection_basis, is_periodic_support, restrict_columns
from jointsparse.ops import apply_dft, least_squares_min_norm

EQ_TOL = 1e-8
STRICT_MARGIN = 1e-8
SUPPORT_EQ_TOL = 1e-9


def _sup_norm(v):
    return float(np.max(np.abs(v))) if v.size else 0.


def build_s_candidates(ens, signal, lam):
    """Minimum-norm s1, s2 matching the signs on the supports.

    Returns:
        tuple[ndarray]: (s1, s2, y1, y2).

    Raises:
        RankDeficientError: If A_S1 or B_S2 lacks full column rank.
    """
    s1 = least_squares_min_norm(restrict_columns(ens.A, signal.support_time), csgn(signal.x)[signal.support_time.array])
    s2 = least_squares_min_norm(
        restrict_columns(ens.B, signal.support_freq), lam * csgn(signal.spectrum)[signal.support_freq.array])
    y1 = ens.A.conj().T @ s1
    y2 = apply_dft(ens.A.conj().T @ s2)
    return s1, s2, y1, y2


def shrink_b(y, support, lam_i):
    """Shrink the off-support parts of ``y`` by lam_i / 4.

    Real and imaginary parts are treated independently: 0 on the support, 0
    where |part| <= lam_i / 4, part - lam_i sgn(part) / 4 elsewhere.
    """
    if not lam_i > 0:
        raise ValueError(f'Shrinkage weight must be positive, but got {lam_i}.')
    y = np.asarray(y, dtype=np.complex128)

    def _shrink(part):
        out = np.where(np.abs(part) > lam_i / 4., part - lam_i * np.sign(part) / 4., 0.)
        out[support.array] = 0.
        return out

    b = _shrink(y.real) + 1j * _shrink(y.imag)
    off = support.complement().array
    gap = y[off] - b[off]
    assert _sup_norm(gap.real) < lam_i / 2. + 1e-12 and _sup_norm(gap.imag) < lam_i / 2. + 1e-12, \
        'Shrinkage left an off-support part of size lam_i / 2 or more.'
    return b


@dataclass(frozen=True)
class DualCertificate:
    s1: np.ndarray
    s2: np.ndarray
    s: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    lam: float

    @property
    def v1(self):
        return self.y1 + self.s

    @property
    def v2(self):
        return self.y2 - apply_dft(self.s)


def compatible_periodic_supports(support_time, support_freq):
    """Whether S1 is n1-periodic and S2 is (n / n1)-periodic for some divisor n1 of n."""
    n = support_time.n
    for n1 in range(1, n + 1):
        if n % n1 == 0 and is_periodic_support(support_time, n1) and is_periodic_support(support_freq, n // n1):
            return True
    return False


def assemble_certificate(ens, signal, lam):
    """Build the full candidate (s1, s2, s) with its intermediate vectors.

    For compatible periodic supports the leakage vectors vanish on the
    supports, so v1 and v2 keep the sign pattern of s1 and s2 exactly; this
    is asserted.
    """
    s1, s2, y1, y2 = build_s_candidates(ens, signal, lam)
    support_time, support_freq = signal.support_time, signal.support_freq
    b1 = shrink_b(y1, support_time, 1.)
    b2 = shrink_b(y2, support_freq, lam)
    c1 = apply_dft(support_freq.mask * apply_dft(b1), inverse=True)
    c2 = apply_dft(support_time.mask * apply_dft(b2, inverse=True))
    s = apply_dft(b2 - c2, inverse=True) - (b1 - c1)
    cert = DualCertificate(s1, s2, s, y1, y2, b1, b2, c1, c2, lam)

    if compatible_periodic_supports(support_time, support_freq):
        scale = max(1., _sup_norm(y1), _sup_norm(y2))
        dev_time = _sup_norm(cert.v1[support_time.array] - y1[support_time.array])
        dev_freq = _sup_norm(cert.v2[support_freq.array] - y2[support_freq.array])
        assert dev_time <= SUPPORT_EQ_TOL * scale and dev_freq <= SUPPORT_EQ_TOL * scale, (
            f'Leakage on periodic supports: {dev_time:.3e} in time, {dev_freq:.3e} in frequency.')
    return cert


@dataclass(frozen=True)
class CertReport:
    """Numeric outcome of the five certificate conditions.

    Every ``slack_*`` is a margin that is positive when the condition holds:
    sign deviations are compared with 1e-8, off-support sup-norms with 1 and
    lam (strictly, by at least 1e-8), the smallest singular value of A on the
    intersection subspace with 1e-8.
    """
    sign_dev_time: float
    offsupport_time: float
    sign_dev_freq: float
    offsupport_freq: float
    sigma_min_intersection: float
    intersection_dim: int
    leakage_time: float
    leakage_freq: float
    lam: float

    @property
    def slack_cond1(self):
        return EQ_TOL - self.sign_dev_time

    @property
    def slack_cond2(self):
        return 1. - self.offsupport_time

    @property
    def slack_cond3(self):
        return EQ_TOL - self.sign_dev_freq

    @property
    def slack_cond4(self):
        return self.lam - self.offsupport_freq

    @property
    def slack_cond5(self):
        return float('inf') if self.intersection_dim == 0 else self.sigma_min_intersection - EQ_TOL

    @property
    def conditions(self):
        return (self.slack_cond1 >= 0, self.slack_cond2 >= STRICT_MARGIN, self.slack_cond3 >= 0,
                self.slack_cond4 >= STRICT_MARGIN, self.slack_cond5 > 0)

    @property
    def passed(self):
        return all(self.conditions)

    @property
    def leakage_bounds(self):
        """Sufficient bounds: leakage_time <= 1/2 and leakage_freq <= lam / 2."""
        return self.leakage_time <= 0.5, self.leakage_freq <= self.lam / 2.

    def to_row(self):
        return {
            'cond1': self.slack_cond1,
            'cond2': self.slack_cond2,
            'cond3': self.slack_cond3,
            'cond4': self.slack_cond4,
            'cond5': self.slack_cond5,
            'leak_time': 0.5 - self.leakage_time,
            'leak_freq': self.lam / 2. - self.leakage_freq,
            'pass': self.passed
        }

    def to_text(self):
        names = ('sign match on S1', 'off-S1 sup-norm < 1', 'sign match on S2', 'off-S2 sup-norm < lambda',
                 'A invertible on intersection')
        values = (self.sign_dev_time, self.offsupport_time, self.sign_dev_freq, self.offsupport_freq,
                  self.sigma_min_intersection)
        lines = [f'Certificate (lambda = {self.lam:.6g}): {"PASS" if self.passed else "FAIL"}']
        for idx, (name, value, ok) in enumerate(zip(names, values, self.conditions), start=1):
            lines.append(f'\tcond{idx} {name:<30}: {value:.4e}\t{"ok" if ok else "violated"}')
        lines.append(f'\tintersection dimension: {self.intersection_dim} (invertibility tolerance {EQ_TOL:g})')
        time_ok, freq_ok = self.leakage_bounds
        lines.append(f'\tleakage time {self.leakage_time:.4e} <= 0.5: {time_ok}')
        lines.append(f'\tleakage freq {self.leakage_freq:.4e} <= {self.lam / 2.:.4g}: {freq_ok}')
        return '\n'.join(lines)


def verify_certificate(cert, ens, signal, lam, intersection=None):
    """Evaluate the five uniqueness conditions and the leakage bounds.

    Args:
        cert (DualCertificate): Candidate to check.
        ens (SensingEnsemble): Measurement ensemble.
        signal (Signal): Ground truth.
        lam (float): Frequency weight.
        intersection (SubspaceBasis | None): Basis of the vectors supported
            on S1 in time and S2 in frequency. Computed when None.

    Returns:
        CertReport: Measured values; ``passed`` is the verdict.
    """
    support_time, support_freq = signal.support_time, signal.support_freq
    in1, out1 = support_time.array, support_time.complement().array
    in2, out2 = support_freq.array, support_freq.complement().array
    v1, v2 = cert.v1, cert.v2
    if intersection is None:
        intersection = intersection_basis(support_time, support_freq, signal.n)
    invertibility = check_invertibility_on(ens.A, intersection, EQ_TOL)

    dft_b1 = apply_dft(cert.b1)
    idft_b2 = apply_dft(cert.b2, inverse=True)
    return CertReport(
        sign_dev_time=_sup_norm(v1[in1] - csgn(signal.x)[in1]),
        offsupport_time=_sup_norm(v1[out1]),
        sign_dev_freq=_sup_norm(v2[in2] - lam * csgn(signal.spectrum)[in2]),
        offsupport_freq=_sup_norm(v2[out2]),
        sigma_min_intersection=invertibility.sigma_min,
        intersection_dim=intersection.dim,
        leakage_time=_sup_norm(cert.c1[out1]) + _sup_norm(idft_b2[out1]),
        leakage_freq=_sup_norm(cert.c2[out2]) + _sup_norm(dft_b1[out2]),
        lam=float(lam))


def certify(ens, signal, lam):
    """Assemble and verify in one call; returns (certificate, report)."""
    cert = assemble_certificate(ens, signal, lam)
    return cert, verify_certificate(cert, ens, signal, lam)
