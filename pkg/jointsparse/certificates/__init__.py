from .dual_certificate import (CertReport, DualCertificate, assemble_certificate, build_s_candidates, certify,
                               compatible_periodic_supports, shrink_b, verify_certificate)
from .matrix_certificate import (MatrixCert, MatrixCertReport, build_matrix_certificate, matrix_intersection_basis,
                                 tangent_complement_matrix, verify_matrix_certificate)
from .nullspace_probe import NullspaceReport, null_space_lhs, nullspace_probe

__all__ = [
    # dual_certificate.py
    'DualCertificate',
    'CertReport',
    'build_s_candidates',
    'shrink_b',
    'assemble_certificate',
    'verify_certificate',
    'certify',
    'compatible_periodic_supports',
    # matrix_certificate.py
    'MatrixCert',
    'MatrixCertReport',
    'build_matrix_certificate',
    'verify_matrix_certificate',
    'matrix_intersection_basis',
    'tangent_complement_matrix',
    # nullspace_probe.py
    'NullspaceReport',
    'null_space_lhs',
    'nullspace_probe',
]
