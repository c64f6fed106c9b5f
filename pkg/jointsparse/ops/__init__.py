from .dft import apply_dft, dft_matrix, restricted_dft_projector
from .linalg import (NoConvergenceError, RankDeficientError, has_full_column_rank, least_squares_min_norm, null_space,
                     pseudo_inverse, sigma_min, singular_values, svd)
from .rng import derive_seed, gaussian_matrix, gaussian_vector, make_rng

__all__ = [
    # dft.py
    'dft_matrix',
    'apply_dft',
    'restricted_dft_projector',
    # linalg.py
    'svd',
    'singular_values',
    'sigma_min',
    'has_full_column_rank',
    'least_squares_min_norm',
    'pseudo_inverse',
    'null_space',
    'RankDeficientError',
    'NoConvergenceError',
    # rng.py
    'make_rng',
    'derive_seed',
    'gaussian_matrix',
    'gaussian_vector',
]
