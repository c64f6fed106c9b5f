import numpy as np


def make_rng(seed):
    """Build the random generator used everywhere in the package.

    Identical seeds give identical streams across runs and platforms
    (PCG64 bit generator).
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(master_seed, *keys):
    """Derive an independent child seed from a master seed and integer keys.

    Child seeds depend only on ``(master_seed, keys)``, never on execution order.

    Returns:
        int: Non-negative seed below 2**63, so it fits an int64 column.
    """
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(seq.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def gaussian_matrix(rng, m, n, variance=1.0):
    """i.i.d. circular complex Gaussian matrix.

    Real and imaginary parts are independent N(0, variance / 2), so each
    complex entry has total variance ``variance``.
    """
    if m < 1 or n < 1:
        raise ValueError(f'Matrix shape must be positive, but got ({m}, {n}).')
    if variance <= 0:
        raise ValueError(f'Variance must be positive, but got {variance}.')
    rng = make_rng(rng)
    scale = np.sqrt(variance / 2.)
    real = rng.standard_normal((m, n))
    imag = rng.standard_normal((m, n))
    return scale * (real + 1j * imag)


def gaussian_vector(rng, n, variance=1.0):
    return gaussian_matrix(rng, 1, n, variance)[0]
