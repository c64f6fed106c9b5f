import numpy as np
import pytest

from jointsparse.data import SupportSet, csgn, is_periodic_support, residue_class_support


def test_csgn():
    """Test csgn: unit modulus on nonzeros, 0 at 0"""

    out = csgn(np.array([3 + 4j, 0, -2, 1e-300j]))
    np.testing.assert_allclose(out, [0.6 + 0.8j, 0, -1, 1j])
    assert csgn(0) == 0
    assert isinstance(csgn(2j), complex)
    assert csgn(2j) == 1j


def test_support_set():
    """Test SupportSet: construction, complement and validation"""

    support = SupportSet.from_indices([3, 0, 3, 1], 5)
    assert support.indices == (0, 1, 3)
    assert len(support) == 3
    assert 3 in support and 2 not in support
    assert list(support) == [0, 1, 3]
    np.testing.assert_array_equal(support.mask, [True, True, False, True, False])
    assert support.complement().indices == (2, 4)
    assert SupportSet.from_mask(support.mask) == support
    assert len(SupportSet.full(4)) == 4
    assert len(SupportSet((), 3).complement()) == 3

    with pytest.raises(ValueError):
        SupportSet((1, 0), 3)
    with pytest.raises(ValueError):
        SupportSet((0, 3), 3)
    with pytest.raises(ValueError):
        SupportSet((), 0)


def test_is_periodic_support():
    """Test is_periodic_support: residue classes, non-divisors and bad periods"""

    n = 12
    assert is_periodic_support(residue_class_support(n, 4, [1, 3]), 4)
    assert is_periodic_support(SupportSet((), n), 3)
    assert is_periodic_support(SupportSet.full(n), 1)
    assert not is_periodic_support(SupportSet((0, 4), n), 4)
    # 5 does not divide 12
    assert not is_periodic_support(SupportSet((0, 5, 10), n), 5)

    with pytest.raises(ValueError):
        is_periodic_support(SupportSet((0, ), n), 0)
    with pytest.raises(ValueError):
        is_periodic_support(SupportSet((0, ), n), 13)


def test_residue_class_support():
    """Test residue_class_support: negative residues wrap around"""

    support = residue_class_support(8, 4, [-1])
    assert support.indices == (3, 7)
    with pytest.raises(ValueError):
        residue_class_support(8, 3, [0])
