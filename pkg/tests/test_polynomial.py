from fractions import Fraction

import pytest

from isoschubert.polynomial import ExactPolynomial as P


def x(i, n=3):
    return P.variable(i, n)


def test_arithmetic():
    f = (x(1) + x(2)) * (x(1) - x(2))
    assert f == x(1) ** 2 - x(2) ** 2
    assert (f - f).is_zero()
    assert f.degree() == 2 and f.is_homogeneous()
    assert (f + 1).constant_term() == 1
    assert not (f + x(3)).is_homogeneous()


def test_fractions_normalise():
    f = x(1).scale(Fraction(1, 2)) + x(1).scale(Fraction(1, 2))
    assert f == x(1)
    assert f.is_integral()
    assert not x(1).scale(Fraction(1, 3)).is_integral()


def test_no_zero_terms():
    f = P(2, {(1, 0): 0, (0, 1): 3})
    assert len(f) == 1


def test_substitute():
    f = x(1) * x(2) ** 2 + x(3)
    g = f.substitute_signed_permutation((-2, 1, 3))
    # x1 -> -x2, x2 -> x1
    assert g == -(x(2) * x(1) ** 2) + x(3)


def test_mismatch():
    with pytest.raises(ValueError):
        x(1, 2) + x(1, 3)
