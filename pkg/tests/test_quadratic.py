from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypiso.quadratic import QuadraticNumber, acosh_fraction, parse_rational, rational_sqrt

import math


def test_perfect_square_radicand_folds():
    assert QuadraticNumber(3, 1, 4) == QuadraticNumber(5)
    assert QuadraticNumber(0, Fraction(1, 2), Fraction(9, 4)).as_fraction() == Fraction(3, 4)


def test_cross_field_equality():
    # 2*sqrt(2) == sqrt(8) despite different radicands
    assert QuadraticNumber(0, 2, 2) == QuadraticNumber(0, 1, 8)
    assert QuadraticNumber(1, 2, 2) != QuadraticNumber(1, 1, 7)
    assert QuadraticNumber(0, 1, 2) != QuadraticNumber(0, 1, 3)
    assert QuadraticNumber(0, 1, 2) != QuadraticNumber(0, -1, 2)
    assert QuadraticNumber(5) != QuadraticNumber(0, 1, 2)


def test_sign_logic():
    assert QuadraticNumber(3, -1, 2).sign() == 1
    assert QuadraticNumber(1, -1, 2).sign() == -1
    assert QuadraticNumber(-1, 1, 2).sign() == 1
    assert QuadraticNumber(2, -1, 4).sign() == 0
    assert QuadraticNumber(0, 0, 0).sign() == 0


def test_comparisons_against_rationals():
    x = QuadraticNumber(0, 1, 2)  # sqrt(2)
    assert x > 1 and x < 2 and x > Fraction(7, 5) and x < Fraction(3, 2)


def test_inverse_and_conjugate_product():
    x = QuadraticNumber(1, 2, 3)
    assert x * x.inverse() == QuadraticNumber(1)
    assert (QuadraticNumber(1, 1, 2) * QuadraticNumber(1, -1, 2)) == QuadraticNumber(-1)


def test_mixed_radicand_arithmetic_rejected():
    with pytest.raises(ValueError):
        QuadraticNumber(0, 1, 2) + QuadraticNumber(0, 1, 3)


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
radicands = st.sampled_from([Fraction(2), Fraction(3), Fraction(5), Fraction(7, 2)])


@given(rationals, rationals, rationals, rationals, radicands)
def test_field_axioms(a1, b1, a2, b2, d):
    x = QuadraticNumber(a1, b1, d)
    y = QuadraticNumber(a2, b2, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * (x - y) == x * x - y * y
    if y.sign() != 0:
        assert (x / y) * y == x


@given(rationals, rationals, radicands)
def test_sign_matches_float(a, b, d):
    x = QuadraticNumber(a, b, d)
    approx = float(x)
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)


def test_acosh_fraction_small_and_huge():
    assert acosh_fraction(Fraction(1)) == 0.0
    assert abs(acosh_fraction(Fraction(17, 8)) - math.log(4)) < 1e-12
    huge = Fraction(10**400)
    expected = math.log(2) + 400 * math.log(10)
    assert abs(acosh_fraction(huge) - expected) < 1e-9


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == Fraction(7)
    with pytest.raises(ValueError):
        parse_rational("1/0")
