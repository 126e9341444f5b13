from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permtutte.ratpoly import (
    BiPoly,
    format_poly,
    format_rational,
    parse_rational,
    poly_add,
    poly_coeff,
    poly_eval,
    poly_mul,
)
from permtutte.ratpoly import parse_poly

EXAMPLE_P5 = "2/15*x^3 + 4/15*x^2 + 1/3*x*y + 2/15*y^2 + 1/15*x + 1/15*y"

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=30)
polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), fractions, max_size=6
).map(BiPoly)


def test_rational_text_round_trip():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(-Fraction(1, 3)) == "-1/3"
    assert parse_rational("2.9243") == Fraction(29243, 10000)
    assert parse_rational(" 17/3 ") == Fraction(17, 3)
    with pytest.raises(ValueError):
        parse_rational("")
    with pytest.raises(ValueError):
        parse_rational("1/0x")


def test_format_matches_example_order():
    p = parse_poly(EXAMPLE_P5)
    assert format_poly(p) == EXAMPLE_P5
    assert p.coeff(1, 1) == Fraction(1, 3)


def test_zero_and_unit_rendering():
    assert format_poly(BiPoly()) == "0"
    assert format_poly(BiPoly.constant(1)) == "1"
    assert str(BiPoly({(2, 0): 1, (1, 0): 1, (0, 1): 1})) == "x^2 + x + y"
    assert str(BiPoly({(0, 1): -1})) == "-y"
    assert parse_poly("x - y") == BiPoly({(1, 0): 1, (0, 1): -1})


def test_zero_coefficients_are_pruned():
    p = BiPoly({(1, 0): 1}) - BiPoly({(1, 0): 1})
    assert p == BiPoly()
    assert len(p) == 0
    assert BiPoly({(3, 2): 0}).terms == {}


def test_module_functions():
    p = BiPoly({(1, 0): 1})
    q = BiPoly({(0, 1): 1})
    assert poly_add(p, q) == BiPoly({(1, 0): 1, (0, 1): 1})
    assert poly_mul(p + q, p + q) == BiPoly({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert poly_coeff(p, 1, 0) == 1
    assert poly_coeff(p, 5, 5) == 0
    with pytest.raises(ValueError):
        poly_coeff(p, -1, 0)
    assert poly_eval(parse_poly(EXAMPLE_P5), 2, 0) == Fraction(34, 15)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        BiPoly({(-1, 0): 1})


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == BiPoly()
    assert hash(p + q) == hash(q + p)


@given(polys, fractions, fractions)
def test_evaluation_is_a_homomorphism(p, x, y):
    q = p * p + p
    assert poly_eval(q, x, y) == poly_eval(p, x, y) ** 2 + poly_eval(p, x, y)
    assert poly_eval(p.swap(), y, x) == poly_eval(p, x, y)


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(polys, st.integers(0, 3))
def test_power(p, n):
    expected = BiPoly.constant(1)
    for _ in range(n):
        expected = expected * p
    assert p**n == expected
