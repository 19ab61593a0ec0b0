from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vallab.scalar import (
    SQRT2,
    CauchyFunctional,
    QuadScalar,
    as_scalar,
    cauchy_apply,
    format_scalar,
    parse_scalar,
    quad_add,
    quad_sign,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
quads = st.builds(QuadScalar, fractions, fractions)


def test_quad_add_examples():
    assert quad_add(QuadScalar(1, 1), QuadScalar(2, -3)) == QuadScalar(3, -2)
    x = QuadScalar(F(2, 7), F(-1, 3))
    assert quad_add(x, QuadScalar(0, 0)) == x
    assert quad_add(QuadScalar(F(1, 2)), QuadScalar(F(1, 3))) == F(5, 6)


def test_quad_sign_examples():
    assert quad_sign(QuadScalar(3, -2)) == 1
    assert quad_sign(QuadScalar(0, 0)) == 0
    assert quad_sign(QuadScalar(1, -1)) == -1
    assert quad_sign(QuadScalar(-7, 5)) == 1
    assert quad_sign(QuadScalar(7, -5)) == -1


@settings(max_examples=300)
@given(quads)
def test_sign_matches_high_precision(x):
    with mpmath.workdps(50):
        approx = mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.sqrt(2) * mpmath.mpf(x.b.numerator) / x.b.denominator
        expected = 0 if x == 0 else (1 if approx > 0 else -1)
    assert quad_sign(x) == expected


@given(quads, quads)
def test_order_agrees_with_sign_of_difference(x, y):
    assert (x < y) == (quad_sign(y - x) == 1)


@given(quads, quads, quads)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x - y + y == x
    if y != 0:
        assert x / y * y == x
    assert x * x.conjugate() == x.norm()


def test_mixed_arithmetic_with_rationals():
    x = QuadScalar(F(1, 2), 1)
    assert x + 1 == QuadScalar(F(3, 2), 1)
    assert 1 + x == x + 1
    assert F(1, 2) - x == -SQRT2
    assert 2 * x == QuadScalar(1, 2)
    assert 1 / SQRT2 == QuadScalar(0, F(1, 2))
    assert SQRT2**2 == 2
    assert QuadScalar(F(3, 4)) == F(3, 4)
    assert hash(QuadScalar(F(3, 4))) == hash(F(3, 4))
    assert float(SQRT2) == pytest.approx(2**0.5)
    assert abs(QuadScalar(1, -1)) == QuadScalar(-1, 1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        SQRT2 / QuadScalar(0, 0)


def test_cauchy_examples():
    xi = CauchyFunctional(1, 0)
    assert cauchy_apply(xi, QuadScalar(3, -2)) == 3
    x, y = QuadScalar(1, 1), QuadScalar(2, -1)
    assert xi(x) + xi(y) == xi(x + y) == 3
    assert xi(SQRT2) == 0
    assert SQRT2 * xi(QuadScalar(1)) != xi(SQRT2)


@given(quads, quads, fractions, fractions, fractions)
def test_cauchy_additive_and_q_homogeneous(x, y, q, alpha, beta):
    xi = CauchyFunctional(alpha, beta)
    assert xi(x + y) == xi(x) + xi(y)
    assert xi(q * x) == q * xi(x)


def test_as_scalar_coercions():
    assert as_scalar(3) == F(3)
    assert as_scalar("2/6") == F(1, 3)
    assert as_scalar({"a": "1", "b": "1/2"}) == QuadScalar(1, F(1, 2))
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)


@given(st.one_of(fractions, quads))
def test_format_parse_round_trip(x):
    text = format_scalar(x)
    assert parse_scalar(text) == x


def test_format_styles():
    assert format_scalar(F(1, 6)) == "1/6"
    assert format_scalar(F(4, 2)) == "2"
    assert format_scalar(QuadScalar(0, 1)) == {"a": "0", "b": "1"}
    assert str(QuadScalar(1, -2)) == "1-2*sqrt2"
    assert str(SQRT2) == "sqrt2"
