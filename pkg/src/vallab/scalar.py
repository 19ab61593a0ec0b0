"""Exact scalars: rationals (``fractions.Fraction``) and the quadratic field Q(sqrt 2).

Every geometric quantity in the package is either a ``Fraction`` (or ``int``)
or a :class:`QuadScalar`.  Both support ``+ - * /``, exact comparison and
hashing, so the kernel is written once against this common surface.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from numbers import Rational
from typing import Union

__all__ = [
    "QuadScalar",
    "CauchyFunctional",
    "Scalar",
    "SQRT2",
    "as_scalar",
    "cauchy_apply",
    "format_scalar",
    "is_quad",
    "parse_scalar",
    "quad_add",
    "quad_sign",
    "scalar_sign",
    "to_float",
]


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


def _norm3(na: int, nb: int, den: int):
    if den < 0:
        na, nb, den = -na, -nb, -den
    g = gcd(na, nb, den)
    if g != 1:
        na, nb, den = na // g, nb // g, den // g
    return na, nb, den


def _raw(na: int, nb: int, den: int) -> QuadScalar:
    q = object.__new__(QuadScalar)
    q._na, q._nb, q._den = _norm3(na, nb, den)
    return q


@total_ordering
class QuadScalar:
    """The real number ``a + b*sqrt(2)`` with rational ``a`` and ``b``.

    Stored as integers ``(na + nb*sqrt2) / den`` with ``den > 0`` in lowest
    terms, which keeps arithmetic in plain ints.
    """

    __slots__ = ("_na", "_nb", "_den")

    def __init__(self, a=0, b=0) -> None:
        a, b = Fraction(a), Fraction(b)
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._na, self._nb, self._den = _norm3(
            a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den
        )

    @property
    def a(self) -> Fraction:
        return Fraction(self._na, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._nb, self._den)

    @property
    def is_rational(self) -> bool:
        return self._nb == 0

    def conjugate(self) -> QuadScalar:
        return _raw(self._na, -self._nb, self._den)

    def norm(self) -> Fraction:
        return Fraction(self._na * self._na - 2 * self._nb * self._nb, self._den * self._den)

    def sign(self) -> int:
        na, nb = self._na, self._nb
        sa, sb = _sgn(na), _sgn(nb)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and 2 b^2 wins
        return sa * _sgn(na * na - 2 * nb * nb)

    def __repr__(self) -> str:
        return f"QuadScalar({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        coef = abs(b)
        root = "sqrt2" if coef == 1 else f"{coef}*sqrt2"
        if a == 0:
            return root if b > 0 else f"-{root}"
        op = "+" if b > 0 else "-"
        return f"{a}{op}{root}"

    def __float__(self) -> float:
        return (self._na + self._nb * 1.4142135623730951) / self._den

    def __bool__(self) -> bool:
        return bool(self._na) or bool(self._nb)

    def __hash__(self) -> int:
        if self._nb == 0:
            return hash(Fraction(self._na, self._den))
        return hash((self._na, self._nb, self._den))

    @staticmethod
    def _triple(other):
        if isinstance(other, QuadScalar):
            return other._na, other._nb, other._den
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Rational):
            return other.numerator, 0, other.denominator
        return None

    def __eq__(self, other) -> bool:
        o = self._triple(other)
        if o is None:
            return NotImplemented
        return self._na == o[0] and self._nb == o[1] and self._den == o[2]

    def __lt__(self, other) -> bool:
        o = self._triple(other)
        if o is None:
            return NotImplemented
        return (self - _raw(*o)).sign() < 0

    def __neg__(self) -> QuadScalar:
        return _raw(-self._na, -self._nb, self._den)

    def __pos__(self) -> QuadScalar:
        return self

    def __abs__(self) -> QuadScalar:
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        oa, ob, od = o
        d = self._den
        if d == od:
            return _raw(self._na + oa, self._nb + ob, d)
        return _raw(self._na * od + oa * d, self._nb * od + ob * d, d * od)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        oa, ob, od = o
        d = self._den
        if d == od:
            return _raw(self._na - oa, self._nb - ob, d)
        return _raw(self._na * od - oa * d, self._nb * od - ob * d, d * od)

    def __rsub__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        return _raw(*o) - self

    def __mul__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        oa, ob, od = o
        na, nb = self._na, self._nb
        if ob == 0:
            return _raw(na * oa, nb * oa, self._den * od)
        return _raw(na * oa + 2 * nb * ob, na * ob + nb * oa, self._den * od)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        oa, ob, od = o
        if ob == 0:
            if oa == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return _raw(self._na * od, self._nb * od, self._den * oa)
        # x / (oa + ob sqrt2)/od = x * od * (oa - ob sqrt2) / (oa^2 - 2 ob^2);
        # the norm vanishes only for 0 since sqrt2 is irrational
        nrm = oa * oa - 2 * ob * ob
        na, nb = self._na, self._nb
        return _raw((na * oa - 2 * nb * ob) * od, (nb * oa - na * ob) * od, self._den * nrm)

    def __rtruediv__(self, other):
        o = self._triple(other)
        if o is None:
            return NotImplemented
        return _raw(*o) / self

    def __pow__(self, k: int) -> QuadScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadScalar(1) / (self ** (-k))
        result = _raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


SQRT2 = QuadScalar(0, 1)

Scalar = Union[int, Fraction, QuadScalar]


def is_quad(x) -> bool:
    return isinstance(x, QuadScalar)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, QuadScalars and "p/q" strings to an exact scalar."""
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, dict):
        return QuadScalar(Fraction(x["a"]), Fraction(x["b"]))
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars; pass a string or Fraction")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def scalar_sign(x) -> int:
    if isinstance(x, QuadScalar):
        return x.sign()
    return _sgn(x)


def to_float(x) -> float:
    return float(x)


def quad_add(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    return x + y


def quad_sign(x: QuadScalar) -> int:
    """Exact sign of ``a + b*sqrt(2)``: -1, 0 or +1."""
    return x.sign()


class CauchyFunctional:
    """Additive map ``a + b*sqrt2 -> alpha*a + beta*b`` on Q(sqrt 2).

    It is Q-linear, but for ``beta != alpha*sqrt2`` (always, since both are
    rational unless zero) it is not the restriction of an R-linear map.
    On plain rationals it acts as multiplication by ``alpha``.
    """

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha=1, beta=0) -> None:
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)

    def __call__(self, x):
        if isinstance(x, QuadScalar):
            return QuadScalar(self.alpha * x.a + self.beta * x.b, 0)
        return self.alpha * x

    def __repr__(self) -> str:
        return f"CauchyFunctional(alpha={self.alpha}, beta={self.beta})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CauchyFunctional):
            return NotImplemented
        return (self.alpha, self.beta) == (other.alpha, other.beta)

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta))


def cauchy_apply(xi: CauchyFunctional, x: QuadScalar) -> QuadScalar:
    if not isinstance(x, QuadScalar):
        x = QuadScalar(x)
    return xi(x)


def format_scalar(x):
    """Serialize: rationals as "p/q" strings, quad scalars as {"a", "b"} objects."""
    if isinstance(x, QuadScalar):
        return {"a": _frac_str(x.a), "b": _frac_str(x.b)}
    return _frac_str(Fraction(x))


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(obj) -> Scalar:
    if isinstance(obj, dict):
        return QuadScalar(Fraction(obj["a"]), Fraction(obj["b"]))
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ValueError(f"malformed scalar {obj!r}")
