"""Function-valued SL(n) contravariant valuations on polytopes.

The building block is

    Pi_zeta(P)(x) = sum over facets u with h_P(u) != 0 of
                    zeta( x.u / h_P(u), V_P(u) )

where ``zeta(t, .)`` is additive and ``zeta(., s)`` continuous.  Facet normals
are primitive integer vectors; the ratio ``x.u / h_P(u)`` does not depend on
the scaling of ``u``.

``zeta`` is realised as ``zeta(t, a + b*sqrt2) = eta_a(t)*a + eta_b(t)*b``.
Over Q this is ``eta_a(t)*s``; over Q(sqrt 2) a nonzero ``eta_b`` (or an
``eta_b`` differing from ``sqrt2*eta_a``) gives an additive function of ``s``
that is not R-linear.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .linalg import dot
from .measures import projection_mixed, volume
from .polytope import Polytope, contains_origin, contains_origin_relint, euler
from .scalar import QuadScalar, Scalar, as_scalar, scalar_sign

__all__ = [
    "AbsPower",
    "ClassificationData",
    "DomainError",
    "MinusPower",
    "PlusPower",
    "Polynomial",
    "SampledFunction",
    "Table",
    "UnaryFunction",
    "ZERO",
    "ZERO_ZETA",
    "ZetaSpec",
    "euler_hit",
    "euler_local",
    "pi_zeta",
    "pi_zeta_tilde",
    "z_homogeneous",
    "z_origin",
    "z_general",
]


class DomainError(ValueError):
    """Input outside the domain of the valuation (e.g. o not in P, or x = o)."""


def as_vector(x: Sequence, n: int | None = None) -> tuple:
    v = tuple(as_scalar(c) for c in x)
    if n is not None and len(v) != n:
        raise ValueError(f"vector of length {len(v)} in R^{n}")
    return v


def _is_zero(x) -> bool:
    return all(c == 0 for c in x)


# --- unary functions -------------------------------------------------------


class UnaryFunction:
    """Continuous function R -> R evaluated exactly on exact scalars when
    ``exact`` is true."""

    exact = True

    def __call__(self, t):
        raise NotImplementedError

    def __add__(self, other: UnaryFunction) -> UnaryFunction:
        return Sum((self, other))

    def __sub__(self, other: UnaryFunction) -> UnaryFunction:
        return Sum((self, Scaled(Fraction(-1), other)))

    def __rmul__(self, c) -> UnaryFunction:
        return Scaled(as_scalar(c), self)

    def __neg__(self) -> UnaryFunction:
        return Scaled(Fraction(-1), self)


@dataclass(frozen=True)
class Zero(UnaryFunction):
    def __call__(self, t):
        return Fraction(0)


ZERO = Zero()


@dataclass(frozen=True)
class Polynomial(UnaryFunction):
    """``coeffs[0] + coeffs[1] t + coeffs[2] t^2 + ...``"""

    coeffs: tuple = (Fraction(0), Fraction(1))

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


def _power(base, p):
    if isinstance(p, int):
        return base**p
    return float(base) ** p


@dataclass(frozen=True)
class AbsPower(UnaryFunction):
    """``coef * |t|^p``"""

    p: int | float = 1
    coef: Scalar = Fraction(1)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, int)

    def __call__(self, t):
        a = -t if scalar_sign(t) < 0 else t
        return self.coef * _power(a, self.p)


@dataclass(frozen=True)
class PlusPower(UnaryFunction):
    """``coef * max(t, 0)^p``"""

    p: int | float = 1
    coef: Scalar = Fraction(1)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, int)

    def __call__(self, t):
        base = t if scalar_sign(t) > 0 else Fraction(0)
        return self.coef * _power(base, self.p)


@dataclass(frozen=True)
class MinusPower(UnaryFunction):
    """``coef * max(-t, 0)^p``"""

    p: int | float = 1
    coef: Scalar = Fraction(1)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, int)

    def __call__(self, t):
        base = -t if scalar_sign(t) < 0 else Fraction(0)
        return self.coef * _power(base, self.p)


@dataclass(frozen=True)
class Table(UnaryFunction):
    """Piecewise linear interpolation through sorted knots, constant beyond
    the ends.  Exact when knots and values are exact scalars."""

    ts: tuple
    values: tuple

    def __post_init__(self) -> None:
        if len(self.ts) != len(self.values) or not self.ts:
            raise ValueError("table needs matching, nonempty knots and values")
        if any(a >= b for a, b in zip(self.ts, self.ts[1:])):
            raise ValueError("table knots must be strictly increasing")

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.ts + self.values)

    def __call__(self, t):
        if not self.exact:
            return float(np.interp(float(t), [float(v) for v in self.ts], [float(v) for v in self.values]))
        ts, vs = self.ts, self.values
        if t <= ts[0]:
            return vs[0]
        if t >= ts[-1]:
            return vs[-1]
        k = bisect_right(ts, t)
        lo, hi = ts[k - 1], ts[k]
        return vs[k - 1] + (vs[k] - vs[k - 1]) * (t - lo) / (hi - lo)


@dataclass(frozen=True)
class Sum(UnaryFunction):
    terms: tuple

    @property
    def exact(self) -> bool:
        return all(f.exact for f in self.terms)

    def __call__(self, t):
        out = Fraction(0)
        for f in self.terms:
            out = out + f(t)
        return out


@dataclass(frozen=True)
class Scaled(UnaryFunction):
    c: Scalar
    f: UnaryFunction

    @property
    def exact(self) -> bool:
        return self.f.exact

    def __call__(self, t):
        return self.c * self.f(t)


class SampledFunction(UnaryFunction):
    """A function known only through a callable, memoized per argument.

    ``table`` holds the values seen so far (including any pre-sampled grid).
    """

    def __init__(self, func: Callable, grid=(), name: str = "sampled") -> None:
        self.func = func
        self.name = name
        self.table: dict = {}
        for t in grid:
            self(t)

    def __call__(self, t):
        key = t
        if key not in self.table:
            self.table[key] = self.func(t)
        return self.table[key]

    def __repr__(self) -> str:
        return f"SampledFunction({self.name}, {len(self.table)} samples)"


# --- zeta ------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaSpec:
    """``zeta(t, a + b*sqrt2) = eta_a(t)*a + eta_b(t)*b``."""

    eta_a: UnaryFunction = ZERO
    eta_b: UnaryFunction = ZERO

    @property
    def exact(self) -> bool:
        return self.eta_a.exact and self.eta_b.exact

    def __call__(self, t, s):
        if isinstance(s, QuadScalar):
            out = self.eta_a(t) * s.a if s.a else Fraction(0)
            if s.b:
                out = out + self.eta_b(t) * s.b
            return out
        if not s:
            return Fraction(0)
        return self.eta_a(t) * s

    def __add__(self, other: ZetaSpec) -> ZetaSpec:
        return ZetaSpec(self.eta_a + other.eta_a, self.eta_b + other.eta_b)

    def __sub__(self, other: ZetaSpec) -> ZetaSpec:
        return ZetaSpec(self.eta_a - other.eta_a, self.eta_b - other.eta_b)

    @classmethod
    def of(cls, eta: UnaryFunction) -> ZetaSpec:
        """``zeta(t, s) = eta(t) * s`` on both rational and sqrt2 parts."""
        return cls(eta, _sqrt2_times(eta))


def _sqrt2_times(eta: UnaryFunction) -> UnaryFunction:
    # eta(t) * (a + b sqrt2) = eta(t) a + (sqrt2 eta(t)) b
    return Scaled(QuadScalar(0, 1), eta)


ZERO_ZETA = ZetaSpec()


# --- valuations ------------------------------------------------------------


def pi_zeta(P: Polytope, zeta: Callable, x: Sequence, *, strict: bool = True):
    """``Pi_zeta(P)(x)``; ``strict`` rejects ``x = o``."""
    x = as_vector(x, P.ambient_dim)
    if strict and _is_zero(x):
        raise DomainError("x = o is outside C(R^n \\ {o})")
    total = Fraction(0)
    for f in P.facets:
        if f.support == 0:
            continue
        total = total + zeta(dot(x, f.normal) / f.support, f.cone_volume)
    return total


def pi_zeta_tilde(P: Polytope, zeta: Callable, x: Sequence, *, strict: bool = True):
    """``Pi_zeta([P, o])(x)``."""
    return pi_zeta(P.with_origin, zeta, x, strict=strict)


def euler_local(P: Polytope) -> int:
    """``(-1)^dim P`` if o lies in relint P, else 0."""
    if P.is_empty or not contains_origin_relint(P):
        return 0
    return -1 if P.dim % 2 else 1


def euler_hit(P: Polytope) -> int:
    return 1 if not P.is_empty and contains_origin(P) else 0


@dataclass
class ClassificationData:
    """Parameters of the classified valuations.

    Only ``zeta1``, ``c_nm1``, ``c0`` and ``c0_prime`` enter the
    origin-containing form; ``zeta2`` and the tilde constants are the extra
    terms on general polytopes.
    """

    zeta1: ZetaSpec = field(default_factory=ZetaSpec)
    zeta2: ZetaSpec = field(default_factory=ZetaSpec)
    c_nm1: Scalar = Fraction(0)
    c_nm1_tilde: Scalar = Fraction(0)
    c0: Scalar = Fraction(0)
    c0_prime: Scalar = Fraction(0)
    c0_tilde: Scalar = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("c_nm1", "c_nm1_tilde", "c0", "c0_prime", "c0_tilde"):
            setattr(self, name, as_scalar(getattr(self, name)))


def _proj_term(c, P: Polytope, x):
    if c == 0 or P.dim < P.ambient_dim - 1 or _is_zero(x):
        return Fraction(0)
    return c * projection_mixed(P, x)


def z_origin(P: Polytope, data: ClassificationData, x: Sequence, *, strict: bool = True):
    """``Pi_zeta(P)(x) + c_{n-1} V_1(P,[-x,x]) + c_0 V_0(P) + c_0' (-1)^dim V_0(o n relint P)``
    on polytopes containing the origin."""
    if P.is_empty or not contains_origin(P):
        raise DomainError("polytope must contain the origin")
    x = as_vector(x, P.ambient_dim)
    if strict and _is_zero(x):
        raise DomainError("x = o is outside C(R^n \\ {o})")
    return (
        pi_zeta(P, data.zeta1, x, strict=strict)
        + _proj_term(data.c_nm1, P, x)
        + data.c0 * euler(P)
        + data.c0_prime * euler_local(P)
    )


def z_general(P: Polytope, data: ClassificationData, x: Sequence, *, strict: bool = True):
    """The seven-term valuation on all polytopes:
    ``Pi_z1(P) + Pi_z2([o,P]) + c_{n-1} V_1(P) + c~_{n-1} V_1([o,P])
    + c_0 V_0(P) + c_0' (-1)^dim V_0(o n relint P) + c~_0 V_0(o n P)``."""
    x = as_vector(x, P.ambient_dim)
    if strict and _is_zero(x):
        raise DomainError("x = o is outside C(R^n \\ {o})")
    if P.is_empty:
        return Fraction(0)
    Po = P.with_origin
    return (
        pi_zeta(P, data.zeta1, x, strict=strict)
        + pi_zeta(Po, data.zeta2, x, strict=strict)
        + _proj_term(data.c_nm1, P, x)
        + _proj_term(data.c_nm1_tilde, Po, x)
        + data.c0 * euler(P)
        + data.c0_prime * euler_local(P)
        + data.c0_tilde * euler_hit(P)
    )


def _identity(v):
    return v


def z_homogeneous(
    P: Polytope,
    p,
    x: Sequence,
    xi1: Callable = _identity,
    xi2: Callable = _identity,
    xi3: Callable = _identity,
    c0=0,
    c0p=0,
    c_nm1=0,
):
    """The p-homogeneous contravariant valuations on polytopes containing o.

    p = 0:  xi3(V_n(P)) + c0 V_0(P) + c0' (-1)^dim V_0(o n relint P)
    p = 1:  sum (x.u/h)_+ xi1(V_P(u)) + (x.u/h)_- xi2(V_P(u)) + c_{n-1} V_1(P,[-x,x])
    else:   sum (x.u/h)_+^p xi1(V_P(u)) + (x.u/h)_-^p xi2(V_P(u))

    ``xi1, xi2, xi3`` are additive functions (e.g. ``CauchyFunctional``).
    Integer p is exact; other p are evaluated in floating point.
    """
    if p < 0:
        raise ValueError("homogeneity degree must be nonnegative")
    x = as_vector(x, P.ambient_dim)
    if _is_zero(x):
        raise DomainError("x = o is outside C(R^n \\ {o})")
    if p == 0:
        return xi3(volume(P)) + as_scalar(c0) * euler(P) + as_scalar(c0p) * euler_local(P)
    integral = float(p).is_integer()
    pp = int(p) if integral else float(p)
    total = Fraction(0) if integral else 0.0
    for f in P.facets:
        if f.support == 0:
            continue
        t = dot(x, f.normal) / f.support
        sgn = scalar_sign(t)
        if not integral:
            t = float(t)
        if sgn > 0:
            total = total + _power(t, pp) * (xi1(f.cone_volume) if integral else float(xi1(f.cone_volume)))
        elif sgn < 0:
            total = total + _power(-t, pp) * (xi2(f.cone_volume) if integral else float(xi2(f.cone_volume)))
    if pp == 1 and integral:
        total = total + _proj_term(as_scalar(c_nm1), P, x)
    return total

