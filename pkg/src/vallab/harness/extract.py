"""Recover classification data from a black-box valuation.

Everything is read off simplices.  On polytopes containing o:

* ``c0`` from the segment ``[o, e_1]`` and ``c0'`` from ``{o}``;
* ``c_{n-1}`` from the slope of ``t -> Z(T^{n-1})(t e_n)``, whose only
  non-constant part is ``c_{n-1} V_1(T^{n-1}, [-te_n, te_n]) = c_{n-1} 2|t|/n!``;
* ``eta(t) = n! (Z(T^n)(t e_n) - c0 - c_{n-1} 2|t|/n!)`` for t != 0, and
  ``eta(0)`` from the off-axis point ``e_1 - e_2``.

On all polytopes, the same recipe applied to the o-free simplices
``s[e_1, ..., e_d]`` isolates the ``[o, P]`` part.  Only the rational
(measurable) component of zeta is recovered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..measures import projection_mixed
from ..polytope import Polytope, hull, simplex
from ..valuations import ClassificationData, SampledFunction, ZetaSpec
from .checks import BlackBoxValuation, CheckReport

__all__ = ["NotClassifiable", "default_grid", "extract_classification", "round_trip"]


class NotClassifiable(ValueError):
    """The valuation violates a property every classified valuation has."""

    def __init__(self, message: str, witness: dict) -> None:
        super().__init__(message)
        self.witness = witness


def default_grid() -> list[Fraction]:
    return [Fraction(k, 4) for k in range(-12, 13)]


def _e(n: int, i: int, c=1) -> tuple:
    return tuple(Fraction(c) if k == i else Fraction(0) for k in range(n))


def _facet_simplex(d: int, n: int, s=1) -> Polytope:
    """``s[e_1, ..., e_d]`` (``{o}``-free), or the empty set for d = 0."""
    if d == 0:
        return Polytope.empty(n)
    return hull([_e(n, i, s) for i in range(d)], n=n)


_PROBES = [Fraction(1), Fraction(2), Fraction(3, 2), Fraction(-1), Fraction(-5, 3), Fraction(1, 3)]


@dataclass
class _Part:
    """Constants and eta read off one family of simplices."""

    c0: Fraction
    c0_prime: Fraction
    c_nm1: Fraction
    eta: SampledFunction
    details: dict = field(default_factory=dict)


def _read_family(Z, n: int, simplex_of, origin_value, label: str, grid) -> _Part:
    """``simplex_of(d, s)`` plays the role of ``sT^d``; ``origin_value`` is its
    value at d = 0."""
    en = lambda t: _e(n, n - 1, t)  # noqa: E731
    c0 = Z(simplex_of(1, 1), en(1))
    c0p = origin_value - c0
    lower = simplex_of(n - 1, 1)
    base = Z(lower, en(1)) - c0
    c_nm1 = base * factorial(n) / 2
    for t in _PROBES:
        got = Z(lower, en(t)) - c0
        want = base * abs(t)
        if got != want:
            raise NotClassifiable(
                f"{label}: lower-dimensional part is not c|t|",
                {"t": str(t), "value": str(got), "expected": str(want)},
            )
    top = simplex_of(n, 1)
    nf = factorial(n)
    e12 = tuple(Fraction(1) if k == 0 else Fraction(-1) if k == 1 else Fraction(0) for k in range(n))
    proj12 = projection_mixed(simplex(n, n), e12)

    def eta(t):
        t = Fraction(t)
        if t == 0:
            return nf * (Z(top, e12) - c0 - c_nm1 * proj12)
        return nf * (Z(top, en(t)) - c0 - c_nm1 * 2 * abs(t) / nf)

    sampled = SampledFunction(eta, grid, name=f"eta[{label}]")
    # rational homogeneity in the volume argument: Z(sT^n)(s t e_n)
    for s in (Fraction(2), Fraction(1, 2)):
        for t in (Fraction(1), Fraction(-2)):
            got = Z(simplex_of(n, s), en(s * t)) - c0 - c_nm1 * 2 * abs(t) * s**n / nf
            want = sampled(t) * s**n / nf
            if got != want:
                raise NotClassifiable(
                    f"{label}: zeta(t, .) is not additive in the volume argument",
                    {"s": str(s), "t": str(t), "value": str(got), "expected": str(want)},
                )
    return _Part(c0, c0p, c_nm1, sampled, {"c0": c0, "c0_prime": c0p, "c_nm1": c_nm1})


def extract_classification(Z: BlackBoxValuation, n: int = 3, mode: str | None = None, grid: Sequence | None = None) -> ClassificationData:
    """Read ``ClassificationData`` off ``Z``.

    ``mode`` ``"o"`` uses only simplices with a vertex at o; ``"all"`` also
    uses ``s[e_1, ..., e_d]``.  Defaults to the valuation's declared domain.
    Raises :class:`NotClassifiable` with a witness if a sampled identity fails.
    """
    if n < 3:
        raise ValueError("extraction needs n >= 3")
    mode = mode or Z.domain
    grid = default_grid() if grid is None else list(grid)
    origin = hull([tuple(Fraction(0) for _ in range(n))], n=n)
    en1 = _e(n, n - 1, 1)
    full = _read_family(Z, n, lambda d, s: simplex(d, n, s), Z(origin, en1), "o", grid)
    if mode == "o":
        return ClassificationData(
            zeta1=ZetaSpec(full.eta), c_nm1=full.c_nm1, c0=full.c0, c0_prime=full.c0_prime
        )
    if mode != "all":
        raise ValueError(f"unknown mode {mode!r}")
    # Z restricted to o-free facet simplices: Z(s[e_1..e_d]) behaves like a
    # valuation W on sT^d with W{o} = 0.
    free = _read_family(Z, n, lambda d, s: _facet_simplex(d, n, s), Fraction(0), "o-free", grid)
    gap = full.c_nm1 - free.c_nm1
    eta2 = SampledFunction(lambda t: free.eta(t) - 2 * gap * abs(Fraction(t)), grid, name="eta2")
    eta1 = SampledFunction(lambda t: full.eta(t) - eta2(t), grid, name="eta1")
    return ClassificationData(
        zeta1=ZetaSpec(eta1),
        zeta2=ZetaSpec(eta2),
        c_nm1=gap,
        c_nm1_tilde=free.c_nm1,
        c0=free.c0,
        c0_prime=full.c0_prime,
        c0_tilde=full.c0 - free.c0,
    )


def round_trip(Z: BlackBoxValuation, rebuilt: BlackBoxValuation, polytopes: Sequence, xs_for, report: CheckReport | None = None) -> CheckReport:
    """Compare ``Z`` and ``rebuilt`` on each polytope at ``xs_for(P)``."""
    report = report or CheckReport("extraction")
    for P in polytopes:
        report.trials += 1
        for x in xs_for(P):
            report.compare(rebuilt(P, x), Z(P, x), {"P": P, "x": x})
    return report
