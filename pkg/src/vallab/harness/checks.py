"""Identity checks for black-box valuations.

Every check compares two sides exactly when both are exact scalars; float
values (from non-integer powers or float tables) are compared with a relative
tolerance and mark the report as inexact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from ..linalg import LinearMap
from ..measures import projection_mixed, volume
from ..polytope import Hyperplane, Polytope, apply_linear, cut, hull, simplex
from ..scalar import QuadScalar, as_scalar, format_scalar
from ..valuations import ClassificationData, ZetaSpec, pi_zeta, z_origin

__all__ = [
    "BlackBoxValuation",
    "CheckReport",
    "FLOAT_RTOL",
    "check_contravariance",
    "check_dissection",
    "check_simplex_formula",
    "check_diagonal_limit",
    "check_simplicity",
    "check_valuation",
    "dissection_maps",
]

FLOAT_RTOL = 1e-9


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (Fraction, int, QuadScalar)):
        return format_scalar(v)
    if isinstance(v, Polytope):
        return {"n": v.ambient_dim, "vertices": [[format_scalar(c) for c in p] for p in v.vertices]}
    if isinstance(v, Hyperplane):
        return {"normal": [format_scalar(c) for c in v.normal], "offset": format_scalar(v.offset)}
    if isinstance(v, LinearMap):
        return [[format_scalar(c) for c in r] for r in v.matrix]
    if isinstance(v, (tuple, list)):
        return [_fmt(c) for c in v]
    if isinstance(v, dict):
        return {k if isinstance(k, str) else str(k): _fmt(c) for k, c in v.items()}
    return v


@dataclass
class CheckReport:
    """Outcome of a batch of identity checks.

    ``failures`` holds ``{"inputs", "lhs", "rhs"}`` records; ``controls``
    records, per negative control, whether it failed as it must and the
    witness that shows it.
    """

    suite: str
    trials: int = 0
    failures: list = field(default_factory=list)
    exact: bool = True
    seed: int | None = None
    skipped: list = field(default_factory=list)
    controls: dict = field(default_factory=dict)
    checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(c["failed_as_expected"] for c in self.controls.values())

    def compare(self, lhs, rhs, inputs: dict) -> bool:
        self.checked += 1
        ok = values_equal(lhs, rhs)
        if isinstance(lhs, float) or isinstance(rhs, float):
            self.exact = False
        if not ok:
            self.failures.append({"inputs": _fmt(inputs), "lhs": _fmt(lhs), "rhs": _fmt(rhs)})
        return ok

    def skip(self, reason: str, inputs: dict) -> None:
        self.skipped.append({"reason": reason, "inputs": _fmt(inputs)})

    def extend(self, other: CheckReport) -> CheckReport:
        self.trials += other.trials
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.skipped.extend(other.skipped)
        self.exact = self.exact and other.exact
        self.controls.update(other.controls)
        self.notes.extend(other.notes)
        return self

    def record_control(self, name: str, control: CheckReport) -> None:
        """A negative control passes when its own report has failures."""
        witness = control.failures[0] if control.failures else None
        self.controls[name] = {"failed_as_expected": bool(control.failures), "witness": witness}

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "checked": self.checked,
            "failures": self.failures,
            "n_failures": len(self.failures),
            "skipped": len(self.skipped),
            "exact": self.exact,
            "controls": self.controls,
            "passed": self.passed,
            "notes": self.notes,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def values_equal(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        fa, fb = float(a), float(b)
        return abs(fa - fb) <= FLOAT_RTOL * max(1.0, abs(fa), abs(fb))
    return a == b


@dataclass
class BlackBoxValuation:
    """A map ``(P, x) -> scalar``.  ``domain`` is ``"o"`` when the valuation is
    only defined on polytopes containing the origin, ``"all"`` otherwise.
    The empty set always evaluates to 0."""

    func: Callable
    domain: str = "all"
    name: str = "Z"

    def __call__(self, P: Polytope, x):
        if P.is_empty:
            return Fraction(0)
        return self.func(P, x)

    def accepts(self, P: Polytope) -> bool:
        return P.is_empty or self.domain == "all" or P.origin_status[0]


# several valuations are usually checked against the same cut
_cut = lru_cache(maxsize=16)(cut)


def check_valuation(Z: BlackBoxValuation, P: Polytope, H: Hyperplane, xs: Sequence, report: CheckReport | None = None) -> CheckReport:
    """``Z(P n H-) + Z(P n H+) = Z(P) + Z(P n H)`` at each x."""
    report = report or CheckReport("valuation")
    report.trials += 1
    minus, plus, mid = _cut(P, H)
    inputs = {"P": P, "H": H}
    if minus.is_empty or plus.is_empty:
        report.skip("cut misses one side", inputs)
        return report
    if not all(Z.accepts(Q) for Q in (P, minus, plus, mid)):
        report.skip("body outside the valuation's domain", inputs)
        return report
    for x in xs:
        lhs = Z(minus, x) + Z(plus, x)
        rhs = Z(P, x) + Z(mid, x)
        report.compare(lhs, rhs, {**inputs, "x": x, "Z": Z.name})
    return report


def check_contravariance(Z: BlackBoxValuation, P: Polytope, phi: LinearMap, xs: Sequence, report: CheckReport | None = None) -> CheckReport:
    """``Z(phi P)(x) = Z(P)(phi^{-1} x)``."""
    if phi.det != 1:
        raise ValueError("contravariance check needs a unimodular map")
    report = report or CheckReport("contravariance")
    report.trials += 1
    image = apply_linear(P, phi)
    inv = phi.inverse
    for x in xs:
        report.compare(Z(image, x), Z(P, inv(x)), {"P": P, "phi": phi, "x": x, "Z": Z.name})
    return report


def check_simplicity(Z: BlackBoxValuation, P: Polytope, xs: Sequence, report: CheckReport | None = None) -> CheckReport:
    """``Z(P)(x) = 0`` for lower-dimensional P."""
    report = report or CheckReport("simplicity")
    report.trials += 1
    if P.dim >= P.ambient_dim:
        report.skip("full-dimensional body", {"P": P})
        return report
    for x in xs:
        report.compare(Z(P, x), Fraction(0), {"P": P, "x": x, "Z": Z.name})
    return report


def _e(n: int, i: int, c=1) -> tuple:
    return tuple(as_scalar(c) if k == i else Fraction(0) for k in range(n))


def check_simplex_formula(zeta: Callable, s, t, n: int, report: CheckReport | None = None, valuation: Callable = pi_zeta) -> CheckReport:
    """``Pi_zeta(sT^n)(t e_n) = zeta(t/s, s^n/n!)``."""
    report = report or CheckReport("simplex")
    report.trials += 1
    s, t = as_scalar(s), as_scalar(t)
    lhs = valuation(simplex(n, n, s), zeta, _e(n, n - 1, t))
    rhs = zeta(t / s, s**n / factorial(n))
    report.compare(lhs, rhs, {"s": s, "t": t, "n": n})
    return report


def dissection_maps(lam, n: int) -> tuple[LinearMap, LinearMap]:
    """The two unimodular maps carrying T^d onto its pieces cut by
    ``x . ((1-lam) e_1 - lam e_2) = 0`` (for d <= n - 1)."""
    lam = as_scalar(lam)
    m1 = [[int(i == j) for j in range(n)] for i in range(n)]
    m2 = [[int(i == j) for j in range(n)] for i in range(n)]
    # columns are images of basis vectors
    m1[0][0], m1[1][0] = lam, 1 - lam
    m1[n - 1][n - 1] = 1 / lam
    m2[0][1], m2[1][1] = lam, 1 - lam
    m2[n - 1][n - 1] = 1 / (1 - lam)
    return LinearMap(m1), LinearMap(m2)


def _hat(d: int, n: int, s) -> Polytope:
    """``s[o, e_1, e_3, ..., e_d]``."""
    pts = [tuple(Fraction(0) for _ in range(n)), _e(n, 0, s)]
    pts += [_e(n, i, s) for i in range(2, d)]
    return hull(pts, n=n)


def check_dissection(
    zeta: Callable,
    s,
    t,
    lam,
    d: int,
    n: int = 3,
    data: ClassificationData | None = None,
    report: CheckReport | None = None,
) -> CheckReport:
    """Dissection of ``sT^d`` by ``H_lam = {x . ((1-lam)e_1 - lam e_2) = 0}``.

    For ``2 <= d <= n-1`` checks the simplex identity
    ``Z(sT^d)(te_n) + Z(sT^_{d-1})(lam t e_n) = Z(sT^d)(lam t e_n) + Z(sT^d)((1-lam) t e_n)``
    and the geometry behind it (pieces are images of ``sT^d`` under two
    unimodular maps).  For ``d = n`` the scaled-simplex form needs
    ``lam^{1/n}``, so the rational equivalent is checked instead: the cut
    valuation identity at ``t e_n`` and the closed forms
    ``Pi(sT^n n H-)(te_n) = zeta(t/s, lam s^n/n!)`` and
    ``Pi(sT^n n H+)(te_n) = zeta(t/s, (1-lam) s^n/n!)``.
    """
    s, t, lam = as_scalar(s), as_scalar(t), as_scalar(lam)
    if not (0 < lam < 1) or s <= 0 or t == 0 or not 2 <= d <= n:
        raise ValueError("need 0 < lam < 1, s > 0, t != 0 and 2 <= d <= n")
    report = report or CheckReport("dissection")
    report.trials += 1
    if data is None:
        data = ClassificationData(zeta1=zeta)
    else:
        data = ClassificationData(
            zeta1=zeta, c_nm1=data.c_nm1, c0=data.c0, c0_prime=data.c0_prime
        )

    def Z(P, x):
        return z_origin(P, data, x)

    def en(c):
        return _e(n, n - 1, c)

    inputs = {"s": s, "t": t, "lambda": lam, "d": d, "n": n}
    sT = simplex(d, n, s)
    H = Hyperplane(tuple([1 - lam, -lam] + [0] * (n - 2)), 0)
    minus, plus, mid = cut(sT, H)
    if d < n:
        phi1, phi2 = dissection_maps(lam, n)
        hat = _hat(d, n, s)
        report.compare(minus, apply_linear(sT, phi1), {**inputs, "piece": "H-"})
        report.compare(plus, apply_linear(sT, phi2), {**inputs, "piece": "H+"})
        report.compare(mid, apply_linear(hat, phi1), {**inputs, "piece": "H"})
        lhs = Z(sT, en(t)) + Z(hat, en(lam * t))
        rhs = Z(sT, en(lam * t)) + Z(sT, en((1 - lam) * t))
        report.compare(lhs, rhs, inputs)
        return report
    x = en(t)
    report.compare(Z(sT, x) + Z(mid, x), Z(minus, x) + Z(plus, x), {**inputs, "identity": "cut"})
    vol = s**n / factorial(n)
    report.compare(pi_zeta(minus, zeta, x), zeta(t / s, lam * vol), {**inputs, "identity": "H- closed form"})
    report.compare(pi_zeta(plus, zeta, x), zeta(t / s, (1 - lam) * vol), {**inputs, "identity": "H+ closed form"})
    report.compare(
        pi_zeta(sT, zeta, x),
        zeta(t / s, lam * vol) + zeta(t / s, (1 - lam) * vol),
        {**inputs, "identity": "split"},
    )
    return report


def check_diagonal_limit(zeta: Callable, s, r, n: int = 3, steps: int = 40, report: CheckReport | None = None) -> CheckReport:
    """Approach ``x_1 -> r`` in ``Pi_zeta(sT^n)(x_1 e_1 - r e_2)`` from both sides.

    Each sample must match ``zeta((x_1 - r)/s, s^n/n!)``; the on-point value
    must equal ``zeta(0, s^n/n!)``; the last samples on both sides must lie
    within 1e-9 of it.
    """
    s, r = as_scalar(s), as_scalar(r)
    if s <= 0 or r <= 0:
        raise ValueError("need s > 0 and r > 0")
    report = report or CheckReport("limit")
    report.trials += 1
    P = simplex(n, n, s)
    vol = s**n / factorial(n)

    def x_at(x1):
        v = [Fraction(0)] * n
        v[0], v[1] = x1, -r
        return tuple(v)

    center = pi_zeta(P, zeta, x_at(r))
    report.compare(center, zeta(Fraction(0), vol), {"s": s, "r": r, "x1": r})
    last = {}
    for side in (-1, 1):
        for k in range(1, steps + 1):
            x1 = r + side * r / 2**k
            val = pi_zeta(P, zeta, x_at(x1))
            report.compare(val, zeta((x1 - r) / s, vol), {"s": s, "r": r, "x1": x1})
            last[side] = val
    for side, val in last.items():
        gap = abs(float(val) - float(center))
        if gap > FLOAT_RTOL * max(1.0, abs(float(center))):
            report.failures.append(
                {"inputs": _fmt({"s": s, "r": r, "side": side}), "lhs": _fmt(val), "rhs": _fmt(center)}
            )
    return report


def volume_squared(P: Polytope, x):
    return volume(P) ** 2


def support_value(P: Polytope, x):
    return max(sum(a * b for a, b in zip(x, v)) for v in P.vertices)


def projection_value(P: Polytope, x):
    return projection_mixed(P, x)
