"""Seeded property suites, each paired with negative controls.

A suite returns one :class:`CheckReport`.  It passes when every identity
held and every control failed; a control that cannot fail means the suite
itself is broken, and the report says so.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable

from ..linalg import LinearMap
from ..measures import projection_mixed, volume
from ..polytope import Polytope, apply_linear, hull, simplex, support
from ..scalar import SQRT2
from ..tensors import SymTensor, act_inverse_transpose, contract, m0p
from ..valuations import (
    AbsPower,
    ClassificationData,
    MinusPower,
    PlusPower,
    Polynomial,
    ZetaSpec,
    pi_zeta,
    pi_zeta_tilde,
    z_origin,
    z_general,
)
from .checks import (
    BlackBoxValuation,
    CheckReport,
    check_contravariance,
    check_dissection,
    check_simplex_formula,
    check_diagonal_limit,
    check_simplicity,
    check_valuation,
)
from .extract import NotClassifiable, extract_classification, round_trip
from .generators import (
    Generator,
    random_cut,
    random_polytope,
    random_simplex,
    random_unimodular,
    random_vector,
)

__all__ = ["DEFAULT_TRIALS", "NAMED_ZETAS", "SUITES", "named_zeta", "run_suite"]


def _square_s(t, s):
    return s * s


def _square_t(t, s):
    return t * t * s


NAMED_ZETAS: dict[str, Callable] = {
    "linear_t": ZetaSpec.of(Polynomial((0, 1))),
    "abs_t": ZetaSpec.of(AbsPower(1)),
    "abs_t2": ZetaSpec.of(AbsPower(2)),
    "abs_t3": ZetaSpec.of(AbsPower(3)),
    "plus_t": ZetaSpec.of(PlusPower(1)),
    "squared_t": ZetaSpec.of(Polynomial((0, 0, 1))),
    "mixed": ZetaSpec.of(Polynomial((1, -2, 0, 1)) + AbsPower(1) + MinusPower(2)),
    # t * (rational part of s): additive in s, not R-linear
    "quad_witness": ZetaSpec(Polynomial((0, 1))),
    # non-additive in s: negative control
    "squared_s": _square_s,
}


def named_zeta(name: str) -> Callable:
    try:
        return NAMED_ZETAS[name]
    except KeyError:
        raise ValueError(f"unknown zeta {name!r}; choose from {sorted(NAMED_ZETAS)}") from None


DEFAULT_TRIALS = {
    "valuation": 200,
    "contravariance": 100,
    "simplicity": 100,
    "dissection": 50,
    "simplex": 50,
    "limit": 10,
    "tensor": 50,
    "extraction": 50,
    "projection": 100,
}


def _xs(gen: Generator, k: int = 5) -> list:
    return [random_vector(gen) for _ in range(k)]


def _mixed_data(quad: bool) -> ClassificationData:
    z1 = NAMED_ZETAS["quad_witness"] if quad else NAMED_ZETAS["mixed"]
    z2 = NAMED_ZETAS["quad_witness"] if quad else NAMED_ZETAS["abs_t2"]
    return ClassificationData(
        zeta1=z1, zeta2=z2, c_nm1=3, c_nm1_tilde=Fraction(-1, 2), c0=2, c0_prime=-1, c0_tilde=Fraction(5, 3)
    )


def valuation_set(zeta: Callable | None = None, quad: bool = False) -> list[BlackBoxValuation]:
    """The valuations every suite exercises: Pi for several zetas, its
    origin-hull variant, the projection function and the full combination."""
    if zeta is not None:
        zetas = {"given": zeta}
    elif quad:
        zetas = {"quad_witness": NAMED_ZETAS["quad_witness"]}
    else:
        zetas = {name: NAMED_ZETAS[name] for name in ("linear_t", "abs_t", "abs_t2", "abs_t3")}
    out = []
    for name, z in zetas.items():
        out.append(BlackBoxValuation(lambda P, x, z=z: pi_zeta(P, z, x), "all", f"pi[{name}]"))
    tilde = zeta if zeta is not None else (NAMED_ZETAS["quad_witness"] if quad else NAMED_ZETAS["mixed"])
    out.append(BlackBoxValuation(lambda P, x: pi_zeta_tilde(P, tilde, x), "all", "pi_tilde"))
    if zeta is None:
        out.append(BlackBoxValuation(_projection, "all", "V1"))
        data = _mixed_data(quad)
        out.append(BlackBoxValuation(lambda P, x: z_general(P, data, x), "all", "z_general"))
        out.append(BlackBoxValuation(lambda P, x: z_origin(P, data, x), "o", "z_origin"))
    return out


def _projection(P: Polytope, x):
    return projection_mixed(P, x)


def _volume_squared(P: Polytope, x):
    return volume(P) ** 2


def _support(P: Polytope, x):
    return support(P, x)


def _control_until_failure(run_one: Callable, limit: int) -> CheckReport:
    """Run a control trial by trial until it produces a failure."""
    report = CheckReport("control")
    for k in range(limit):
        run_one(k, report)
        if report.failures:
            break
    return report


# --- suites ----------------------------------------------------------------


def suite_valuation(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("valuation", seed=seed)
    mode = "quad" if quad else "rational"
    Zs = valuation_set(zeta, quad)
    dims = [(n, trials)] if quad or n != 3 else [(3, trials), (4, max(1, trials // 4))]
    for dim, count in dims:
        base = Generator(seed=seed, ambient_dim=dim, scalar_mode=mode, max_vertices=12 if dim == 3 else 9)
        for k in range(count):
            g = base.for_trial(k)
            through = k % 2 == 0
            P = random_polytope(g, contains_origin=through)
            H = random_cut(g, P, through_origin=through)
            xs = _xs(g)
            for Z in Zs:
                sub = check_valuation(Z, P, H, xs)
                report.checked += sub.checked
                report.failures.extend(sub.failures)
                report.exact = report.exact and sub.exact
            report.trials += 1
    _quad_note(report, quad)
    base = Generator(seed=seed + 1, ambient_dim=3, scalar_mode=mode)

    def control(zfun, name):
        Z = BlackBoxValuation(zfun, "all", name)

        def one(k, rep):
            g = base.for_trial(k)
            P = random_polytope(g, allow_degenerate=False)
            check_valuation(Z, P, random_cut(g, P), _xs(g, 2), rep)

        return _control_until_failure(one, 50)

    report.record_control("zeta=s^2", control(lambda P, x: pi_zeta(P, _square_s, x), "pi[s^2]"))
    report.record_control("volume^2", control(_volume_squared, "volume^2"))
    return report


def _quad_note(report: CheckReport, quad: bool) -> None:
    if not quad:
        return
    z = NAMED_ZETAS["quad_witness"]
    lhs, rhs = z(Fraction(1), SQRT2), SQRT2 * z(Fraction(1), Fraction(1))
    # the witness must differ: zeta(t, .) is additive but not R-linear
    if lhs == rhs:
        report.failures.append({"inputs": {"zeta": "quad_witness"}, "lhs": str(lhs), "rhs": str(rhs)})
    report.notes.append(f"zeta(1, sqrt2) = {lhs} differs from sqrt2 * zeta(1, 1) = {rhs}")


def suite_contravariance(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("contravariance", seed=seed)
    mode = "quad" if quad else "rational"
    base = Generator(seed=seed, ambient_dim=n, scalar_mode=mode)
    Zs = valuation_set(zeta, quad)
    for k in range(trials):
        g = base.for_trial(k)
        P = random_polytope(g, contains_origin=k % 2 == 0)
        phi = random_unimodular(g)
        xs = _xs(g)
        for Z in Zs:
            if not Z.accepts(P):
                continue
            check_contravariance(Z, P, phi, xs, report)
            report.trials -= 1
        report.trials += 1
    _quad_note(report, quad)
    cbase = Generator(seed=seed + 1, ambient_dim=n, scalar_mode=mode)
    Zc = BlackBoxValuation(_support, "all", "support")

    def one(k, rep):
        g = cbase.for_trial(k)
        check_contravariance(Zc, random_polytope(g, allow_degenerate=False), random_unimodular(g), _xs(g, 2), rep)

    report.record_control("support function", _control_until_failure(one, 50))
    return report


def suite_simplicity(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("simplicity", seed=seed)
    mode = "quad" if quad else "rational"
    base = Generator(seed=seed, ambient_dim=n, scalar_mode=mode)
    Zs = [Z for Z in valuation_set(zeta, quad) if Z.name.startswith("pi[")]
    if zeta is None and not quad:
        Zs.append(BlackBoxValuation(lambda P, x: pi_zeta(P, NAMED_ZETAS["mixed"], x), "all", "pi[mixed]"))
    for k in range(trials):
        g = base.for_trial(k)
        P = random_simplex(g, k % n, with_origin=(k // n) % 2 == 0)
        xs = _xs(g)
        for Z in Zs:
            check_simplicity(Z, P, xs, report)
            report.trials -= 1
        report.trials += 1
    _quad_note(report, quad)
    cbase = Generator(seed=seed + 1, ambient_dim=n, scalar_mode=mode)
    Zc = BlackBoxValuation(_projection, "all", "V1")

    def one(k, rep):
        g = cbase.for_trial(k)
        check_simplicity(Zc, random_simplex(g, n - 1), _xs(g, 2), rep)

    report.record_control("projection function", _control_until_failure(one, 20))
    return report


def _simplex_zetas(zeta):
    if zeta is not None:
        return [zeta]
    return [NAMED_ZETAS[k] for k in ("linear_t", "abs_t2", "mixed", "plus_t")]


def suite_simplex(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("simplex", seed=seed)
    zetas = _simplex_zetas(zeta)
    base = Generator(seed=seed)
    for k in range(trials):
        g = base.for_trial(k)
        s = g.rational(3, positive=True)
        t = g.rational(3) or Fraction(1)
        check_simplex_formula(zetas[k % len(zetas)], s, t, 3 + k % 2, report)
    # the worked instance: s = t = 1, n = 3, zeta = ts gives 1/6
    witness = pi_zeta(simplex(3, 3), NAMED_ZETAS["linear_t"], (0, 0, 1))
    report.compare(witness, Fraction(1, 6), {"s": 1, "t": 1, "n": 3, "zeta": "linear_t"})

    def surface_variant(P, z, x):
        total = Fraction(0)
        for f in P.facets:
            if f.support:
                total += z(sum(a * b for a, b in zip(x, f.normal)) / f.support, f.normalized_area)
        return total

    def one(k, rep):
        g = base.for_trial(1000 + k)
        check_simplex_formula(NAMED_ZETAS["linear_t"], g.rational(3, positive=True), 1, 3, rep, valuation=surface_variant)

    report.record_control("area instead of cone volume", _control_until_failure(one, 20))
    return report


def suite_dissection(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("dissection", seed=seed)
    zetas = _simplex_zetas(zeta)
    base = Generator(seed=seed)
    for k in range(trials):
        g = base.for_trial(k)
        s = g.rational(3, positive=True)
        t = g.rational(3) or Fraction(1)
        lam = Fraction(g.integer(1, 15), 16)
        d = 2 + k % (n - 1)
        data = ClassificationData(c_nm1=g.rational(), c0=g.rational(), c0_prime=g.rational())
        check_dissection(zetas[k % len(zetas)], s, t, lam, d, n, data, report)
    # the worked instance
    check_dissection(NAMED_ZETAS["linear_t"], 1, 1, Fraction(1, 2), n, n, report=report)

    def one(k, rep):
        g = base.for_trial(1000 + k)
        check_dissection(_square_s, g.rational(3, positive=True), 1, Fraction(1, 3), n, n, report=rep)

    report.record_control("zeta=s^2", _control_until_failure(one, 20))
    return report


def suite_limit(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("limit", seed=seed)
    if zeta is not None:
        zetas = [zeta]
    else:
        zetas = [NAMED_ZETAS[k] for k in ("linear_t", "abs_t", "plus_t", "mixed")]
        zetas.append(ZetaSpec.of(AbsPower(1.5)))
    base = Generator(seed=seed)
    for k in range(trials):
        g = base.for_trial(k)
        s = g.rational(2, positive=True)
        r = g.rational(2, positive=True)
        for z in zetas:
            check_diagonal_limit(z, s, r, n, report=report)
            report.trials -= 1
        report.trials += 1

    def jump(t, s):
        return (1 if t > 0 else -1 if t < 0 else 0) * s

    def one(k, rep):
        check_diagonal_limit(jump, 1, 1, n, steps=10, report=rep)

    report.record_control("discontinuous eta", _control_until_failure(one, 1))
    return report


def _neg(n: int) -> LinearMap:
    return LinearMap([[-int(i == j) for j in range(n)] for i in range(n)])


def _vertex_moment(P: Polytope, p: int) -> SymTensor:
    acc = SymTensor(p, P.ambient_dim, {})
    for v in P.vertices:
        acc = acc + SymTensor.power(v, p)
    return acc


def suite_tensor(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("tensor", seed=seed)
    base = Generator(seed=seed, ambient_dim=n, scalar_mode="quad" if quad else "rational")
    for k in range(trials):
        g = base.for_trial(k)
        P = random_polytope(g, contains_origin=True)
        phi = random_unimodular(g)
        xs = _xs(g, 3)
        image = apply_linear(P, phi)
        flipped = apply_linear(P, _neg(n))
        for p in (1, 2, 3):
            M = m0p(P, p=p)
            z = ZetaSpec.of(Polynomial(tuple([0] * p + [1])))
            for x in xs:
                inputs = {"P": P, "p": p, "x": x}
                report.compare(contract(M, x), pi_zeta(P, z, x), {**inputs, "identity": "contraction"})
                report.compare(
                    contract(M, tuple(-c for c in x)), (-1) ** p * contract(M, x), {**inputs, "identity": "parity"}
                )
            lhs = m0p(image, p=p)
            rhs = act_inverse_transpose(phi, M)
            report.compare(lhs.coeffs, rhs.coeffs, {"P": P, "phi": phi, "p": p, "identity": "contravariance"})
            report.compare(
                m0p(flipped, p=p).coeffs,
                {i: (-1) ** p * v for i, v in M.coeffs.items()},
                {"P": P, "p": p, "identity": "reflection"},
            )
        report.trials += 1

    def one(k, rep):
        g = base.for_trial(1000 + k)
        P = random_polytope(g, allow_degenerate=False)
        phi = random_unimodular(g)
        lhs = _vertex_moment(apply_linear(P, phi), 2)
        rhs = act_inverse_transpose(phi, _vertex_moment(P, 2))
        rep.compare(lhs.coeffs, rhs.coeffs, {"P": P, "phi": phi})

    report.record_control("vertex moment tensor", _control_until_failure(one, 20))
    return report


EXTRACTION_CASES = [
    ClassificationData(zeta1=ZetaSpec.of(AbsPower(2)), c_nm1=5, c0=2, c0_prime=-1),
    ClassificationData(zeta1=ZetaSpec.of(Polynomial((0, 1)))),
    ClassificationData(zeta1=ZetaSpec.of(Polynomial((1, -2, 0, 1))), c_nm1=Fraction(-3, 2), c0=0, c0_prime=4),
    ClassificationData(zeta1=ZetaSpec.of(PlusPower(2) + MinusPower(1)), c_nm1=1, c0=Fraction(7, 3), c0_prime=0),
    ClassificationData(zeta1=ZetaSpec.of(AbsPower(3)), c_nm1=0, c0=-1, c0_prime=Fraction(1, 2)),
]


def suite_extraction(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("extraction", seed=seed)
    base = Generator(seed=seed, ambient_dim=n)
    for case, truth in enumerate(EXTRACTION_CASES):
        Z = BlackBoxValuation(lambda P, x, d=truth: z_origin(P, d, x), "o", f"case{case}")
        got = extract_classification(Z, n)
        for name in ("c_nm1", "c0", "c0_prime"):
            report.compare(getattr(got, name), getattr(truth, name), {"case": case, "constant": name})
        for t in (Fraction(k, 4) for k in range(-12, 13)):
            report.compare(got.zeta1.eta_a(t), truth.zeta1.eta_a(t), {"case": case, "eta at": t})
        rebuilt = BlackBoxValuation(lambda P, x, d=got: z_origin(P, d, x), "o", "rebuilt")
        polys = [random_polytope(base.for_trial(case * 10_000 + k), contains_origin=True) for k in range(trials)]
        xg = base.for_trial(case * 10_000 + 9_999)
        round_trip(Z, rebuilt, polys, lambda P: _xs(xg, 10), report)
    # the general form on all polytopes, including ones missing o
    truth = _mixed_data(False)
    Z = BlackBoxValuation(lambda P, x: z_general(P, truth, x), "all", "z_general")
    got = extract_classification(Z, n, mode="all")
    for name in ("c_nm1", "c_nm1_tilde", "c0", "c0_prime", "c0_tilde"):
        report.compare(getattr(got, name), getattr(truth, name), {"case": "all", "constant": name})
    rebuilt = BlackBoxValuation(lambda P, x: z_general(P, got, x), "all", "rebuilt")
    polys = [random_polytope(base.for_trial(90_000 + k)) for k in range(max(1, trials // 5))]
    xg = base.for_trial(99_999)
    round_trip(Z, rebuilt, polys, lambda P: _xs(xg, 5), report)

    control = CheckReport("control")
    bad = zeta if zeta is not None else _square_s
    try:
        extract_classification(BlackBoxValuation(lambda P, x: pi_zeta(P, bad, x), "o"), n)
        report.notes.append("control valuation was classifiable")
    except NotClassifiable as exc:
        control.failures.append({"inputs": {"reason": str(exc)}, "lhs": exc.witness, "rhs": None})
    report.record_control("zeta=s^2 not classifiable", control)
    return report


def _prism_formula(P: Polytope, x) -> Fraction:
    """``(2/n) vol(P|x^perp + [o, x])``: the projection function via a prism."""
    n = P.ambient_dim
    xx = sum(c * c for c in x)
    proj = [tuple(v[i] - sum(a * b for a, b in zip(v, x)) / xx * x[i] for i in range(n)) for v in P.vertices]
    prism = hull(proj + [tuple(p[i] + x[i] for i in range(n)) for p in proj], n=n)
    return Fraction(2, n) * volume(prism)


def suite_projection(seed, trials, n=3, quad=False, zeta=None) -> CheckReport:
    report = CheckReport("projection", seed=seed)
    base = Generator(seed=seed, ambient_dim=n, scalar_mode="quad" if quad else "rational")
    for k in range(trials):
        g = base.for_trial(k)
        P = random_polytope(g, allow_degenerate=False)
        x = random_vector(g)
        report.compare(projection_mixed(P, x), _prism_formula(P, x), {"P": P, "x": x})
        report.trials += 1
        s = g.rational(3, positive=True)
        t = g.rational(3) or Fraction(1)
        low = simplex(n - 1, n, s)
        e = tuple(t if i == n - 1 else 0 for i in range(n))
        report.compare(projection_mixed(low, e), 2 * s ** (n - 1) * abs(t) / factorial(n), {"s": s, "t": t})
    low = simplex(n - 1, n)
    report.compare(projection_mixed(low, tuple(2 if i == n - 1 else 0 for i in range(n))), Fraction(4, factorial(n)), {"s": 1, "t": 2})

    def signed(P, x):
        return sum((sum(a * b for a, b in zip(x, f.normal)) * f.normalized_area for f in P.facets), Fraction(0)) / n

    def one(k, rep):
        g = base.for_trial(1000 + k)
        P = random_polytope(g, allow_degenerate=False)
        x = random_vector(g)
        rep.compare(signed(P, x), _prism_formula(P, x), {"P": P, "x": x})

    report.record_control("signed facet sum", _control_until_failure(one, 20))
    return report


SUITES = {
    "valuation": suite_valuation,
    "contravariance": suite_contravariance,
    "simplicity": suite_simplicity,
    "dissection": suite_dissection,
    "simplex": suite_simplex,
    "limit": suite_limit,
    "tensor": suite_tensor,
    "extraction": suite_extraction,
    "projection": suite_projection,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None, n: int = 3, scalar_mode: str = "rational", zeta=None) -> CheckReport:
    """Run one named suite.  ``zeta`` (a callable or a name from
    ``NAMED_ZETAS``) replaces the default zeta family where one is used."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    if isinstance(zeta, str):
        zeta = named_zeta(zeta)
    trials = DEFAULT_TRIALS[name] if trials is None else trials
    return fn(seed, trials, n=n, quad=scalar_mode == "quad", zeta=zeta)
