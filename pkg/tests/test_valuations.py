from fractions import Fraction as F

import pytest

from vallab.harness.generators import Generator, random_polytope
from vallab.measures import projection_mixed
from vallab.polytope import hull, simplex
from vallab.scalar import SQRT2, CauchyFunctional, QuadScalar
from vallab.valuations import (
    AbsPower,
    ClassificationData,
    DomainError,
    MinusPower,
    PlusPower,
    Polynomial,
    SampledFunction,
    Table,
    ZetaSpec,
    euler_hit,
    euler_local,
    pi_zeta,
    pi_zeta_tilde,
    z_homogeneous,
    z_origin,
    z_general,
)

LINEAR = ZetaSpec(Polynomial((0, 1)))
E3 = (0, 0, 1)


def shifted_T3():
    return hull([(1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 0, 1)])


def test_unary_functions():
    assert Polynomial((1, 0, 2))(F(1, 2)) == F(3, 2)
    assert AbsPower(3)(-2) == 8
    assert PlusPower(2)(-1) == 0 and PlusPower(2)(3) == 9
    assert MinusPower(1)(-F(1, 3)) == F(1, 3) and MinusPower(1)(2) == 0
    assert AbsPower(1.5)(4) == pytest.approx(8.0)
    assert (AbsPower(1) + Polynomial((0, 1)))(-2) == 0
    assert (3 * AbsPower(2))(F(1, 2)) == F(3, 4)
    assert (-AbsPower(2))(2) == -4


def test_table_interpolates_exactly():
    tab = Table((-1, 0, 2), (1, 0, 4))
    assert tab(F(-1, 2)) == F(1, 2)
    assert tab(1) == 2
    assert tab(5) == 4 and tab(-9) == 1
    with pytest.raises(ValueError):
        Table((0, 0), (1, 2))


def test_sampled_function_memoizes():
    calls = []

    def f(t):
        calls.append(t)
        return t * t

    g = SampledFunction(f, grid=(0, 1))
    assert g(3) == 9 and g(3) == 9
    assert calls.count(3) == 1 and set(g.table) == {0, 1, 3}


def test_zeta_additive_and_odd():
    z = ZetaSpec(AbsPower(2), Polynomial((1,)))
    s1, s2 = QuadScalar(1, 2), QuadScalar(F(-1, 3), 5)
    t = F(2, 3)
    assert z(t, s1 + s2) == z(t, s1) + z(t, s2)
    assert z(t, -s1) == -z(t, s1)
    assert z(t, 0) == 0


def test_linear_extension_vs_witness():
    of = ZetaSpec.of(Polynomial((0, 1)))
    assert of(1, SQRT2) == SQRT2 * of(1, 1)
    witness = ZetaSpec(Polynomial((0, 1)))
    assert witness(1, SQRT2) == 0 != SQRT2 * witness(1, 1)


def test_pi_zeta_examples(T3, cube):
    assert pi_zeta(T3, LINEAR, E3) == F(1, 6)
    assert pi_zeta(cube, LINEAR, E3) == F(1, 3)
    tri = simplex(2, 3)
    for x in ((1, 0, 0), (0, 0, 5), (F(1, 2), -3, 2)):
        assert pi_zeta(tri, LINEAR, x) == 0
    with pytest.raises(DomainError):
        pi_zeta(T3, LINEAR, (0, 0, 0))
    assert pi_zeta(T3, ZetaSpec(Polynomial((1,))), (0, 0, 0), strict=False) == F(1, 6)


def test_pi_zeta_is_linear_in_zeta():
    z1, z2 = ZetaSpec(AbsPower(2)), ZetaSpec(PlusPower(1))
    gen = Generator(4, 3, "rational")
    for k in range(15):
        P = random_polytope(gen.for_trial(k))
        x = (F(1, 2), -1, 2)
        assert pi_zeta(P, z1 + z2, x) == pi_zeta(P, z1, x) + pi_zeta(P, z2, x)


def test_pi_zeta_tilde(T3):
    tri = hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    z = ZetaSpec(AbsPower(3))
    for x in ((0, 0, 1), (1, -2, F(1, 3))):
        assert pi_zeta_tilde(T3, z, x) == pi_zeta(T3, z, x)
        assert pi_zeta_tilde(tri, z, x) == pi_zeta(T3, z, x)


def test_euler_terms(cube):
    assert euler_local(hull([(0, 0, 0)])) == 1
    assert euler_local(hull([(-1, 0, 0), (1, 0, 0)])) == -1
    assert euler_local(simplex(3, 3)) == 0
    assert euler_local(hull([], n=3)) == 0
    assert euler_hit(hull([(0, 0, 0)])) == 1
    assert euler_hit(shifted_T3()) == 0
    assert euler_hit(cube) == 1


def test_z_origin_examples(T3):
    euler_only = ClassificationData(c0=1)
    gen = Generator(9, 3, "rational")
    for k in range(5):
        P = random_polytope(gen.for_trial(k), contains_origin=True)
        assert z_origin(P, euler_only, (1, 2, 3)) == 1
    assert z_origin(T3, ClassificationData(zeta1=LINEAR), E3) == F(1, 6)
    assert z_origin(simplex(2, 3), ClassificationData(c_nm1=1), (0, 0, 2)) == F(2, 3)
    with pytest.raises(DomainError):
        z_origin(shifted_T3(), euler_only, E3)
    with pytest.raises(DomainError):
        z_origin(hull([], n=3), euler_only, E3)


def test_z_origin_worked_example(T3):
    data = ClassificationData(zeta1=ZetaSpec(AbsPower(2)), c_nm1=5, c0=2, c0_prime=-1)
    # |1|^2/6 + 5/3 + 2
    assert z_origin(T3, data, E3) == F(23, 6)


def test_z_general_examples(T3):
    data = ClassificationData(zeta1=ZetaSpec(AbsPower(2)), c_nm1=3, c0=F(1, 2), c0_prime=2)
    gen = Generator(10, 3, "rational")
    for k in range(8):
        P = random_polytope(gen.for_trial(k), contains_origin=True)
        x = (1, F(-1, 2), 3)
        assert z_general(P, data, x) == z_origin(P, data, x)
    P = shifted_T3()
    zeta = ZetaSpec(Polynomial((0, 1)))
    assert z_general(P, ClassificationData(zeta2=zeta), E3) == pi_zeta(P.with_origin, zeta, E3)
    assert z_general(P, ClassificationData(c0_tilde=1), E3) == 0
    assert z_general(hull([], n=3), data, E3) == 0


def test_z_general_tilde_projection():
    P = shifted_T3()
    data = ClassificationData(c_nm1_tilde=1)
    assert z_general(P, data, E3) == projection_mixed(P.with_origin, E3)


def test_z_homogeneous_examples(T3):
    assert z_homogeneous(T3, 0, E3) == F(1, 6)
    assert z_homogeneous(T3, 2, E3) == F(1, 6)
    assert z_homogeneous(T3, 0, E3, c0=2, c0p=5) == F(1, 6) + 2
    xi = CauchyFunctional(1, 0)
    assert z_homogeneous(T3, 1, (0, 0, -2), xi2=xi) == F(1, 3)
    assert z_homogeneous(T3, 1, E3, c_nm1=3) == F(1, 6) + 1
    with pytest.raises(ValueError):
        z_homogeneous(T3, -1, E3)
    with pytest.raises(DomainError):
        z_homogeneous(T3, 2, (0, 0, 0))


def test_z_homogeneous_scaling():
    gen = Generator(12, 3, "rational")
    x = (F(1, 2), 1, -2)
    for k in range(10):
        P = random_polytope(gen.for_trial(k), contains_origin=True)
        for p in (2, 3):
            lhs = z_homogeneous(P, p, tuple(3 * c for c in x), xi2=lambda v: 2 * v)
            assert lhs == 3**p * z_homogeneous(P, p, x, xi2=lambda v: 2 * v)
        val = z_homogeneous(P, 2.5, tuple(3 * c for c in x))
        assert val == pytest.approx(3**2.5 * z_homogeneous(P, 2.5, x), rel=1e-9, abs=1e-12)


def test_z_homogeneous_parity():
    gen = Generator(13, 3, "rational")
    for k in range(6):
        P = random_polytope(gen.for_trial(k), contains_origin=True)
        x = (1, -1, F(1, 4))
        for p in (2, 3):
            # xi2 = (-1)^p xi1 turns the split sum into the plain t^p sum
            sign = (-1) ** p
            lhs = z_homogeneous(P, p, tuple(-c for c in x), xi2=lambda v: sign * v)
            assert lhs == sign * z_homogeneous(P, p, x, xi2=lambda v: sign * v)
