from fractions import Fraction as F
from math import factorial

import numpy as np
import pytest
from scipy.spatial import ConvexHull, Delaunay

from vallab.harness.generators import Generator, random_cut, random_polytope
from vallab.linalg import LinearMap, dot
from vallab.measures import volume
from vallab.polytope import (
    Hyperplane,
    Polytope,
    _full_facets,
    apply_linear,
    contains_origin,
    contains_origin_relint,
    cut,
    dim,
    euler,
    hausdorff_distance_approx,
    hull,
    hull_with_origin,
    simplex,
    support,
)
from vallab.scalar import SQRT2, QuadScalar


def float_volume(P):
    pts = np.array([[float(c) for c in v] for v in P.vertices])
    if P.dim < P.ambient_dim:
        return 0.0
    tri = Delaunay(pts)
    total = 0.0
    for s in tri.simplices:
        m = pts[s[1:]] - pts[s[0]]
        total += abs(np.linalg.det(m)) / factorial(P.ambient_dim)
    return total


def random_polys(count, n=3, seed=5, **kw):
    base = Generator(seed, n, "rational")
    return [random_polytope(base.for_trial(k), **kw) for k in range(count)]


def test_tetrahedron_facets(T3):
    assert len(T3.facets) == 4
    top = [f for f in T3.facets if f.normal == (1, 1, 1)]
    assert len(top) == 1 and top[0].support == 1
    assert {f.normal for f in T3.facets} == {(1, 1, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)}


def test_triangle_has_two_sided_facets():
    P = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert P.dim == 2
    assert sorted(f.normal for f in P.facets) == [(0, 0, -1), (0, 0, 1)]
    for f in P.facets:
        assert f.support == 0 and f.normalized_area == F(1, 2)


def test_segment_in_r3_has_no_facets():
    P = hull([(0, 0, 0), (1, 2, 0)])
    assert P.dim == 1 and P.facets == ()


def test_empty_polytope():
    E = hull([], n=3)
    assert E.is_empty and E.dim == -1 and E.facets == ()
    assert euler(E) == 0 and volume(E) == 0


def test_redundant_points_are_dropped():
    P = hull([(0, 0), (2, 0), (0, 2), (1, 1), (F(1, 2), F(1, 2)), (2, 0)])
    assert P.vertex_set() == frozenset({(0, 0), (2, 0), (0, 2)})


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        hull([(0, 0), (1, 0, 0)])


def test_support_examples(T3):
    assert support(T3, (1, 1, 1)) == 1
    assert support(T3, (-1, 0, 0)) == 0
    for P in random_polys(10):
        if P.is_empty:
            continue
        u = (F(1, 3), -2, F(5, 7))
        assert support(P, tuple(2 * c for c in u)) == 2 * support(P, u)
    with pytest.raises(ValueError):
        support(Polytope.empty(3), (1, 0, 0))


def test_cut_tetrahedron_along_diagonal(T3):
    minus, plus, piece = cut(T3, Hyperplane((1, -1, 0), 0))
    assert minus.vertex_set() == frozenset({(0, 0, 0), (0, 1, 0), (0, 0, 1), (F(1, 2), F(1, 2), 0)})
    assert volume(minus) == volume(plus) == F(1, 12)
    assert piece.dim == 2


def test_cut_disjoint(T3):
    minus, plus, piece = cut(T3, Hyperplane((1, 0, 0), 5))
    assert minus == T3 and plus.is_empty and piece.is_empty


def test_cut_partitions_volume():
    gen = Generator(11, 3, "rational")
    done = 0
    for k in range(40):
        g = gen.for_trial(k)
        P = random_polytope(g)
        if P.is_empty:
            continue
        H = random_cut(g, P, through_origin=bool(k % 2))
        minus, plus, piece = cut(P, H)
        assert volume(minus) + volume(plus) == volume(P)
        assert piece.is_empty or piece.dim <= 2
        done += 1
    assert done >= 20


def test_volume_matches_float_oracle():
    for P in random_polys(25):
        if P.is_empty:
            continue
        assert float(volume(P)) == pytest.approx(float_volume(P), rel=1e-9, abs=1e-12)


def test_facets_match_scipy_hull():
    for P in random_polys(25, allow_degenerate=False):
        if P.dim < 3:
            continue
        pts = np.array([[float(c) for c in v] for v in P.vertices])
        ch = ConvexHull(pts)
        assert len(ch.vertices) == len(P.vertices)
        assert float(volume(P)) == pytest.approx(ch.volume, rel=1e-9)


def test_brute_force_enumeration_agrees():
    for P in random_polys(15, n=3, seed=2, allow_degenerate=False) + random_polys(5, n=4, seed=3, allow_degenerate=False):
        if P.dim < P.ambient_dim:
            continue
        brute = {(nv, off) for nv, off, _ in _full_facets(list(P.vertices), P.ambient_dim)}
        assert brute == {(f.normal, f.support) for f in P.facets}


def test_facet_consistency_and_cone_volumes():
    for P in random_polys(30):
        n = P.ambient_dim
        for f in P.facets:
            assert all(c.denominator == 1 if isinstance(c, F) else isinstance(c, int) for c in f.normal)
            for k, v in enumerate(P.vertices):
                h = dot(f.normal, v)
                assert h <= f.support
                assert (h == f.support) == (k in f.vertex_indices)
            assert f.cone_volume == f.support * f.normalized_area / n
        if P.dim == n:
            assert sum(f.cone_volume for f in P.facets) == volume(P)
        elif P.dim == n - 1:
            a, b = P.facets
            assert a.normal == tuple(-c for c in b.normal)
            assert a.normalized_area == b.normalized_area
        else:
            assert P.facets == ()


def test_ratio_is_scale_invariant(T3):
    x = (F(2, 3), -1, 4)
    for f in T3.facets:
        if f.support == 0:
            continue
        for mu in (F(1, 2), 3, F(7, 5)):
            u = tuple(mu * c for c in f.normal)
            assert dot(x, u) / support(T3, u) == dot(x, f.normal) / f.support


def test_apply_linear(T3):
    shear = LinearMap.from_columns([(1, 1, 0), (0, 1, 0), (0, 0, 1)])
    assert volume(apply_linear(T3, shear)) == F(1, 6)
    assert apply_linear(T3, LinearMap.identity(3)) == T3
    with pytest.raises(ValueError):
        apply_linear(T3, LinearMap([[1, 0, 0], [0, 0, 0], [0, 0, 1]]))


def test_scaled_dissection_map_gives_cut_piece(T3):
    # the cube-root scalings cancel, leaving this map on T3
    lam = F(1, 2)
    psi = LinearMap.from_columns([(lam, 1 - lam, 0), (0, 1, 0), (0, 0, 1)])
    minus, _, _ = cut(T3, Hyperplane((1 - lam, -lam, 0), 0))
    assert apply_linear(T3, psi) == minus


def test_hull_with_origin(T3):
    tri = hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert hull_with_origin(tri) == T3
    assert hull_with_origin(T3) == T3


def test_hull_with_origin_of_union():
    P = hull([(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)])
    Q = hull([(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1), (2, 0, 0), (2, 1, 0), (2, 0, 1), (2, 1, 1)])
    R = hull([(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1), (F(3, 2), F(1, 2), F(1, 2))])
    union = hull(list(P.vertices) + list(R.vertices))
    assert union == R
    lhs = hull_with_origin(union)
    rhs = hull(list(hull_with_origin(P).vertices) + list(hull_with_origin(R).vertices))
    assert lhs == rhs
    assert volume(hull_with_origin(Q)) == volume(Q) + volume(hull_with_origin(P))


def test_relint_and_euler():
    assert contains_origin_relint(hull([(-1, 0), (1, 0)]))
    assert not contains_origin_relint(simplex(3, 3))
    point = hull([(0, 0, 0)])
    assert contains_origin_relint(point) and euler(point) == 1
    assert contains_origin(simplex(3, 3))
    assert not contains_origin(hull([(1, 0, 0), (2, 0, 0)]))
    assert dim(hull([(0, 0, 0), (1, 0, 0)])) == 1
    with pytest.raises(ValueError):
        contains_origin_relint(Polytope.empty(2))


def test_hausdorff():
    T = simplex(3, 3)
    assert hausdorff_distance_approx(T, T) == 0
    p, q = hull([(0, 0, 0)]), hull([(1, 0, 0)])
    assert hausdorff_distance_approx(p, q) == pytest.approx(1)
    # on the three axis directions the gap is 1, which is also the true maximum
    exact = max(float(support(simplex(3, 3, 2), u) - support(T, u)) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert hausdorff_distance_approx(T, simplex(3, 3, 2)) == pytest.approx(exact, rel=0.1)


def test_quad_polytope():
    P = hull([(0, 0), (SQRT2, 0), (0, 1)])
    assert P.scalar_mode == "quad"
    assert volume(P) == QuadScalar(0, F(1, 2))
    assert sum(f.cone_volume for f in P.facets) == volume(P)
    minus, plus, _ = cut(P, Hyperplane((1, 0), 1))
    assert volume(minus) + volume(plus) == volume(P)
