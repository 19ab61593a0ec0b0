from fractions import Fraction as F

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from vallab.harness.generators import Generator, random_polytope, random_unimodular
from vallab.linalg import primitive
from vallab.measures import cone_volume_measure, normals_o, projection_mixed, surface_area_measure, volume
from vallab.polytope import apply_linear, hull, simplex


def shadow_area(P, x):
    """Float area of the orthogonal projection of a 3-polytope onto x-perp."""
    x = np.array([float(c) for c in x])
    q, _ = np.linalg.qr(np.column_stack([x, np.eye(3)]))
    basis = q[:, 1:3]
    pts = np.array([[float(c) for c in v] for v in P.vertices]) @ basis
    return ConvexHull(pts).volume


def test_cone_volume_measure_examples(T3, cube):
    assert cone_volume_measure(T3).atoms == {(1, 1, 1): F(1, 6)}
    M = cone_volume_measure(cube)
    assert M.atoms == {(1, 0, 0): F(1, 3), (0, 1, 0): F(1, 3), (0, 0, 1): F(1, 3)}
    assert M.total() == 1 == volume(cube)


def test_shifted_cube_has_negative_atom():
    P = hull([(a + 1, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    M = cone_volume_measure(P)
    assert M.atoms[(-1, 0, 0)] == F(-1, 3)
    assert M.total() == 1


def test_surface_area_measure(cube):
    S = surface_area_measure(cube)
    assert len(S) == 6 and all(w == 1 for w in S.atoms.values())


def test_normals_o(T3, cube):
    assert normals_o(T3) == {(1, 1, 1)}
    assert normals_o(cube) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert normals_o(simplex(2, 3)) == set()


def test_volume_examples(T3):
    assert volume(T3) == F(1, 6)
    assert volume(simplex(3, 3, 2)) == F(4, 3)
    assert volume(simplex(2, 3)) == 0
    gen = Generator(3, 3, "rational")
    for k in range(10):
        g = gen.for_trial(k)
        P = random_polytope(g)
        assert volume(apply_linear(P, random_unimodular(g))) == volume(P)


def test_cone_volume_atoms_move_with_the_map():
    gen = Generator(8, 3, "rational")
    for k in range(10):
        g = gen.for_trial(k)
        P = random_polytope(g, allow_degenerate=False)
        phi = random_unimodular(g)
        image = cone_volume_measure(apply_linear(P, phi)).atoms
        inv_t = phi.inverse.transpose
        moved = {primitive(inv_t(u)): w for u, w in cone_volume_measure(P).atoms.items()}
        assert image == moved


def test_projection_examples(T3):
    assert projection_mixed(T3, (0, 0, 1)) == F(1, 3)
    assert projection_mixed(simplex(2, 3), (0, 0, 2)) == F(2, 3)
    assert projection_mixed(hull([(0, 0, 0), (1, 1, 0)]), (0, 0, 1)) == 0
    with pytest.raises(ValueError):
        projection_mixed(T3, (0, 0, 0))


def test_projection_matches_shadow_area():
    gen = Generator(21, 3, "rational")
    checked = 0
    for k in range(30):
        g = gen.for_trial(k)
        P = random_polytope(g, allow_degenerate=False)
        if P.dim < 3:
            continue
        x = (F(1, 2), -1, F(3, 4))
        expected = 2 / 3 * np.linalg.norm([float(c) for c in x]) * shadow_area(P, x)
        assert float(projection_mixed(P, x)) == pytest.approx(expected, rel=1e-9)
        assert projection_mixed(P, x) == projection_mixed(P, tuple(-c for c in x))
        checked += 1
    assert checked > 20
