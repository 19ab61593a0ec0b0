from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vallab.linalg import LinearMap, cross, det, dot, primitive, rank, row_reduce
from vallab.scalar import SQRT2, QuadScalar

small = st.integers(-5, 5)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_numpy(m):
    assert det(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_det_rational_and_quad():
    m = [[F(1, 2), 1, 0, 0], [0, 1, 0, 0], [0, 0, 3, 1], [0, 0, 0, F(2, 3)]]
    assert det(m) == 1
    assert det([[SQRT2, 0], [0, SQRT2]]) == 2


def test_rank_and_row_reduce():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    red, piv = row_reduce(rows)
    assert piv == [0, 1]
    assert rank(rows) == 2
    assert red[0] == [1, 0, 1]


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=3, max_size=3))
def test_cross_is_orthogonal(vs):
    c = cross(vs)
    assert all(dot(c, v) == 0 for v in vs)
    assert (c == (0, 0, 0, 0)) == (rank(vs) < 3)


def test_primitive():
    assert primitive((2, -4, 6)) == (1, -2, 3)
    assert primitive((F(1, 2), F(1, 3))) == (3, 2)
    assert primitive((SQRT2, SQRT2)) == (1, 1)
    v = primitive((SQRT2, 1))
    assert v == (1, QuadScalar(0, F(1, 2)))
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_linear_map_basics():
    phi = LinearMap.shear(3, 0, 1, 2)
    assert phi.det == 1 and phi.unimodular
    assert phi((0, 1, 0)) == (2, 1, 0)
    assert (phi @ phi.inverse) == LinearMap.identity(3)
    assert phi.transpose.matrix[1][0] == 2
    cols = LinearMap.from_columns([(1, 0), (1, 1)])
    assert cols((0, 1)) == (1, 1)
    with pytest.raises(ValueError):
        LinearMap([[1, 2], [2, 4]]).inverse
    with pytest.raises(ValueError):
        LinearMap([[1, 2, 3]])
