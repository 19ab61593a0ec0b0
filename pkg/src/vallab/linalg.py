"""Small exact linear algebra over Q and Q(sqrt 2).

Matrices are tuples of row tuples.  Everything here is exact: integer inputs
go through fraction-free Bareiss elimination, other fields through plain
Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from .scalar import QuadScalar, as_scalar

__all__ = [
    "LinearMap",
    "cross",
    "det",
    "dot",
    "primitive",
    "rank",
    "row_reduce",
]


def dot(u: Sequence, v: Sequence):
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def _all_int(rows) -> bool:
    return all(type(x) is int for row in rows for x in row)


def det(m: Sequence[Sequence]):
    size = len(m)
    if size == 0:
        return 1
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if size == 3:
        a, b, c = m
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    rows = [list(r) for r in m]
    if _all_int(rows):
        return _bareiss(rows)
    return _gauss_det(rows)


def _bareiss(rows: list[list[int]]) -> int:
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
        prev = pivot
    return sign * rows[-1][-1]


def _gauss_det(rows: list[list]):
    n = len(rows)
    result = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            result = -result
        pivot = rows[k][k]
        result = result * pivot
        for i in range(k + 1, n):
            if rows[i][k] != 0:
                f = rows[i][k] / pivot
                for j in range(k, n):
                    rows[i][j] = rows[i][j] - f * rows[k][j]
    return result


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x if isinstance(x, QuadScalar) else Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def cross(vectors: Sequence[Sequence]) -> tuple:
    """Generalized cross product of ``n - 1`` vectors in R^n.

    The result is orthogonal to every input and vanishes iff they are
    linearly dependent.
    """
    k = len(vectors)
    n = k + 1
    out = []
    for i in range(n):
        minor = [[v[j] for j in range(n) if j != i] for v in vectors]
        d = det(minor)
        out.append(d if i % 2 == 0 else -d)
    return tuple(out)


def primitive(v: Sequence) -> tuple:
    """Canonical positive rescaling of a nonzero direction.

    Rational directions become primitive integer vectors; directions with an
    irrational entry are scaled so the first nonzero entry is +-1 (and then
    made primitive if that turns them rational).
    """
    if all(type(x) is int for x in v):
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            raise ValueError("zero vector has no direction")
        return tuple(x // g for x in v) if g != 1 else tuple(v)
    if any(isinstance(x, QuadScalar) and not x.is_rational for x in v):
        lead = next(x for x in v if x != 0)
        scale = abs(lead)
        w = tuple(x / scale for x in v)
        if all(not isinstance(x, QuadScalar) or x.is_rational for x in w):
            return primitive(tuple(x.a if isinstance(x, QuadScalar) else x for x in w))
        return w
    q = [x.a if isinstance(x, QuadScalar) else Fraction(x) for x in v]
    den = 1
    for x in q:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in q]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(x // g for x in ints)


class LinearMap:
    """An invertible linear map of R^n given by an exact square matrix."""

    def __init__(self, matrix: Sequence[Sequence]) -> None:
        rows = tuple(tuple(as_scalar(x) for x in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("linear map needs a square, nonempty matrix")
        self.matrix = rows

    @classmethod
    def identity(cls, n: int) -> LinearMap:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def shear(cls, n: int, i: int, j: int, c) -> LinearMap:
        """Elementary map e_j -> e_j + c e_i (adds c times row j to row i)."""
        if i == j:
            raise ValueError("shear needs distinct indices")
        m = [[int(r == s) for s in range(n)] for r in range(n)]
        m[i][j] = c
        return cls(m)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> LinearMap:
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.matrix)

    @cached_property
    def det(self):
        return det(self.matrix)

    @property
    def unimodular(self) -> bool:
        return self.det == 1

    @cached_property
    def inverse(self) -> LinearMap:
        n = self.n
        aug = [list(self.matrix[i]) + [int(i == j) for j in range(n)] for i in range(n)]
        red, piv = row_reduce(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("singular linear map")
        return LinearMap([row[n:] for row in red])

    @cached_property
    def transpose(self) -> LinearMap:
        return LinearMap(list(zip(*self.matrix)))

    def __call__(self, v: Sequence) -> tuple:
        return tuple(dot(row, v) for row in self.matrix)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        cols = list(zip(*other.matrix))
        return LinearMap([[dot(row, c) for c in cols] for row in self.matrix])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"LinearMap({[[str(x) for x in r] for r in self.matrix]})"
