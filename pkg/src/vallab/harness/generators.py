"""Seeded random polytopes, simplices, unimodular maps and cuts.

Each trial draws from its own numpy stream seeded by ``(seed, trial)``, so a
trial can be replayed in isolation and trials can run in any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from ..linalg import LinearMap, dot, rank
from ..polytope import Hyperplane, Polytope, hull
from ..scalar import QuadScalar

__all__ = [
    "Generator",
    "random_cut",
    "random_polytope",
    "random_simplex",
    "random_unimodular",
    "random_vector",
]

_MASK = (1 << 64) - 1


@dataclass
class Generator:
    seed: int = 0
    ambient_dim: int = 3
    scalar_mode: str = "rational"
    max_vertices: int = 12
    max_coord: int = 3
    max_den: int = 8
    degenerate_rate: float = 0.15
    trial: int = 0
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.scalar_mode not in ("rational", "quad"):
            raise ValueError(f"unknown scalar mode {self.scalar_mode!r}")
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        self.rng = np.random.default_rng([self.seed & _MASK, self.trial])

    def for_trial(self, k: int) -> Generator:
        """Fresh generator for trial ``k`` with the same parameters."""
        return replace(self, trial=k)

    # primitive draws

    def integer(self, lo: int, hi: int) -> int:
        return int(self.rng.integers(lo, hi + 1))

    def rational(self, bound=None, positive: bool = False) -> Fraction:
        bound = self.max_coord if bound is None else bound
        den = self.integer(1, self.max_den)
        lo = 1 if positive else -bound * den
        return Fraction(self.integer(lo, bound * den), den)

    def scalar(self, bound=None, positive: bool = False):
        a = self.rational(bound, positive)
        if self.scalar_mode == "quad" and self.rng.random() < 0.5:
            b = Fraction(self.integer(-2, 2), self.integer(1, 4))
            q = QuadScalar(a, b)
            if positive and q <= 0:
                q = QuadScalar(a, -b) if QuadScalar(a, -b) > 0 else QuadScalar(a)
            return q
        return a

    def choice(self, seq):
        return seq[self.integer(0, len(seq) - 1)]


def random_vector(gen: Generator, nonzero: bool = True) -> tuple:
    while True:
        v = tuple(gen.scalar() for _ in range(gen.ambient_dim))
        if not nonzero or any(c != 0 for c in v):
            return v


def random_unimodular(gen: Generator) -> LinearMap:
    """Product of one to six integer shears with entries in [-3, 3]."""
    n = gen.ambient_dim
    phi = LinearMap.identity(n)
    if n == 1:
        return phi
    for _ in range(gen.integer(1, 6)):
        i = gen.integer(0, n - 1)
        j = gen.integer(0, n - 2)
        j += j >= i
        c = gen.integer(-3, 3) or 1
        phi = LinearMap.shear(n, i, j, c) @ phi
    return phi


def _independent(gen: Generator, d: int, bound: int = 3) -> list:
    n = gen.ambient_dim
    while True:
        dirs = [tuple(gen.rational(bound) for _ in range(n)) for _ in range(d)]
        if rank(dirs) == d:
            return dirs


def random_simplex(gen: Generator, d: int, with_origin: bool | None = None) -> Polytope:
    """A d-simplex in R^n.  ``with_origin``: True puts o in the simplex
    (as a vertex or an interior point), False keeps o outside, None draws it."""
    n = gen.ambient_dim
    if not 0 <= d <= n:
        raise ValueError("simplex dimension out of range")
    if with_origin is None:
        with_origin = bool(gen.integer(0, 1))
    zero = tuple(Fraction(0) for _ in range(n))
    while True:
        dirs = _independent(gen, d)
        if with_origin:
            if d > 0 and gen.integer(0, 1):
                # o at a rational interior point: subtract a convex combination
                w = [Fraction(gen.integer(1, 4)) for _ in range(d + 1)]
                tot = sum(w)
                pts = [zero] + dirs
                c = [sum(wi * p[k] for wi, p in zip(w, pts)) / tot for k in range(n)]
                pts = [tuple(p[k] - c[k] for k in range(n)) for p in pts]
            else:
                pts = [zero] + dirs
        else:
            base = random_vector(gen)
            pts = [base] + [tuple(b + v for b, v in zip(base, dv)) for dv in dirs]
        P = hull(pts, n=n)
        if P.dim == d and (with_origin == P.origin_status[0]):
            return P


def random_polytope(gen: Generator, contains_origin: bool = False, allow_degenerate: bool = True) -> Polytope:
    """Hull of up to ``max_vertices`` random points; occasionally lower-dimensional."""
    n = gen.ambient_dim
    m = gen.integer(n + 1, max(n + 1, gen.max_vertices))
    zero = tuple(Fraction(0) for _ in range(n))
    if allow_degenerate and gen.rng.random() < gen.degenerate_rate:
        d = gen.integer(0, n - 1)
        base = zero if contains_origin else random_vector(gen, nonzero=False)
        dirs = _independent(gen, d) if d else []
        pts = [base]
        for _ in range(m - 1):
            coef = [gen.rational(1) for _ in dirs]
            pts.append(tuple(base[k] + sum(c * v[k] for c, v in zip(coef, dirs)) for k in range(n)))
        return hull(pts, n=n)
    while True:
        pts = [tuple(gen.scalar() for _ in range(n)) for _ in range(m)]
        if contains_origin:
            pts.append(zero)
        P = hull(pts, n=n)
        if P.dim == n or allow_degenerate:
            return P


def random_cut(gen: Generator, P: Polytope, through_origin: bool = False) -> Hyperplane:
    """Hyperplane with a random integer normal.  General cuts pass through P
    (offset between the extreme values of the normal on P)."""
    n = gen.ambient_dim
    while True:
        u = tuple(gen.integer(-3, 3) for _ in range(n))
        if any(u):
            break
    if through_origin or P.is_empty:
        return Hyperplane(u, 0)
    vals = sorted(dot(u, v) for v in P.vertices)
    lo, hi = vals[0], vals[-1]
    if lo == hi:
        return Hyperplane(u, lo)
    w = Fraction(gen.integer(0, 8), 8)
    return Hyperplane(u, lo + w * (hi - lo))

