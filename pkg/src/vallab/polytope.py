"""Exact V-polytopes with cached facet data.

Full-dimensional hulls come from qhull in floating point, but only as
proposals: every proposed facet is rebuilt from its defining points with
exact arithmetic, checked against all points, and the facet set is certified
complete by verifying that each ridge is shared by exactly two facets.  If
qhull fails or certification does not go through, the hull falls back to
exact enumeration of affinely spanning n-subsets.  Polygons use a monotone
chain.

Facet normals are primitive integer vectors (canonical positive rescalings in
Q(sqrt 2) mode) and are never normalized.  Every formula downstream is either
scale invariant in the normal or expressed through ``normalized_area``
(facet area divided by the Euclidean length of the stored normal), so no
square root ever enters the exact kernel.

Rational inputs are scaled to a common integer grid before enumeration, which
keeps the inner loops in Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, factorial, lcm, sqrt
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .linalg import LinearMap, cross, dot, primitive, rank, row_reduce
from .scalar import QuadScalar, Scalar, as_scalar, scalar_sign

__all__ = [
    "FacetData",
    "Hyperplane",
    "Polytope",
    "apply_linear",
    "contains_origin",
    "contains_origin_relint",
    "cut",
    "dim",
    "euler",
    "hausdorff_distance_approx",
    "hull",
    "hull_with_origin",
    "simplex",
    "support",
]

Vector = tuple


@dataclass(frozen=True)
class FacetData:
    """One facet: outward primitive normal, support, area data, signed cone volume.

    ``normalized_area`` is the facet's (n-1)-volume divided by ``|normal|``;
    ``cone_volume`` equals ``support * normalized_area / n`` and is the signed
    volume of the cone from the origin over the facet.
    """

    normal: tuple
    support: Scalar
    normalized_area: Scalar
    cone_volume: Scalar
    vertex_indices: tuple

    @property
    def normal_sq(self) -> Scalar:
        return dot(self.normal, self.normal)

    def area(self) -> float:
        """Facet area as a float (exact value is ``normalized_area * |normal|``)."""
        return float(self.normalized_area) * sqrt(float(self.normal_sq))


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x = offset}``; ``H-`` is ``<=``, ``H+`` is ``>=``."""

    normal: tuple
    offset: Scalar = Fraction(0)

    def __post_init__(self) -> None:
        normal = tuple(as_scalar(c) for c in self.normal)
        if all(c == 0 for c in normal):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", as_scalar(self.offset))

    def side(self, v: Sequence) -> int:
        return scalar_sign(dot(self.normal, v) - self.offset)


def _div(a, b):
    """Exact quotient; stays an int when an integer division is exact."""
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return a / b


def _frac(a, b):
    if isinstance(a, QuadScalar):
        return a / b
    return Fraction(a) / b


def _side_scan(nv, off, pts, early_exit: bool):
    pos = neg = False
    on = 0
    for k, p in enumerate(pts):
        s = dot(nv, p) - off
        if s > 0:
            pos = True
            if neg and early_exit:
                break
        elif s < 0:
            neg = True
            if pos and early_exit:
                break
        else:
            on |= 1 << k
    return pos, neg, on


def _oriented(nv, off, pos):
    if pos:
        nv = tuple(-c for c in nv)
        off = -off
    normal = primitive(nv)
    j = next(i for i, c in enumerate(normal) if c != 0)
    return normal, _div(off * normal[j], nv[j])


def _full_facets(pts: list, n: int) -> list:
    """Facet hyperplanes of the hull of ``pts`` (affinely spanning R^n).

    Returns ``(normal, offset, on_mask)`` triples with outward canonical
    normals; ``on_mask`` has bit k set iff ``pts[k]`` lies on the facet.
    """
    found = []
    masks: list[int] = []
    for combo in combinations(range(len(pts)), n):
        cmask = 0
        for k in combo:
            cmask |= 1 << k
        if any(cmask & fm == cmask for fm in masks):
            continue
        p0 = pts[combo[0]]
        nv = cross([[a - b for a, b in zip(pts[k], p0)] for k in combo[1:]])
        if all(c == 0 for c in nv):
            continue
        off = dot(nv, p0)
        pos, neg, on = _side_scan(nv, off, pts, early_exit=True)
        if pos and neg:
            continue
        normal, off = _oriented(nv, off, pos)
        found.append((normal, off, on))
        masks.append(on)
    return found


def _qhull_facets(pts: list, n: int):
    """Facet hyperplanes proposed by qhull in floating point, each re-derived
    and validated exactly.  Returns None when qhull fails or a proposal does
    not survive the exact test; completeness is certified by the caller."""
    try:
        qh = ConvexHull(np.array([[float(c) for c in p] for p in pts]))
    except (QhullError, ValueError):
        return None
    found = {}
    for simp in qh.simplices:
        p0 = pts[simp[0]]
        nv = cross([[a - b for a, b in zip(pts[k], p0)] for k in simp[1:]])
        if all(c == 0 for c in nv):
            continue
        off = dot(nv, p0)
        pos, neg, on = _side_scan(nv, off, pts, early_exit=True)
        if pos and neg:
            return None
        normal, off = _oriented(nv, off, pos)
        if normal not in found:
            found[normal] = (normal, off, on)
    return list(found.values())


def _vertex_indices(m: int, raw: list) -> list[int]:
    full = (1 << m) - 1
    out = []
    for k in range(m):
        bit = 1 << k
        meet = full
        hit = False
        for _, _, on in raw:
            if on & bit:
                meet &= on
                hit = True
        if hit and meet == bit:
            out.append(k)
    return out


def _facet_measure(normal: tuple, idx: list, pts: list, n: int):
    """``(W, |normal_i|, ridges)`` for one facet.

    ``W`` is ``(n-1)!`` times the volume of the facet projected along a
    coordinate ``i`` with ``normal_i != 0``; the normalized area is
    ``W / ((n-1)! |normal_i|)``.  Ridges are sets of indices into ``pts``.
    """
    i = next(k for k, c in enumerate(normal) if c != 0)
    nu = abs(normal[i])
    if n == 1:
        return 1, nu, []
    proj = [pts[k][:i] + pts[k][i + 1:] for k in idx]
    if n == 2:
        xs = [p[0] for p in proj]
        lo, hi = min(xs), max(xs)
        ridges = [frozenset([idx[xs.index(lo)]]), frozenset([idx[xs.index(hi)]])]
        return hi - lo, nu, ridges
    _, sub = _full_hull(proj, n - 1)
    ridges = [frozenset(idx[k] for k in f[4]) for f in sub]
    return _scaled_volume(sub), nu, ridges


def _scaled_volume(facets: list):
    """``d!`` times the volume, from facet tuples of a d-polytope.

    Each term is ``d!`` times the signed cone volume over a facet, an integer
    for lattice polytopes, so integer inputs stay in Python ints.
    """
    return sum(_div(off * w, nu) for _, off, w, nu, _ in facets)


def _assemble(pts: list, n: int, raw: list):
    facets = []
    ridge_count: dict = {}
    for normal, off, on in raw:
        idx = [k for k in range(len(pts)) if on >> k & 1]
        w, nu, ridges = _facet_measure(normal, idx, pts, n)
        for r in ridges:
            ridge_count[r] = ridge_count.get(r, 0) + 1
        facets.append((normal, off, w, nu, idx))
    return facets, ridge_count


_BRUTE_LIMIT = 80


def _polygon_facets(pts: list) -> list:
    """Edges of a full-dimensional polygon via Andrew's monotone chain."""
    order = sorted(range(len(pts)), key=lambda k: pts[k])

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(indices):
        out: list[int] = []
        for k in indices:
            while len(out) >= 2 and turn(pts[out[-2]], pts[out[-1]], pts[k]) <= 0:
                out.pop()
            out.append(k)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    ring = lower[:-1] + upper[:-1]
    raw = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        pa, pb = pts[a], pts[b]
        # counterclockwise ring: outward normal is the edge rotated clockwise
        nv = (pb[1] - pa[1], pa[0] - pb[0])
        off = dot(nv, pa)
        on = 0
        for k, p in enumerate(pts):
            if dot(nv, p) == off:
                on |= 1 << k
        raw.append((*_oriented(nv, off, False), on))
    return raw


def _full_hull(pts: list, n: int):
    """Vertex indices and facet tuples ``(normal, offset, W, nu, on_indices)``."""
    raw = None
    if n == 2:
        raw = _polygon_facets(pts)
        facets, _ = _assemble(pts, n, raw)
        return _vertex_indices(len(pts), raw), facets
    if n >= 2 and comb(len(pts), n) > _BRUTE_LIMIT:
        raw = _qhull_facets(pts, n)
        if raw is not None:
            facets, ridges = _assemble(pts, n, raw)
            # closed boundary: every ridge shared by exactly two facets
            if not ridges or any(c != 2 for c in ridges.values()):
                raw = None
    if raw is None:
        raw = _full_facets(pts, n)
        facets, _ = _assemble(pts, n, raw)
    return _vertex_indices(len(pts), raw), facets


def _dedupe(points: Iterable[Sequence]) -> list[tuple]:
    seen = set()
    out = []
    for p in points:
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


class Polytope:
    """Convex hull of finitely many points, built by :func:`hull`.

    ``vertices`` are the extreme points; ``facets`` follows the conventions:
    full-dimensional polytopes list their (n-1)-faces, polytopes of dimension
    n-1 carry two facets with opposite normals, lower dimensions carry none.
    The empty polytope has ``dim == -1``.
    """

    def __init__(self, ambient_dim, vertices, facets, dim, chart=None, origin_in_aff=None):
        self.ambient_dim = ambient_dim
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)
        self.dim = dim
        # (normals, offsets, vertex-index sets) of the facets in the affine
        # hull, used for relint tests and edge detection
        self._chart = chart
        self._origin_in_aff = origin_in_aff

    @classmethod
    def empty(cls, n: int) -> Polytope:
        return cls(n, (), (), -1, chart=((), (), ()), origin_in_aff=False)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def scalar_mode(self) -> str:
        quad = any(isinstance(c, QuadScalar) for v in self.vertices for c in v)
        return "quad" if quad else "rational"

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertex_set() == other.vertex_set()

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertex_set()))

    def __repr__(self) -> str:
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope(n={self.ambient_dim}, dim={self.dim}, vertices=[{verts}])"

    @cached_property
    def edges(self) -> tuple:
        """Vertex index pairs spanning edges."""
        if self.dim < 1:
            return ()
        normals, _, sets = self._chart
        d = self.dim
        out = []
        m = len(self.vertices)
        for i in range(m):
            for j in range(i + 1, m):
                common = [normals[k] for k, s in enumerate(sets) if i in s and j in s]
                if (rank(common) if common else 0) == d - 1:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def with_origin(self) -> Polytope:
        return hull(list(self.vertices) + [tuple(Fraction(0) for _ in range(self.ambient_dim))],
                    n=self.ambient_dim)

    @cached_property
    def origin_status(self) -> tuple[bool, bool]:
        """``(o in P, o in relint P)``."""
        if self.is_empty or not self._origin_in_aff:
            return False, False
        if self.dim == 0:
            return True, True
        _, offsets, _ = self._chart
        signs = [scalar_sign(h) for h in offsets]
        return all(s >= 0 for s in signs), all(s > 0 for s in signs)


def hull(points: Iterable[Sequence], n: int | None = None) -> Polytope:
    """Exact convex hull of ``points`` with facet data."""
    pts = [tuple(as_scalar(c) for c in p) for p in points]
    if not pts:
        if n is None:
            raise ValueError("ambient dimension needed for an empty point set")
        return Polytope.empty(n)
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise ValueError(f"points of mixed dimension {sorted(dims)}")
    amb = dims.pop()
    if n is not None and n != amb:
        raise ValueError(f"points live in R^{amb}, expected R^{n}")
    pts = _dedupe(pts)

    quad = any(isinstance(c, QuadScalar) and not c.is_rational for p in pts for c in p)
    if quad:
        scale = 1
        work = [tuple(c if isinstance(c, QuadScalar) else QuadScalar(c) for c in p) for p in pts]
    else:
        pts = [tuple(c.a if isinstance(c, QuadScalar) else c for c in p) for p in pts]
        scale = 1
        for p in pts:
            for c in p:
                scale = lcm(scale, c.denominator)
        work = [tuple(int(c * scale) for c in p) for p in pts]

    p0 = work[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in work[1:]]
    red, piv = row_reduce(diffs) if diffs else ([], [])
    d = len(piv)

    fact_n = factorial(amb)
    fact_nm1 = factorial(amb - 1)

    def true_facet(normal, off, w, nu, idx):
        return FacetData(
            normal=normal,
            support=_frac(off, scale),
            normalized_area=_frac(w, fact_nm1 * nu * scale ** (amb - 1)),
            cone_volume=_frac(off * w, fact_n * nu * scale ** amb),
            vertex_indices=tuple(idx),
        )

    if d == amb:
        verts, facets = _full_hull(work, amb)
        remap = {k: i for i, k in enumerate(verts)}
        out_facets = [
            true_facet(nm, off, w, nu, [remap[k] for k in idx if k in remap])
            for nm, off, w, nu, idx in facets
        ]
        chart = (
            tuple(f.normal for f in out_facets),
            tuple(f.support for f in out_facets),
            tuple(frozenset(f.vertex_indices) for f in out_facets),
        )
        return Polytope(amb, [pts[k] for k in verts], out_facets, d, chart, True)

    origin_in_aff = rank(diffs + [list(p0)]) == d if diffs else all(c == 0 for c in p0)
    if d == 0:
        return Polytope(amb, [pts[0]], (), 0, ((), (), ()), origin_in_aff)

    # work in the coordinate chart given by the pivot columns, which is
    # injective on the affine hull
    proj = [tuple(p[c] for c in piv) for p in work]
    verts, cfacets = _full_hull(proj, d)
    remap = {k: i for i, k in enumerate(verts)}
    chart = (
        tuple(f[0] for f in cfacets),
        tuple(_frac(f[1], scale) for f in cfacets),
        tuple(frozenset(remap[k] for k in f[4] if k in remap) for f in cfacets),
    )
    vertices = [pts[k] for k in verts]
    facets: list[FacetData] = []
    if d == amb - 1:
        u = primitive(cross(red))
        i = next(k for k in range(amb) if k not in piv)
        h = dot(u, p0)
        w = _scaled_volume(cfacets)
        allidx = list(range(len(vertices)))
        facets.append(true_facet(u, h, w, abs(u[i]), allidx))
        facets.append(true_facet(tuple(-c for c in u), -h, w, abs(u[i]), allidx))
    return Polytope(amb, vertices, facets, d, chart, origin_in_aff)


def simplex(d: int, n: int, s=1, with_origin: bool = True) -> Polytope:
    """``s T^d = [o, s e_1, ..., s e_d]`` in R^n, or ``s[e_1, ..., e_d]`` without o."""
    s = as_scalar(s)
    pts = []
    if with_origin:
        pts.append(tuple(Fraction(0) for _ in range(n)))
    for i in range(d):
        pts.append(tuple(s if j == i else Fraction(0) for j in range(n)))
    return hull(pts, n=n)


def support(P: Polytope, u: Sequence) -> Scalar:
    if P.is_empty:
        raise ValueError("support function of the empty set is undefined")
    return max(dot(u, v) for v in P.vertices)


def _segment_point(v, w, sv, sw):
    t = sv / (sv - sw)
    return tuple(a + t * (b - a) for a, b in zip(v, w))


def cut(P: Polytope, H: Hyperplane) -> tuple[Polytope, Polytope, Polytope]:
    """``(P n H-, P n H+, P n H)``, all exact."""
    n = P.ambient_dim
    if len(H.normal) != n:
        raise ValueError("hyperplane and polytope dimensions differ")
    if P.is_empty:
        e = Polytope.empty(n)
        return e, e, e
    vals = [dot(H.normal, v) - H.offset for v in P.vertices]
    signs = [scalar_sign(s) for s in vals]
    minus = [v for v, s in zip(P.vertices, signs) if s <= 0]
    plus = [v for v, s in zip(P.vertices, signs) if s >= 0]
    on = [v for v, s in zip(P.vertices, signs) if s == 0]
    for i, j in P.edges:
        if signs[i] * signs[j] < 0:
            q = _segment_point(P.vertices[i], P.vertices[j], vals[i], vals[j])
            minus.append(q)
            plus.append(q)
            on.append(q)
    return hull(minus, n=n), hull(plus, n=n), hull(on, n=n)


def apply_linear(P: Polytope, phi: LinearMap) -> Polytope:
    if phi.n != P.ambient_dim:
        raise ValueError("map and polytope dimensions differ")
    if phi.det == 0:
        raise ValueError("singular linear map")
    return hull([phi(v) for v in P.vertices], n=P.ambient_dim)


def hull_with_origin(P: Polytope) -> Polytope:
    """``[P, o]``."""
    return P.with_origin


def contains_origin_relint(P: Polytope) -> bool:
    if P.is_empty:
        raise ValueError("relative interior of the empty set")
    return P.origin_status[1]


def contains_origin(P: Polytope) -> bool:
    return P.origin_status[0]


def dim(P: Polytope) -> int:
    return P.dim


def euler(P: Polytope) -> int:
    return 0 if P.is_empty else 1


def _directions(n: int, count: int = 512) -> np.ndarray:
    rng = np.random.default_rng(20240917)
    g = rng.standard_normal((count, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    axes = np.vstack([np.eye(n), -np.eye(n)])
    return np.vstack([axes, g])


def hausdorff_distance_approx(P: Polytope, Q: Polytope) -> float:
    """Max of ``|h_P(u) - h_Q(u)|`` over a fixed sample of unit directions.

    Approximate from below; exact whenever a maximizing direction is in the
    sample (always including the coordinate axes).
    """
    if P.is_empty or Q.is_empty:
        raise ValueError("Hausdorff distance needs nonempty polytopes")
    u = _directions(P.ambient_dim)
    vp = np.array([[float(c) for c in v] for v in P.vertices])
    vq = np.array([[float(c) for c in v] for v in Q.vertices])
    hp = (vp @ u.T).max(axis=0)
    hq = (vq @ u.T).max(axis=0)
    return float(np.abs(hp - hq).max())
