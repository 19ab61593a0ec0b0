"""Discrete measures on facet normals: cone-volume and surface area measures,
volume, and the projection function V_1(P, [-x, x])."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import dot
from .polytope import Polytope
from .scalar import Scalar, scalar_sign

__all__ = [
    "DiscreteNormalMeasure",
    "cone_volume_measure",
    "normals_o",
    "projection_mixed",
    "surface_area_measure",
    "volume",
]


@dataclass(frozen=True)
class DiscreteNormalMeasure:
    """Finite signed measure on primitive normal directions.

    ``kind`` is ``"cone_volume"`` or ``"normalized_area"``.  Zero atoms are
    dropped on construction.
    """

    atoms: dict = field(default_factory=dict)
    kind: str = "cone_volume"

    def __post_init__(self) -> None:
        if self.kind not in ("cone_volume", "normalized_area"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        object.__setattr__(self, "atoms", {u: w for u, w in self.atoms.items() if w != 0})

    def total(self) -> Scalar:
        return sum(self.atoms.values(), Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)


def cone_volume_measure(P: Polytope) -> DiscreteNormalMeasure:
    atoms: dict = {}
    for f in P.facets:
        atoms[f.normal] = atoms.get(f.normal, 0) + f.cone_volume
    return DiscreteNormalMeasure(atoms, "cone_volume")


def surface_area_measure(P: Polytope) -> DiscreteNormalMeasure:
    """Atoms ``normal -> normalized_area``; the true facet area is
    ``normalized_area * |normal|`` (see ``FacetData.area``)."""
    return DiscreteNormalMeasure({f.normal: f.normalized_area for f in P.facets}, "normalized_area")


def normals_o(P: Polytope) -> set:
    """Facet normals whose facet's affine hull misses the origin."""
    return {f.normal for f in P.facets if f.support != 0}


def volume(P: Polytope) -> Scalar:
    if P.is_empty or P.dim < P.ambient_dim:
        return Fraction(0)
    return sum((f.cone_volume for f in P.facets), Fraction(0))


def projection_mixed(P: Polytope, x: Sequence) -> Scalar:
    """``V_1(P, [-x, x]) = (1/n) sum |x . u| dS_P(u)`` from facet data."""
    if all(c == 0 for c in x):
        raise ValueError("projection function needs x != 0")
    if len(x) != P.ambient_dim:
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    for f in P.facets:
        t = dot(x, f.normal)
        if t:
            total = total + (t if scalar_sign(t) > 0 else -t) * f.normalized_area
    return total / P.ambient_dim
