"""Exact evaluation and verification of SL(n) contravariant valuations on polytopes."""

from .linalg import LinearMap
from .measures import (
    DiscreteNormalMeasure,
    cone_volume_measure,
    normals_o,
    projection_mixed,
    surface_area_measure,
    volume,
)
from .polytope import (
    FacetData,
    Hyperplane,
    Polytope,
    apply_linear,
    contains_origin,
    contains_origin_relint,
    cut,
    hull,
    hull_with_origin,
    simplex,
    support,
)
from .scalar import SQRT2, CauchyFunctional, QuadScalar, as_scalar
from .tensors import SymTensor, act_inverse_transpose, contract, m0p
from .valuations import (
    AbsPower,
    ClassificationData,
    DomainError,
    MinusPower,
    PlusPower,
    Polynomial,
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

__version__ = "0.1.0"
