"""Generators, identity checks, classification extraction and property suites."""

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
from .suites import NAMED_ZETAS, SUITES, named_zeta, run_suite

__all__ = [
    "BlackBoxValuation",
    "CheckReport",
    "Generator",
    "NAMED_ZETAS",
    "NotClassifiable",
    "SUITES",
    "check_contravariance",
    "check_dissection",
    "check_simplex_formula",
    "check_diagonal_limit",
    "check_simplicity",
    "check_valuation",
    "extract_classification",
    "named_zeta",
    "random_cut",
    "random_polytope",
    "random_simplex",
    "random_unimodular",
    "random_vector",
    "round_trip",
    "run_suite",
]
