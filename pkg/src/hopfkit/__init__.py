"""Exact computations with unified products, braidings and coquasitriangular structures."""

from .exactmath import QQ, FunctionField, LinComb, LinMap, PrimeField, RationalField, field_from_tag
from .hopfcore import HopfAlgebra, check_hopf, dual, structure_equal
from .pairings import BilinearForm, check_braiding, check_skew_pairing
from .products import (
    ExtendingDatum,
    build_crossed_product,
    build_double_cross,
    build_gqd,
    build_unified_product,
    check_extending_structure,
)
from .report import AxiomResult, VerificationReport

__all__ = [
    "QQ", "FunctionField", "LinComb", "LinMap", "PrimeField", "RationalField", "field_from_tag",
    "HopfAlgebra", "check_hopf", "dual", "structure_equal",
    "BilinearForm", "check_braiding", "check_skew_pairing",
    "ExtendingDatum", "build_crossed_product", "build_double_cross", "build_gqd", "build_unified_product",
    "check_extending_structure", "AxiomResult", "VerificationReport",
]

__version__ = "0.1.0"
