"""Exact algebra in t = sqrt(x): polynomials, radicals, expansion, Sturm counts."""
from .expand import expand_combination, poly_gcd, profile
from .grammar import format_poly, format_radical, parse_poly, parse_radical
from .polynomial import (
    ONE,
    T,
    UNIT_ROOT,
    RationalPolynomial,
    factor_unit_root,
    nonneg_coeffs,
    proportional,
    unit_root_multiplicity,
)
from .radical import (
    R1_SQUARE,
    R2_SQUARE,
    RadicalExpression,
    proportional_radical,
    square_compare,
)
from .sturm import SturmReport, isolate_roots, sturm_chain, sturm_count

__all__ = [
    "ONE", "T", "UNIT_ROOT", "R1_SQUARE", "R2_SQUARE",
    "RationalPolynomial", "RadicalExpression", "SturmReport",
    "expand_combination", "profile", "poly_gcd",
    "factor_unit_root", "unit_root_multiplicity", "nonneg_coeffs", "proportional",
    "proportional_radical", "square_compare",
    "sturm_count", "sturm_chain", "isolate_roots",
    "parse_poly", "parse_radical", "format_poly", "format_radical",
]
