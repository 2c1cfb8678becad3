"""Exact polynomial arithmetic over F_p, Groebner bases and ideal operations."""

from .ring import DEFAULT_PRIME, Ring, RingError, ring_R, ring_S
from .poly import Poly
from .parse import ParseError, parse_poly
from .ideal import (
    Ideal,
    codimension,
    dimension,
    groebner,
    hilbert_function,
    ideal_quotient,
    intersect,
    is_irrelevant,
    membership,
    quotient_by_variable,
    saturation_check,
)
from .matrix import determinant, minors, submatrix

__all__ = [
    "DEFAULT_PRIME", "Ring", "RingError", "ring_R", "ring_S", "Poly", "ParseError",
    "parse_poly", "Ideal", "codimension", "dimension", "groebner", "hilbert_function",
    "ideal_quotient", "intersect", "is_irrelevant", "membership", "quotient_by_variable",
    "saturation_check", "determinant", "minors", "submatrix",
]
