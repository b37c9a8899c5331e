"""Exact polynomial toolkit for power-gap identities and substitution invariants."""

from .exact_arith import CycloField, CycloNum, Rational, cyclotomic_polynomial, root_of_unity_order
from .expr_io import ExprContext, ParseError, format_poly, parse
from .kernels import BACKEND
from .multipoly import MPoly, PolyContext

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CycloField",
    "CycloNum",
    "ExprContext",
    "MPoly",
    "ParseError",
    "PolyContext",
    "Rational",
    "cyclotomic_polynomial",
    "format_poly",
    "parse",
    "root_of_unity_order",
]
