"""Exact multivariate polynomial and rational-function arithmetic."""

from .polynomial import Polynomial
from .rational import RationalFunction, as_rational, poly_arith
from .residue import laurent_at_infinity, residue_at_infinity, residue_scaling_check
from .text import ParseError, format_polynomial, format_rational, parse, parse_polynomial, to_text
from .variables import EPS, HBAR, THETA, Variable, variables
from .weights import KClass, WeightForm, ZeroWeightError, euler_plain, euler_theta, pochhammer

__all__ = [
    "Polynomial", "RationalFunction", "as_rational", "poly_arith",
    "laurent_at_infinity", "residue_at_infinity", "residue_scaling_check",
    "ParseError", "format_polynomial", "format_rational", "parse", "parse_polynomial", "to_text",
    "EPS", "HBAR", "THETA", "Variable", "variables",
    "KClass", "WeightForm", "ZeroWeightError", "euler_plain", "euler_theta", "pochhammer",
]
