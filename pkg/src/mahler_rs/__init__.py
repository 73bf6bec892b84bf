"""Decide whether a p-Mahler equation is regular singular at 0."""

from .algebraic import AlgElem, ExponentClass, NumberRing, SplitRequired, split_evaluate
from .decision import Verdict, is_regular_singular, p_sweep, twist_equation, two_slope_criterion
from .equation import MahlerEquation, equation, normalize_equation
from .errors import InvalidEquation, MahlerError, PrecisionError
from .local import LocalElem, local_divide
from .newton import Edge, NewtonPolygon, exponents, newton_polygon
from .parser import ParseError, parse_equation, parse_text
from .poly import Poly, factor_multiplicity, squarefree_decomposition
from .puiseux import PuiseuxPoly, cld, mahler_substitute, valuation

__version__ = "0.1.0"

__all__ = [
    "AlgElem", "Edge", "ExponentClass", "InvalidEquation", "LocalElem", "MahlerEquation",
    "MahlerError", "NewtonPolygon", "NumberRing", "ParseError", "Poly", "PrecisionError",
    "PuiseuxPoly", "SplitRequired", "Verdict", "cld", "equation", "exponents",
    "factor_multiplicity", "is_regular_singular", "local_divide", "mahler_substitute",
    "newton_polygon", "normalize_equation", "p_sweep", "parse_equation", "parse_text",
    "split_evaluate", "squarefree_decomposition", "twist_equation", "two_slope_criterion",
    "valuation",
]
