"""Exact verification tools for cyclic difference sets, circulant Hadamard
matrices and Barker sequences."""

from .errors import BudgetError, UsageError
from .polyalg import GREVLEX, LEX, CyclotomicElement, MonomialOrder, MultiPoly, parse_poly

__all__ = [
    "BudgetError",
    "CyclotomicElement",
    "GREVLEX",
    "LEX",
    "MonomialOrder",
    "MultiPoly",
    "UsageError",
    "parse_poly",
]
