"""Operator realizations: Weyl and shift backends, catalog, checks, orbit-10 series."""

from .catalog import CASE_IDS, DegenerateParams, Realization, catalog, relation_polys
from .check import BackendMismatch, ExpansionTooLarge, independence, monomial_rank, verify
from .operators import K, OperatorAlgebra, OperatorElement, UnsupportedSymbol, format_operator, sym, to_field
from .series import Case10Solution, SeriesElement, orbit10_cubic, solve_case10

__all__ = [
    "BackendMismatch",
    "CASE_IDS",
    "Case10Solution",
    "DegenerateParams",
    "ExpansionTooLarge",
    "K",
    "OperatorAlgebra",
    "OperatorElement",
    "Realization",
    "SeriesElement",
    "UnsupportedSymbol",
    "catalog",
    "format_operator",
    "independence",
    "monomial_rank",
    "orbit10_cubic",
    "relation_polys",
    "solve_case10",
    "sym",
    "to_field",
    "verify",
]
