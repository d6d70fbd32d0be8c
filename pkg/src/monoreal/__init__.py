"""Realization plans for graded monomial ideal rings Z[x] (x) Lambda[y] / I.

Parsing, Hilbert functions, polarization, Stanley-Reisner complexes, Tor over
the integers, and an end-to-end verification pipeline.
"""

from .monomial import (
    HilbertFunction,
    Monomial,
    MonomialIdeal,
    MonomialRing,
    VariableTable,
    hilbert_function,
    minimalize,
    standard_monomials,
)
from .parser import ParseError, format_presentation, parse_presentation
from .plan import RealizationPlan, emit_plan
from .polarization import check_rank_identity, check_regular_sequence, polarize
from .verify import VerificationReport, golden_example, verify, verify_plan

__all__ = [
    "HilbertFunction", "Monomial", "MonomialIdeal", "MonomialRing", "VariableTable",
    "hilbert_function", "minimalize", "standard_monomials",
    "ParseError", "format_presentation", "parse_presentation",
    "RealizationPlan", "emit_plan",
    "check_rank_identity", "check_regular_sequence", "polarize",
    "VerificationReport", "golden_example", "verify", "verify_plan",
]
