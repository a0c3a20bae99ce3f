"""
Algebraic layer: Laurent polynomials, the Fock space, LLT columns and the
characteristic-p deductions built on them.
"""

from .charp import (
    CharpDeduction,
    DeductionStep,
    EntryKnowledge,
    deduce_charp_submatrix,
    restriction_bound,
)
from .column_cache import ColumnCache, configure_column_cache, get_column_cache
from .fock import FockVector, decomp_matrix, decomp_submatrix, llt_column
from .jantzen import jantzen_coeffs, jantzen_zero_deduction
from .laurent import ONE, V, ZERO, LaurentPoly

__all__ = [
    # Polynomials
    "LaurentPoly",
    "ZERO",
    "ONE",
    "V",
    # Fock space and LLT
    "FockVector",
    "llt_column",
    "decomp_submatrix",
    "decomp_matrix",
    # Column cache
    "ColumnCache",
    "get_column_cache",
    "configure_column_cache",
    # Jantzen
    "jantzen_coeffs",
    "jantzen_zero_deduction",
    # Characteristic p
    "CharpDeduction",
    "EntryKnowledge",
    "DeductionStep",
    "deduce_charp_submatrix",
    "restriction_bound",
]
