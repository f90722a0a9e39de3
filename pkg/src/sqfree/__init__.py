"""Ternary square-free words: enumeration, generating functions, substitutions, thermodynamics."""

from sqfree.words import (
    Word,
    LetterPermutation,
    SIGMA,
    has_square_suffix,
    is_square_free,
    is_length_l_square_free,
    permute,
    reverse,
    letter_counts,
)
from sqfree.errors import BudgetExceeded, ConsistencyError


__all__ = [
    "Word",
    "LetterPermutation",
    "SIGMA",
    "has_square_suffix",
    "is_square_free",
    "is_length_l_square_free",
    "permute",
    "reverse",
    "letter_counts",
    "BudgetExceeded",
    "ConsistencyError",
]
