"""Multivariate partial fractions through Gröbner bases.

A rational function with denominator factors d_1..d_n is rewritten in
the polynomial ring extended by inverse symbols q_i, reduced to normal
form modulo the relations q_i*d_i = 1 under a block order that ranks
denser q-monomials higher, and read back as a sum of partial fractions.
The package also carries the classical decomposition along common zeros
and algebraic independence, numeric denominator guessing for
reconstruction workflows, an expression frontend with a command line,
and exporters for Singular and Form.
"""

from .errors import (PartfracError, RingError, DivisionError, ParseError,
                     UnknownFactorError, NotFittedError, AnchorError,
                     ReconstructionError)
from .ring import VarTable, Polynomial, poly_to_string, gcd, divexact, lcm
from .order import (MonomialOrder, apart_order, parse_order_spec,
                    format_order_spec, promote_spurious)
from .groebner import Ideal, GroebnerBasis, buchberger, normal_form
from .apart import (RationalFunction, DenominatorSet, AbbreviatedExpression,
                    Decomposition, normalize_and_factor, square_free_split,
                    abbreviate_denominators, apart_basis, apart_reduce,
                    apart_reduce_iterated, restore,
                    multivariate_abbreviated_apart, multivariate_apart)
from .leinartas import (leinartas_decompose, verify_leinartas_form,
                        LeinartasTerm, have_common_zero,
                        is_algebraically_independent, annihilator,
                        nullstellensatz_cofactors, iterated_univariate_apart,
                        spurious_factors)
from .reconstruct import (rational_image, crt_combine, rational_reconstruct,
                          AnchorPoint, anchor_at, find_anchor,
                          DenominatorGuess, guess_denominator,
                          deflate_and_reconstruct_univariate,
                          blind_reconstruct_univariate, StreamOracle)
from .estimator import PartialFractionDecomposer

__version__ = "0.1.0"

__all__ = [
    "PartfracError", "RingError", "DivisionError", "ParseError",
    "UnknownFactorError", "NotFittedError", "AnchorError",
    "ReconstructionError",
    "VarTable", "Polynomial", "poly_to_string", "gcd", "divexact", "lcm",
    "MonomialOrder", "apart_order", "parse_order_spec", "format_order_spec",
    "promote_spurious",
    "Ideal", "GroebnerBasis", "buchberger", "normal_form",
    "RationalFunction", "DenominatorSet", "AbbreviatedExpression",
    "Decomposition", "normalize_and_factor", "square_free_split",
    "abbreviate_denominators", "apart_basis", "apart_reduce",
    "apart_reduce_iterated", "restore", "multivariate_abbreviated_apart",
    "multivariate_apart",
    "leinartas_decompose", "verify_leinartas_form", "LeinartasTerm",
    "have_common_zero", "is_algebraically_independent", "annihilator",
    "nullstellensatz_cofactors", "iterated_univariate_apart",
    "spurious_factors",
    "rational_image", "crt_combine", "rational_reconstruct", "AnchorPoint",
    "anchor_at", "find_anchor", "DenominatorGuess", "guess_denominator",
    "deflate_and_reconstruct_univariate", "blind_reconstruct_univariate",
    "StreamOracle",
    "PartialFractionDecomposer",
    "__version__",
]
