"""Terms, clauses, unification and the Knuth-Bendix ordering."""

from .kbo import EQUAL, GREATER, INCOMPARABLE, KBO, LESS, kbo_compare
from .terms import (
    CIRCULAR_PRED, CONE_PRED, E, EQ, IDENTITY, INVERSE, ORDER_PRED, PRODUCT,
    Clause, ClauseSet, Literal, Symbol, Term, Vocabulary, VocabularyError,
    atom_str, const, encode_power, eq, inv, is_ground, is_var, is_variant,
    literal_str, mul, neg, normalize, normalize_literals, pos, term_size, term_str,
)
from .unify import apply, match, subsumes, unify

__all__ = [
    "CIRCULAR_PRED", "CONE_PRED", "E", "EQ", "IDENTITY", "INVERSE", "ORDER_PRED", "PRODUCT",
    "Clause", "ClauseSet", "Literal", "Symbol", "Term", "Vocabulary", "VocabularyError",
    "atom_str", "const", "encode_power", "eq", "inv", "is_ground", "is_var", "is_variant",
    "literal_str", "mul", "neg", "normalize", "normalize_literals", "pos", "term_size", "term_str",
    "EQUAL", "GREATER", "INCOMPARABLE", "KBO", "LESS", "kbo_compare",
    "apply", "match", "subsumes", "unify",
]
