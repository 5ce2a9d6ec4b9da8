"""Finite model search and exhaustive model checking."""

from .check import ModelCheck, VocabularyMismatch, check_clause, check_model, evaluate, extract_true_inequalities
from .model import FiniteModel, ModelFormatError
from .search import (
    FinderReport, SearchBudget, SizeOutcome, enumerate_models, find_model, find_model_report,
    has_group_axioms, search_size,
)

__all__ = [
    "ModelCheck", "VocabularyMismatch", "check_clause", "check_model", "evaluate",
    "extract_true_inequalities", "FiniteModel", "ModelFormatError", "FinderReport", "SearchBudget",
    "SizeOutcome", "enumerate_models", "find_model", "find_model_report", "has_group_axioms",
    "search_size",
]
