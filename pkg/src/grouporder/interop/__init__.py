"""Prover9/Mace4/TPTP emission, output parsing and external execution."""

from .ladr import (
    InteropError, LadrSyntaxError, Prover9Options, emit_mace4, emit_prover9, formula,
    parse_formula, read_ladr_input,
)
from .results import (
    PROVED, RESOURCE_OUT, SATURATED, OutputParseError, Prover9Result, format_mace4_model,
    parse_mace4_model, parse_prover9_output,
)
from .runner import ARTIFACT_KINDS, ExternalArtifact, ExternalRun, find_binary, run_external
from .tptp import emit_tptp

__all__ = [
    "InteropError", "LadrSyntaxError", "Prover9Options", "emit_mace4", "emit_prover9", "formula",
    "parse_formula", "read_ladr_input", "PROVED", "RESOURCE_OUT", "SATURATED", "OutputParseError",
    "Prover9Result", "format_mace4_model", "parse_mace4_model", "parse_prover9_output",
    "ARTIFACT_KINDS", "ExternalArtifact", "ExternalRun", "find_binary", "run_external", "emit_tptp",
]
