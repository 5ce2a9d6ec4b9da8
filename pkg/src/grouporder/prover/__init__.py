"""Refutation prover with checkable proofs."""

from .proof import CheckResult, Proof, ProofStep, verify_proof
from .saturate import (
    REFUTATION, RESOURCE_OUT, SATURATED, ProverOutcome, SaturationLimits, saturate,
)

__all__ = ["CheckResult", "Proof", "ProofStep", "verify_proof", "REFUTATION", "RESOURCE_OUT",
           "SATURATED", "ProverOutcome", "SaturationLimits", "saturate"]
