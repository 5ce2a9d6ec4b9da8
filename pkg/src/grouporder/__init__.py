"""Decide orderability questions for finitely presented groups with a built-in prover and model finder."""

__version__ = "0.1.0"
