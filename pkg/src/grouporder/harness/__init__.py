"""Task manifests, verdicts, catalog runs and the command line."""

from .manifest import ClosureFact, ManifestError, TaskSpec, load_manifests, parse_manifest
from .run import (
    ReportStore, RunOptions, TaskReport, discover_statements, execute_task, load_catalog, run_catalog,
    run_specs, run_task,
)
from .verdict import CONCLUSIONS, EngineOutcome, InterpretRefused, Verdict, interpret

__all__ = [
    "ClosureFact", "ManifestError", "TaskSpec", "load_manifests", "parse_manifest", "ReportStore",
    "RunOptions", "TaskReport", "discover_statements", "execute_task", "load_catalog", "run_catalog",
    "run_specs", "run_task", "CONCLUSIONS", "EngineOutcome", "InterpretRefused", "Verdict", "interpret",
]
