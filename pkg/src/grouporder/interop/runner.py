"""External artifacts and optional Prover9/Mace4 subprocess execution."""

from __future__ import annotations

import shutil
import subprocess
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

ARTIFACT_KINDS = ("prover9-input", "mace4-input", "tptp-cnf", "prover9-output", "mace4-output")
_SUFFIX = {"prover9-input": ".in", "mace4-input": ".in", "tptp-cnf": ".p",
           "prover9-output": ".out", "mace4-output": ".out"}


@dataclass
class ExternalArtifact:
    kind: str
    payload: str
    task_id: str

    def __post_init__(self):
        if self.kind not in ARTIFACT_KINDS:
            raise ValueError(f"unknown artifact kind {self.kind!r}")

    @property
    def filename(self) -> str:
        stem = self.task_id.replace("/", "_") or "task"
        return f"{stem}.{self.kind}{_SUFFIX[self.kind]}"

    def write(self, directory: Path) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / self.filename
        path.write_text(self.payload)
        return path


@dataclass
class ExternalRun:
    program: str
    returncode: Optional[int]
    stdout: str
    stderr: str
    seconds: float
    timed_out: bool


def find_binary(name: str, search_dir: Optional[str] = None) -> Optional[str]:
    """Path of ``name`` inside ``search_dir`` (a directory or the binary itself) or on PATH."""
    if search_dir:
        p = Path(search_dir)
        if p.is_file() and p.name == name:
            return str(p)
        if (p / name).is_file():
            return str(p / name)
        return None
    return shutil.which(name)


def run_external(binary: str, input_path: Path, timeout: float) -> ExternalRun:
    """Run ``binary -f input_path`` capturing both streams under a wall-clock timeout."""
    t0 = time.monotonic()
    try:
        proc = subprocess.run([binary, "-f", str(input_path)], capture_output=True, text=True,
                              timeout=timeout)
        return ExternalRun(binary, proc.returncode, proc.stdout, proc.stderr,
                           time.monotonic() - t0, False)
    except subprocess.TimeoutExpired as exc:
        out = exc.stdout.decode() if isinstance(exc.stdout, bytes) else (exc.stdout or "")
        err = exc.stderr.decode() if isinstance(exc.stderr, bytes) else (exc.stderr or "")
        return ExternalRun(binary, None, out, err, time.monotonic() - t0, True)
