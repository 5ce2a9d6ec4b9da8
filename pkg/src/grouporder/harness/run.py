"""Task execution, the append-only report store and catalog runs."""

from __future__ import annotations

import fnmatch
import hashlib
import json
import tempfile
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..interop.ladr import InteropError, Prover9Options, emit_mace4, emit_prover9
from ..interop.results import PROVED, OutputParseError, parse_mace4_model, parse_prover9_output
from ..interop.runner import ExternalArtifact, find_binary, run_external
from ..interop.tptp import emit_tptp
from ..kernel.terms import ClauseSet, Term
from ..modelfinder.check import check_model, extract_true_inequalities
from ..modelfinder.model import FiniteModel, ModelFormatError
from ..modelfinder.search import SearchBudget, find_model_report
from ..presentation import Presentation, StatementSet, render_term
from ..prover.proof import verify_proof
from ..prover.saturate import REFUTATION as P_REFUTATION
from ..prover.saturate import SATURATED as P_SATURATED
from ..prover.saturate import SaturationLimits, saturate
from ..theories import TheoryError, compile_theory, standard_theory
from . import verdict as V
from .manifest import ManifestError, TaskSpec, cofinal_closure, load_manifests, topological

EXIT_OK, EXIT_UNKNOWN, EXIT_INPUT = 0, 2, 3
REFUSED = "refused"


@dataclass
class TaskReport:
    task_id: str
    status: str  # an engine outcome status or "refused"
    verdict: Optional[V.Verdict] = None
    exit_code: int = EXIT_UNKNOWN
    timings: Dict[str, float] = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)
    messages: List[str] = field(default_factory=list)
    expect: Optional[str] = None
    observed: str = ""
    case_refuted: bool = False

    @property
    def expect_met(self) -> Optional[bool]:
        """Regression check against the manifest's ``expect``; None when not applicable."""
        if self.expect is None or not self.observed:
            return None
        return self.observed == self.expect

    def to_dict(self) -> dict:
        return {"task_id": self.task_id, "status": self.status,
                "verdict": self.verdict.to_dict() if self.verdict else None,
                "exit_code": self.exit_code, "timings": self.timings, "artifacts": self.artifacts,
                "messages": self.messages, "expect": self.expect, "observed": self.observed,
                "expect_met": self.expect_met, "case_refuted": self.case_refuted}

    @classmethod
    def from_dict(cls, d: dict) -> "TaskReport":
        v = V.Verdict.from_dict(d["verdict"]) if d.get("verdict") else None
        return cls(d["task_id"], d["status"], v, d.get("exit_code", EXIT_UNKNOWN),
                   dict(d.get("timings", {})), dict(d.get("artifacts", {})),
                   list(d.get("messages", [])), d.get("expect"), d.get("observed", ""),
                   d.get("case_refuted", False))

    def line(self) -> str:
        v = self.verdict.describe() if self.verdict else self.status
        t = sum(self.timings.values())
        extra = ""
        if self.expect_met is not None:
            extra = "  expect ok" if self.expect_met else f"  EXPECTED {self.expect}, got {self.observed}"
        return f"{self.task_id:>6}  {self.status:<15} {t:8.2f}s  {v}{extra}"


class ReportStore:
    """Per-run directory of reports and artifacts with an index; entries are never rewritten."""

    def __init__(self, root: Path, run_name: Optional[str] = None):
        root = Path(root)
        stamp = run_name or "run-" + datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S")
        path, k = root / stamp, 1
        while run_name is None and path.exists():
            k += 1
            path = root / f"{stamp}-{k}"
        self.dir = path
        self.dir.mkdir(parents=True, exist_ok=True)
        self._index = self.dir / "index.json"
        if not self._index.exists():
            self._index.write_text(json.dumps({"tasks": []}, indent=1))

    @classmethod
    def open(cls, run_dir: Path) -> "ReportStore":
        run_dir = Path(run_dir)
        if not (run_dir / "index.json").exists():
            raise FileNotFoundError(f"{run_dir} is not a run directory")
        return cls(run_dir.parent, run_dir.name)

    def task_dir(self, task_id: str) -> Path:
        return self.dir / "tasks" / task_id.replace("/", "_")

    def write_artifact(self, task_id: str, name: str, text: str) -> str:
        d = self.task_dir(task_id)
        d.mkdir(parents=True, exist_ok=True)
        p = d / name
        if p.exists():
            raise FileExistsError(f"artifact {p} already recorded")
        p.write_text(text)
        return str(p)

    def record(self, report: TaskReport, artifacts: Sequence[Tuple[str, str, str]] = ()) -> TaskReport:
        """Write ``artifacts`` (key, filename, text) and the report, then index it."""
        index = json.loads(self._index.read_text())
        if report.task_id in [e["task_id"] for e in index["tasks"]]:
            raise FileExistsError(f"task {report.task_id} already recorded in {self.dir}")
        for key, name, text in artifacts:
            report.artifacts[key] = self.write_artifact(report.task_id, name, text)
        path = self.task_dir(report.task_id)
        path.mkdir(parents=True, exist_ok=True)
        (path / "report.json").write_text(json.dumps(report.to_dict(), indent=1))
        index["tasks"].append({"task_id": report.task_id, "status": report.status,
                               "exit_code": report.exit_code,
                               "conclusion": report.verdict.conclusion if report.verdict else None,
                               "report": str(path / "report.json")})
        self._index.write_text(json.dumps(index, indent=1))
        return report

    def reports(self) -> Dict[str, TaskReport]:
        index = json.loads(self._index.read_text())
        out = {}
        for e in index["tasks"]:
            out[e["task_id"]] = TaskReport.from_dict(json.loads(Path(e["report"]).read_text()))
        return out


@dataclass
class RunOptions:
    external_bin: Optional[str] = None
    engine: Optional[str] = None  # "builtin" or "external" overrides the manifest
    budget_seconds: Optional[float] = None
    max_clauses: Optional[int] = None
    sizes: Optional[Tuple[int, int]] = None


def _digest(text: str) -> str:
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _render(t: Term) -> str:
    s = render_term(t)
    return s[1:-1] if s.startswith("(") and not isinstance(t, int) and t[0] == "*" else s


def _apply_options(spec: TaskSpec, opts: RunOptions) -> TaskSpec:
    changes = {}
    if opts.budget_seconds is not None:
        changes["budget_seconds"] = opts.budget_seconds
    if opts.max_clauses is not None:
        changes["max_clauses"] = opts.max_clauses
    if opts.sizes is not None:
        changes["sizes"] = opts.sizes
    if opts.engine == "external":
        changes["engine"] = "external"
    elif opts.engine == "builtin" and spec.engine == "external":
        changes["engine"] = "builtin-model" if spec.theory.question.kind == "Model" else "builtin-prover"
    return replace(spec, **changes) if changes else spec


def _program(spec: TaskSpec) -> str:
    if spec.program:
        return spec.program
    return "mace4" if spec.theory.question.kind == "Model" else "prover9"


def _emit(spec: TaskSpec, cs: ClauseSet) -> List[Tuple[str, str, str]]:
    header = f"task {spec.id}" + (f": {spec.title}" if spec.title else "")
    out = []
    if _program(spec) == "mace4":
        text = emit_mace4(cs, sizes=spec.sizes, max_seconds=int(spec.budget_seconds), header=header)
        art = ExternalArtifact("mace4-input", text, spec.id)
    else:
        text = emit_prover9(cs, Prover9Options(max_seconds=int(spec.budget_seconds), header=header))
        art = ExternalArtifact("prover9-input", text, spec.id)
    out.append((art.kind, art.filename, art.payload))
    tp = ExternalArtifact("tptp-cnf", emit_tptp(cs), spec.id)
    out.append((tp.kind, tp.filename, tp.payload))
    return out


def _known(prior: Dict[str, TaskReport], tid: str) -> bool:
    r = prior.get(tid)
    return r is not None and r.verdict is not None and r.verdict.known


def check_dependencies(spec: TaskSpec, prior: Dict[str, TaskReport]) -> Tuple[bool, List[str]]:
    """Dependencies must carry known verdicts; FixedPoint tasks also need cofinality.

    Returns (cofinality_established, caveats) or raises ManifestError naming the gap.
    """
    missing = [d for d in spec.dependencies if not _known(prior, d)]
    if missing:
        raise ManifestError(f"unmet dependencies: {', '.join(missing)} have no established verdict")
    caveats: List[str] = []
    q = spec.theory.question
    if q.kind != "FixedPoint":
        return False, caveats
    for f in spec.closure:
        v = prior[f.source].verdict
        if v.conclusion != "InClosure":
            raise ManifestError(f"closure premise {f.text!r} cites {f.source}, whose verdict is "
                                f"{v.conclusion}, not InClosure")
        if not f.by_symmetry:
            want = (_render(f.target),), tuple(_render(g) for g in f.generators)
            if (tuple(v.terms), tuple(v.generating_set)) != want:
                raise ManifestError(f"closure premise {f.text!r} does not match the verdict of "
                                    f"{f.source}: {v.describe()}")
        else:
            caveats.append(f"closure premise '{f.text}' taken as declared; the symmetry is not checked")
    required = spec.generated_by or tuple((g,) for g in spec.theory.presentation.generators)
    for t in q.terms:
        have = cofinal_closure(t, spec.closure)
        lacking = [g for g in required if g not in have]
        if lacking:
            raise ManifestError(f"cofinality of <{_render(t)}> not established: no closure chain "
                                f"reaches {', '.join(_render(g) for g in lacking)}")
    sources = sorted({f.source for f in spec.closure}, key=_id_key)
    caveats.append(f"cofinality premises supplied by prior tasks {', '.join(sources)}")
    return True, caveats


def _id_key(tid: str):
    return tuple(int(p) if p.isdigit() else p for p in tid.replace("-", ".").split("."))


def _builtin_prover(spec: TaskSpec, cs: ClauseSet, arts, timings) -> V.EngineOutcome:
    t0 = time.monotonic()
    res = saturate(cs, SaturationLimits(max_seconds=spec.budget_seconds, max_clauses=spec.max_clauses))
    timings["engine"] = time.monotonic() - t0
    stats = ", ".join(f"{k}={int(v)}" for k, v in sorted(res.stats.items()) if k != "seconds")
    if res.status == P_REFUTATION:
        text = res.proof.dumps()
        arts.append(("proof", "proof.txt", text))
        t1 = time.monotonic()
        chk = verify_proof(res.proof, cs)
        timings["verify"] = time.monotonic() - t1
        ev = f"proof {_digest(text)} ({len(res.proof)} steps; {stats})"
        if not chk.ok:
            return V.EngineOutcome(V.REFUTATION, False, ev, notes=[f"proof rejected: {chk.reason}"])
        return V.EngineOutcome(V.REFUTATION, True, ev + " verified")
    status = V.SATURATED if res.status == P_SATURATED else V.RESOURCE_OUT
    return V.EngineOutcome(status, False, f"{res.status}: {res.reason} ({stats})".strip())


def _model_outcome(m: FiniteModel, cs: ClauseSet, arts, timings, source: str) -> V.EngineOutcome:
    text = m.dumps()
    arts.append(("model", "model.txt", text))
    t1 = time.monotonic()
    chk = check_model(m, cs)
    timings["verify"] = time.monotonic() - t1
    ev = f"model {_digest(text)} (size {m.size}; {source})"
    if not chk.ok:
        return V.EngineOutcome(V.MODEL, False, ev, m, notes=[f"model rejected: {chk.reason}"])
    return V.EngineOutcome(V.MODEL, True, ev + " verified", m)


def _builtin_model(spec: TaskSpec, cs: ClauseSet, arts, timings) -> V.EngineOutcome:
    lo, hi = spec.sizes
    t0 = time.monotonic()
    rep = find_model_report(cs, SearchBudget(lo, hi, spec.budget_seconds))
    timings["engine"] = time.monotonic() - t0
    if rep.model is None:
        timed = [s.size for s in rep.sizes if s.status == "timeout"]
        if timed:
            return V.EngineOutcome(V.RESOURCE_OUT, False, f"finder timed out at sizes {timed}")
        return V.EngineOutcome(V.SATURATED, False, f"no model of size {lo}..{hi}",
                               notes=[f"sizes {lo}..{hi} exhausted without a model"])
    notes = [] if rep.minimal else ["smaller sizes were not all exhausted"]
    out = _model_outcome(rep.model, cs, arts, timings, "built-in finder")
    out.notes.extend(notes)
    return out


def _external(spec: TaskSpec, cs: ClauseSet, arts, timings, binary: str) -> V.EngineOutcome:
    prog = _program(spec)
    kind = "mace4" if prog == "mace4" else "prover9"
    inp = [a for a in arts if a[0] == f"{kind}-input"][0]
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / inp[1]
        path.write_text(inp[2])
        run = run_external(binary, path, spec.budget_seconds + 10)
    timings["engine"] = run.seconds
    out_art = ExternalArtifact(f"{kind}-output", run.stdout, spec.id)
    arts.append((out_art.kind, out_art.filename, out_art.payload))
    if run.timed_out:
        return V.EngineOutcome(V.RESOURCE_OUT, False, f"{prog} killed after {run.seconds:.1f}s")
    if kind == "mace4":
        try:
            m = parse_mace4_model(run.stdout, cs.vocabulary)
        except OutputParseError as exc:
            return V.EngineOutcome(V.SATURATED, False, f"mace4 produced no model: {exc}")
        return _model_outcome(m, cs, arts, timings, "mace4, checked locally")
    try:
        res = parse_prover9_output(run.stdout)
    except OutputParseError as exc:
        return V.EngineOutcome(V.INVALID, False, f"unreadable prover9 output: {exc}")
    ev = f"prover9 exit ({res.exit_reason})"
    if res.status == PROVED:
        return V.EngineOutcome(V.EXTERNAL_PROVED, False, ev, trusted_external=spec.trust_external)
    return V.EngineOutcome(V.SATURATED if res.status == "saturated" else V.RESOURCE_OUT, False, ev)


def execute_task(spec: TaskSpec, prior: Optional[Dict[str, TaskReport]] = None,
                 opts: Optional[RunOptions] = None) -> Tuple[TaskReport, List[Tuple[str, str, str]]]:
    """Run one task without touching the store; returns the report and its artifacts."""
    prior = prior or {}
    opts = opts or RunOptions()
    spec = _apply_options(spec, opts)
    report = TaskReport(spec.id, REFUSED, exit_code=EXIT_INPUT, expect=spec.expect)
    arts: List[Tuple[str, str, str]] = []
    timings = report.timings
    try:
        t0 = time.monotonic()
        cs = compile_theory(spec.theory)
        arts.extend(_emit(spec, cs))
        timings["compile"] = time.monotonic() - t0
    except (TheoryError, InteropError) as exc:
        report.messages.append(f"refused: {exc}")
        return report, arts

    binary = None
    if spec.engine == "external" or spec.external_only:
        binary = find_binary(_program(spec), opts.external_bin) if opts.external_bin else None
    external_path = binary is None and (spec.external_only or spec.engine == "external")
    if external_path and not spec.model_file:
        # nothing runs, so premises are not needed; the emitted files are the deliverable
        unmet = [d for d in spec.dependencies if not _known(prior, d)]
        if unmet:
            report.messages.append(f"dependencies without verdicts: {', '.join(unmet)}")
        outcome = V.EngineOutcome(V.SKIPPED, False, "external-only task; input files emitted",
                                  notes=["skipped: no external binaries configured"])
        report.status = V.SKIPPED
        report.verdict = V.interpret(spec.theory, outcome, False, list(spec.notes))
        report.exit_code = EXIT_UNKNOWN
        return report, arts
    try:
        cofinal, caveats = check_dependencies(spec, prior)
    except ManifestError as exc:
        report.messages.append(f"refused: {exc}")
        return report, arts
    caveats = list(spec.notes) + caveats

    observed_by_engine = True
    if binary is not None:
        outcome = _external(spec, cs, arts, timings, binary)
    elif external_path:
        try:
            m = FiniteModel.loads(Path(spec.model_file).read_text())
        except (OSError, ModelFormatError) as exc:
            report.messages.append(f"refused: cannot load model file: {exc}")
            return report, arts
        outcome = _model_outcome(m, cs, arts, timings, f"supplied file {Path(spec.model_file).name}")
        outcome.notes.append("model supplied with the manifest, not found by a search engine")
        observed_by_engine = False
    elif spec.engine == "builtin-model":
        outcome = _builtin_model(spec, cs, arts, timings)
    else:
        outcome = _builtin_prover(spec, cs, arts, timings)

    refuted = (outcome.status == V.REFUTATION and outcome.verified) or \
              (outcome.status == V.EXTERNAL_PROVED and outcome.trusted_external)
    report.case_refuted = refuted and bool(spec.theory.extra)
    if report.case_refuted:
        pending = [s for s in spec.case_siblings if not (s in prior and prior[s].case_refuted)]
        if pending:
            caveats.append(f"this case is refuted; the conclusion waits for sibling cases "
                           f"{', '.join(pending)}")
            report.status = outcome.status
            report.verdict = V.Verdict("Unknown", "", outcome.evidence, caveats=caveats + outcome.notes)
            report.exit_code = EXIT_UNKNOWN
            report.observed = "refutation"
            return report, arts
        caveats.append(f"cases {', '.join((spec.id,) + spec.case_siblings)} declared exhaustive "
                       f"by the manifest (user-asserted)")
    try:
        verdict = V.interpret(spec.theory, outcome, cofinal, caveats)
    except V.InterpretRefused as exc:
        report.messages.append(f"refused: {exc}")
        return report, arts
    report.status = outcome.status
    report.verdict = verdict
    report.exit_code = EXIT_OK if verdict.known else EXIT_UNKNOWN
    if observed_by_engine:
        if outcome.status == V.REFUTATION and outcome.verified:
            report.observed = "refutation"
        elif outcome.status == V.MODEL and outcome.verified:
            report.observed = f"model {outcome.model.size}"
    return report, arts


def run_task(spec: TaskSpec, store: Optional[ReportStore] = None,
             prior: Optional[Dict[str, TaskReport]] = None,
             opts: Optional[RunOptions] = None) -> TaskReport:
    if prior is None:
        prior = store.reports() if store is not None else {}
    report, arts = execute_task(spec, prior, opts)
    if store is not None:
        store.record(report, arts)
    return report


# ---------------------------------------------------------------------------
# catalog


def catalog_dir() -> Path:
    return Path(str(resources.files("grouporder.harness").joinpath("catalog")))


def load_catalog(directory: Optional[Path] = None) -> List[TaskSpec]:
    directory = Path(directory) if directory else catalog_dir()
    specs: List[TaskSpec] = []
    for path in sorted(directory.glob("*.task")):
        specs.extend(load_manifests(path))
    return sorted(specs, key=lambda s: _id_key(s.id))


def select(specs: Sequence[TaskSpec], patterns: Iterable[str], with_dependencies: bool = True) -> List[TaskSpec]:
    pats = [p.strip() for ps in patterns for p in ps.split(",") if p.strip()]
    by_id = {s.id: s for s in specs}
    chosen = {s.id for s in specs if not pats or any(fnmatch.fnmatchcase(s.id, p) for p in pats)}
    if with_dependencies:
        stack = list(chosen)
        while stack:
            for d in by_id[stack.pop()].dependencies:
                if d in by_id and d not in chosen:
                    chosen.add(d)
                    stack.append(d)
    return topological([s for s in specs if s.id in chosen])


def run_specs(specs: Sequence[TaskSpec], store: Optional[ReportStore] = None,
              opts: Optional[RunOptions] = None, workers: int = 1, progress=None) -> List[TaskReport]:
    """Run tasks in dependency order; independent tasks share a process pool when workers > 1."""
    order = topological(specs)
    prior: Dict[str, TaskReport] = dict(store.reports()) if store is not None else {}
    done: List[TaskReport] = []

    def finish(report, arts):
        if store is not None:
            store.record(report, arts)
        prior[report.task_id] = report
        done.append(report)
        if progress:
            progress(report)

    ids = {s.id for s in order}
    if workers <= 1:
        for s in order:
            finish(*execute_task(s, prior, opts))
        return done
    waiting = list(order)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        running = {}
        while waiting or running:
            for s in list(waiting):
                if all(d not in ids or d in prior for d in s.dependencies):
                    waiting.remove(s)
                    snapshot = {d: prior[d] for d in s.dependencies + s.case_siblings if d in prior}
                    running[pool.submit(execute_task, s, snapshot, opts)] = s
            fin, _ = wait(list(running), return_when=FIRST_COMPLETED)
            for f in fin:
                running.pop(f)
                finish(*f.result())
    return done


def run_catalog(patterns: Iterable[str] = (), store: Optional[ReportStore] = None,
                opts: Optional[RunOptions] = None, workers: int = 1, with_dependencies: bool = True,
                progress=None) -> List[TaskReport]:
    return run_specs(select(load_catalog(), patterns, with_dependencies), store, opts, workers, progress)


# ---------------------------------------------------------------------------
# statement discovery


def discover_statements(p: Presentation, candidates: Sequence[Tuple[Term, Term]],
                        budget: Optional[SearchBudget] = None, mode: str = "joint") -> StatementSet:
    """Candidate inequalities confirmed true in a finite quotient of ``p``.

    ``joint`` asks for one model of all candidates; ``greedy`` adds candidates
    one at a time, keeping those that still admit a model.
    """
    if mode not in ("joint", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    budget = budget or SearchBudget(1, 6, 60.0)
    cands = [tuple(c) for c in candidates]
    if not cands:
        return StatementSet.of([])

    def model_for(pairs):
        return find_model_report(standard_theory(p, [], StatementSet.of(pairs)), budget).model

    if mode == "joint":
        m = model_for(cands)
    else:
        m, kept = None, []
        for c in cands:
            trial = model_for(kept + [c])
            if trial is not None:
                kept.append(c)
                m = trial
    if m is None:
        return StatementSet.of([])
    return extract_true_inequalities(m, cands)
