"""Command-line front end.  Exit codes: 0 verdict obtained, 2 Unknown, 3 input error."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from ..interop.ladr import InteropError
from ..modelfinder.check import check_model
from ..modelfinder.model import FiniteModel, ModelFormatError
from ..modelfinder.search import SearchBudget
from ..presentation import PresentationSyntaxError, parse_presentation, parse_term, render_term
from ..prover.proof import Proof, verify_proof
from ..theories import TheoryError, compile_theory
from .manifest import ManifestError, TaskSpec, load_manifests, parse_sizes, topological
from .run import (
    EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, ReportStore, RunOptions, TaskReport, _emit, discover_statements,
    load_catalog, run_specs, select,
)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-seconds", type=float, help="per-task engine budget (model finder: per size)")
    p.add_argument("--max-clauses", type=int, help="prover clause limit")
    p.add_argument("--sizes", type=parse_sizes, help="model sizes a..b")
    p.add_argument("--engine", choices=("builtin", "external"), help="override the manifest engine")
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--external-bin", help="directory holding prover9/mace4, or one binary")


def _manifest_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("manifest", type=Path, help="task manifest file")
    p.add_argument("--task", action="append", default=[], help="task id (repeatable; default all)")
    p.add_argument("--resume", type=Path, help="append to an existing run directory and reuse its verdicts")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grouporder", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compile", help="emit Prover9/Mace4/TPTP files for a manifest")
    _manifest_args(p)
    _common(p)

    for name, what in (("prove", "built-in saturation prover"), ("model", "built-in model finder"),
                       ("run", "engine named by the manifest")):
        p = sub.add_parser(name, help=f"run manifest tasks with the {what}")
        _manifest_args(p)
        _common(p)

    p = sub.add_parser("verify", help="re-check a stored proof or model against a task's theory")
    p.add_argument("manifest", type=Path)
    p.add_argument("evidence", type=Path, help="proof.txt or model.txt")
    p.add_argument("--task", action="append", default=[])

    p = sub.add_parser("catalog", help="run the bundled task catalog")
    p.add_argument("filter", nargs="*", help="task id patterns, e.g. '1.*' 16.2")
    p.add_argument("--list", action="store_true", help="list tasks and exit")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-deps", action="store_true", help="do not add dependencies of selected tasks")
    _common(p)

    p = sub.add_parser("discover", help="confirm candidate inequalities in a finite quotient")
    p.add_argument("presentation", help="'< a, b | rels >' or a file")
    p.add_argument("--candidate", action="append", default=[], help="'s != t' (repeatable)")
    p.add_argument("--mode", choices=("joint", "greedy"), default="joint")
    p.add_argument("--sizes", type=parse_sizes, default=(1, 6))
    p.add_argument("--budget-seconds", type=float, default=60.0)
    return ap


def _opts(args, engine: Optional[str] = None) -> RunOptions:
    return RunOptions(external_bin=args.external_bin, engine=engine or args.engine,
                      budget_seconds=args.budget_seconds, max_clauses=args.max_clauses, sizes=args.sizes)


def _tasks(args) -> List[TaskSpec]:
    specs = load_manifests(args.manifest)
    if args.task:
        ids = {s.id for s in specs}
        missing = [t for t in args.task if t not in ids]
        if missing:
            raise ManifestError(f"no task {', '.join(missing)} in {args.manifest}")
        specs = [s for s in specs if s.id in args.task]
    return specs


def _exit_code(reports: Sequence[TaskReport]) -> int:
    codes = [r.exit_code for r in reports]
    if not codes or EXIT_INPUT in codes:
        return EXIT_INPUT
    return EXIT_UNKNOWN if EXIT_UNKNOWN in codes else EXIT_OK


def _show(r: TaskReport) -> None:
    print(r.line(), flush=True)
    for m in r.messages:
        print(f"        {m}")
    if r.verdict is not None:
        if r.verdict.evidence:
            print(f"        evidence: {r.verdict.evidence}")
        for s in r.verdict.statements:
            print(f"        confirmed: {s[0]} != {s[1]}")
        for c in r.verdict.caveats:
            print(f"        caveat: {c}")


def _store(args) -> ReportStore:
    if getattr(args, "resume", None):
        return ReportStore.open(args.resume)
    return ReportStore(Path(args.out))


def cmd_compile(args) -> int:
    opts = _opts(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for spec in _tasks(args):
        spec = dataclasses.replace(spec, budget_seconds=opts.budget_seconds or spec.budget_seconds,
                                   sizes=opts.sizes or spec.sizes)
        cs = compile_theory(spec.theory)
        for _, name, text in _emit(spec, cs):
            (out / name).write_text(text)
            print(out / name)
    return EXIT_OK


def _run_manifest(args, engine: Optional[str]) -> int:
    specs = _tasks(args)
    if engine is not None:
        specs = [dataclasses.replace(s, engine=engine, external_only=False) for s in specs]
    store = _store(args)
    reports = run_specs(topological(specs), store, _opts(args), progress=_show)
    print(f"reports: {store.dir}")
    return _exit_code(reports)


def cmd_verify(args) -> int:
    specs = _tasks(args)
    if len(specs) != 1:
        raise ManifestError("verify needs exactly one task (use --task)")
    cs = compile_theory(specs[0].theory)
    text = args.evidence.read_text()
    if text.lstrip().startswith("size "):
        res = check_model(FiniteModel.loads(text), cs)
        print(f"model check: {'ok' if res.ok else 'FAILED'} {res.reason or ''}".rstrip())
    else:
        res = verify_proof(Proof.loads(text), cs)
        print(f"proof check: {'ok' if res.ok else 'FAILED'} {res.reason or ''}".rstrip())
    return EXIT_OK if res.ok else EXIT_UNKNOWN


def cmd_catalog(args) -> int:
    specs = select(load_catalog(), args.filter, not args.no_deps)
    if args.list:
        for s in specs:
            flag = " (external-only)" if s.external_only else ""
            print(f"{s.id:>6}  {s.title}{flag}")
        return EXIT_OK
    store = ReportStore(Path(args.out))
    reports = run_specs(specs, store, _opts(args), workers=args.workers, progress=_show)
    met = [r for r in reports if r.expect_met is not None]
    print(f"reports: {store.dir}")
    print(f"regression: {sum(r.expect_met for r in met)}/{len(met)} tasks match their recorded outcome")
    return _exit_code(reports)


def cmd_discover(args) -> int:
    src = args.presentation
    text = Path(src).read_text() if Path(src).is_file() else src
    p = parse_presentation(text)
    cands = []
    for c in args.candidate:
        if "!=" not in c:
            raise ManifestError(f"candidate must be 's != t', got {c!r}")
        s, t = c.split("!=", 1)
        cands.append((parse_term(s, p.generators), parse_term(t, p.generators)))
    lo, hi = args.sizes
    found = discover_statements(p, cands, SearchBudget(lo, hi, args.budget_seconds), args.mode)
    for s, t in found.pairs():
        print(f"{render_term(s)} != {render_term(t)}")
    return EXIT_OK if len(found) else EXIT_UNKNOWN


COMMANDS = {"compile": cmd_compile, "verify": cmd_verify, "catalog": cmd_catalog,
            "discover": cmd_discover,
            "prove": lambda a: _run_manifest(a, "builtin-prover"),
            "model": lambda a: _run_manifest(a, "builtin-model"),
            "run": lambda a: _run_manifest(a, None)}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except (ManifestError, TheoryError, PresentationSyntaxError, InteropError, ModelFormatError,
            FileNotFoundError, FileExistsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
