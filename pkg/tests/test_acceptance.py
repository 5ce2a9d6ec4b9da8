"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import contextlib
import time

import pytest

from grouporder.harness import cli
from grouporder.harness import verdict as V
from grouporder.harness.manifest import parse_manifest
from grouporder.harness.run import EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, RunOptions, execute_task, load_catalog, select
from grouporder.interop import emit_prover9, read_ladr_input
from grouporder.kernel.terms import E, const
from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.model import FiniteModel
from grouporder.oracles import poincare_sphere_model
from grouporder.presentation import StatementSet
from grouporder.prover import Proof, verify_proof
from grouporder.theories import compile_theory, standard_theory

import test_equiconsistency
import test_fuzz
import test_theories

CATALOG = {s.id: s for s in load_catalog()}


@contextlib.contextmanager
def criterion(n, capsys, what):
    t0 = time.monotonic()
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {what}  ({time.monotonic() - t0:.1f}s)")


def run_with_dependencies(task_id, opts):
    prior = {}
    for spec in select(list(CATALOG.values()), [task_id]):
        report, arts = execute_task(spec, prior, opts if spec.id == task_id else None)
        prior[spec.id] = report
    return spec, report, {key: text for key, _, text in arts}


def test_criterion_1_axiom_golden_files(capsys):
    with criterion(1, capsys, "axiom listings match the golden transcription"):
        test_theories.test_golden_listings()


MODEL_SIZES = {"1.1": 2, "2.1": 2, "3.1": 4, "4.1": 6, "7.1": 6, "10.1": 5, "10.3": 5, "17.4": 5,
               "5.1": 14, "9.1": 14, "9.3": 14, "9.5": 14, "9.7": 14}


@pytest.mark.parametrize("task_id", list(MODEL_SIZES))
def test_criterion_2_model_sizes(task_id, capsys):
    want = MODEL_SIZES[task_id]
    budget = 60 if want <= 6 else 900
    with criterion(2, capsys, f"task {task_id} has a minimal model of size {want}"):
        t0 = time.monotonic()
        spec, report, arts = run_with_dependencies(task_id, RunOptions(sizes=(1, want), budget_seconds=budget))
        assert time.monotonic() - t0 < budget
        assert report.verdict.size == want and report.observed == f"model {want}"
        # an independent check of the stored model against a fresh compilation
        m = FiniteModel.loads(arts["model"])
        assert m.size == want and check_model(m, compile_theory(spec.theory)).ok


def test_criterion_3_icosahedral_model(capsys):
    with criterion(3, capsys, "binary icosahedral table models the 8.1 theory"):
        t0 = time.monotonic()
        m = poincare_sphere_model()
        cs = standard_theory(CATALOG["8.1"].theory.presentation, [],
                             StatementSet.of([(const("a"), E)]))
        assert m.size == 120 and check_model(m, cs).ok
        supplied = FiniteModel.loads(open(CATALOG["8.1"].model_file).read())
        assert check_model(supplied, compile_theory(CATALOG["8.1"].theory)).ok
        assert time.monotonic() - t0 < 30


@pytest.mark.parametrize("task_id", ["1.2", "2.2", "7.2", "8.2", "10.4", "12.1", "15.1", "16.2"])
def test_criterion_4_refutations(task_id, capsys):
    with criterion(4, capsys, f"task {task_id} refuted with a verified proof"):
        spec, report, arts = run_with_dependencies(task_id, RunOptions(budget_seconds=120))
        assert report.status == V.REFUTATION and report.timings["engine"] < 120
        assert report.verdict.known and report.exit_code == EXIT_OK
        proof = Proof.loads(arts["proof"])
        assert verify_proof(proof, compile_theory(spec.theory)).ok


def test_criterion_5_equiconsistency(capsys):
    with criterion(5, capsys, "order/cone translations on all groups of order <= 4"):
        t0 = time.monotonic()
        for n, g in test_equiconsistency.groups(4):
            test_equiconsistency.test_linear_orders_and_cones_correspond(n, g)
        for n, g in test_equiconsistency.groups(3):
            test_equiconsistency.test_circular_orders_and_cones_correspond(n, g)
        assert time.monotonic() - t0 < 300


def test_criterion_6_emission_fidelity(capsys):
    with criterion(6, capsys, "Prover9 emission of the Klein bottle theory"):
        cs = compile_theory(CATALOG["1.2"].theory)
        lines = emit_prover9(cs).splitlines()
        for want in ["(x * y) * z = x * (y * z).", "(a' * b) * a = b'.", "- L(x,x).",
                     "L(x,y) -> L((z*x)*u,(z*y)*u)."]:
            assert want in lines
        assert list(read_ladr_input(emit_prover9(cs))) == list(cs)


def test_criterion_7_soundness_fuzzing(capsys):
    with criterion(7, capsys, f"{test_fuzz.THEORIES} random theories without disagreement"):
        tally = test_fuzz.disagreements(range(test_fuzz.THEORIES))
        with capsys.disabled():
            print("\n" + ", ".join(f"{m}/{p}: {v}" for (m, p), v in sorted(tally.items())))
        assert sum(tally.values()) >= 1000
        # the corpus exercises both engines
        assert sum(v for k, v in tally.items() if k[0] == "model") > 300
        assert tally["no model", "refuted"] > 150


FIXED_POINT = """
id: fp
presentation: < a, b | b = a^2, a = b^2 >
question: FixedPoint
groups: AxPL', PB
terms: a, b
depends: c1
closure: b in cl(a) by c1
closure: a in cl(b) by c1
"""


def test_criterion_8_verdict_gating(tmp_path, capsys):
    with criterion(8, capsys, "refusal, torsion citation and resource-out gating"):
        path = tmp_path / "fp.task"
        path.write_text(FIXED_POINT)
        assert cli.main(["run", str(path), "--out", str(tmp_path / "a")]) == EXIT_INPUT

        torsion = "id: t\npresentation: < a | a^4 = e >\nquestion: Torsion\ngroups: AxPL'\nterms: a\n"
        report, _ = execute_task(parse_manifest(torsion))
        assert report.verdict.conclusion == "IsTorsion" and report.verdict.justification == "Prop 4.1"
        assert report.exit_code == EXIT_OK

        hard = tmp_path / "k.task"
        hard.write_text("id: k\npresentation: < a, b | a^-1 b a = b^-1 >\nquestion: BO\ngroups: AxL, OrdB\n"
                        "statements: b != e\nmax-clauses: 20\n")
        report, _ = execute_task(parse_manifest(hard.read_text()))
        assert report.verdict.conclusion == "Unknown" and report.exit_code == EXIT_UNKNOWN
        assert cli.main(["run", str(hard), "--out", str(tmp_path / "b")]) == EXIT_UNKNOWN
