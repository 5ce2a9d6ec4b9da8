import os
import stat
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouporder.interop import (
    PROVED, RESOURCE_OUT, SATURATED, ExternalArtifact, LadrSyntaxError, OutputParseError, Prover9Options,
    emit_mace4, emit_prover9, emit_tptp, find_binary, format_mace4_model, parse_mace4_model,
    parse_prover9_output, read_ladr_input, run_external,
)
from grouporder.kernel.terms import E, ClauseSet, const
from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.search import SearchBudget, find_model
from grouporder.presentation import Presentation, Relation, StatementSet, parse_presentation
from grouporder.theories import AxiomGroup, build_axiom_group, standard_theory

FIX = Path(__file__).parent / "fixtures"
A, B = const("a"), const("b")
KLEIN = parse_presentation("< a, b | a^-1 b a = b^-1 >")


def klein_bo():
    return standard_theory(KLEIN, ["AxL", "OrdB"], StatementSet.of([(B, E)]))


def test_prover9_emission_of_the_klein_theory():
    text = emit_prover9(klein_bo())
    lines = text.splitlines()
    for want in ["(x * y) * z = x * (y * z).", "(a' * b) * a = b'.", "- L(x,x).",
                 "L(x,y) -> L((z*x)*u,(z*y)*u)."]:
        assert want in lines
    assert lines[0] == "assign(order, kbo)."
    assert "formulas(assumptions)." in lines and lines[-1] == "end_of_list."
    assert "b != e." in lines


def test_prover9_round_trip():
    cs = klein_bo()
    again = read_ladr_input(emit_prover9(cs))
    assert list(again) == list(cs)
    labelled = read_ladr_input(emit_prover9(cs, Prover9Options(labels=True, max_seconds=5, header="t")))
    assert [c.label for c in labelled] == [c.label for c in cs]


def test_mace4_emission():
    d7 = parse_presentation("< a, b | a^7 = e, b^2 = e, b a b = a^-1 >")
    cs = standard_theory(d7, [], StatementSet.of([(A, E), (B, E), (A, B)]))
    text = emit_mace4(cs, (1, 14), max_seconds=60)
    assert "a != b." in text.splitlines()
    assert text.splitlines()[:3] == ["assign(start_size, 1).", "assign(end_size, 14).", "assign(max_seconds, 60)."]
    plain = emit_mace4(standard_theory(KLEIN, []))
    body = plain.splitlines()
    body = body[body.index("formulas(assumptions).") + 1:body.index("end_of_list.")]
    assert body == ["(x * y) * z = x * (y * z).", "x * e = x.", "e * x = x.", "x' * x = e.", "x * x' = e.",
                    "(a' * b) * a = b'."]


def test_tptp_emission():
    assert emit_tptp(ClauseSet()).splitlines() == ["% TPTP CNF problem written by grouporder"]
    axpl = emit_tptp(build_axiom_group(AxiomGroup("AxPL"))).splitlines()
    assert axpl[1] == "cnf(ax_axpl_1, axiom, ~p(e))."
    axl = emit_tptp(build_axiom_group(AxiomGroup("AxL"))).splitlines()
    assert axl[3] == "cnf(ax_axl_3, axiom, X = Y | l(X,Y) | l(Y,X))."
    assert "cnf(ax_r_1, axiom, mul(mul(inv(a),b),a) = inv(b))." in emit_tptp(klein_bo()).splitlines()


@pytest.mark.parametrize("text", [
    "formulas(assumptions).\nx * y = .\nend_of_list.\n",
    "formulas(assumptions).\nL(x,y) & L(y,z) & -> L(x,z).\nend_of_list.\n",
    "formulas(assumptions).\nL(x,y) | L(y,x) & L(x,x).\nend_of_list.\n",
    "formulas(assumptions).\nx = y.\n",
    "x = y.\n",
    "formulas(goals).\nx = y.\nend_of_list.\n",
])
def test_reader_rejects_malformed_input(text):
    with pytest.raises(LadrSyntaxError):
        read_ladr_input(text)


@st.composite
def klein_like(draw):
    gens = ("a", "b", "c")[:draw(st.integers(1, 3))]
    letter = st.tuples(st.sampled_from(gens), st.sampled_from((1, -1)))
    rels = draw(st.lists(st.tuples(st.lists(letter, max_size=4).map(tuple), st.lists(letter, max_size=3).map(tuple)),
                         max_size=3))
    p = Presentation(gens, tuple(Relation(l, r) for l, r in rels))
    groups = draw(st.sampled_from([[], ["AxL", "OrdL"], ["AxC", "OrdCB"], ["AxPL'", "PB"], ["AxPCL"], ["CC"]]))
    g = const(gens[-1])
    return standard_theory(p, groups, StatementSet.of([(g, E), (g, const(gens[0]))]))


@given(klein_like())
@settings(max_examples=150, deadline=None)
def test_emit_read_round_trip_property(cs):
    assert list(read_ladr_input(emit_prover9(cs))) == list(cs)
    assert list(read_ladr_input(emit_mace4(cs))) == list(cs)


# external output parsing on synthesized logs

def test_prover9_output_parsing():
    r = parse_prover9_output((FIX / "prover9_proved.out").read_text())
    assert r.status == PROVED and r.exit_reason == "max_proofs"
    assert (r.user_cpu, r.system_cpu) == (0.02, 0.01) and "$F." in r.proof_text
    assert parse_prover9_output((FIX / "prover9_sos_empty.out").read_text()).status == SATURATED
    r = parse_prover9_output((FIX / "prover9_max_seconds.out").read_text())
    assert r.status == RESOURCE_OUT and not r.warning and r.user_cpu == 2.01
    r = parse_prover9_output((FIX / "prover9_odd_exit.out").read_text())
    assert r.status == RESOURCE_OUT and r.warning
    with pytest.raises(OutputParseError):
        parse_prover9_output((FIX / "prover9_truncated.out").read_text())
    with pytest.raises(OutputParseError):
        parse_prover9_output("")


def test_mace4_output_parsing():
    cs = standard_theory(KLEIN, [], StatementSet.of([(B, E)]))
    m = parse_mace4_model((FIX / "mace4_klein.out").read_text(), cs.vocabulary)
    assert m.size == 2 and check_model(m, cs).ok
    bad = (FIX / "mace4_klein.out").read_text().replace("function(b, [ 1 ])", "function(b, [ 2 ])")
    with pytest.raises(OutputParseError):
        parse_mace4_model(bad, cs.vocabulary)
    with pytest.raises(OutputParseError):
        parse_mace4_model("no model here", cs.vocabulary)


def test_mace4_block_round_trip_with_predicates():
    p = parse_presentation("< a | a^3 = e >")
    cs = standard_theory(p, ["AxC", "OrdCL"], StatementSet.of([(A, E)]))
    m = find_model(cs, SearchBudget(1, 4, 30))
    again = parse_mace4_model(format_mace4_model(m), cs.vocabulary)
    assert again == m and check_model(again, cs).ok


def test_artifact_names_and_kinds(tmp_path):
    art = ExternalArtifact("tptp-cnf", "x", "16.2")
    assert art.filename == "16.2.tptp-cnf.p"
    assert art.write(tmp_path).read_text() == "x"
    with pytest.raises(ValueError):
        ExternalArtifact("smt", "", "1")


def fake_binary(directory: Path, name: str, body: str) -> Path:
    path = directory / name
    path.write_text("#!/bin/sh\n" + body)
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return path


@pytest.mark.skipif(os.name != "posix", reason="shell script stand-in")
def test_subprocess_contract(tmp_path):
    fixture = FIX / "prover9_proved.out"
    exe = fake_binary(tmp_path, "prover9", f'test "$1" = "-f" && test -f "$2" && cat "{fixture}"\n')
    assert find_binary("prover9", str(tmp_path)) == str(exe)
    assert find_binary("mace4", str(tmp_path)) is None
    inp = tmp_path / "t.in"
    inp.write_text(emit_prover9(klein_bo()))
    run = run_external(str(exe), inp, timeout=10)
    assert run.returncode == 0 and not run.timed_out
    assert parse_prover9_output(run.stdout).status == PROVED
    slow = fake_binary(tmp_path, "mace4", "sleep 5\n")
    run = run_external(str(slow), inp, timeout=0.5)
    assert run.timed_out and run.returncode is None
