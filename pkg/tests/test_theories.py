import itertools
import time
from pathlib import Path

import numpy as np
import pytest

from grouporder.interop.ladr import formula, parse_formula
from grouporder.kernel.terms import E, Clause, const, inv, mul
from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.model import FiniteModel
from grouporder.oracles import cyclic
from grouporder.presentation import StatementSet, parse_presentation
from grouporder.theories import (
    AxiomGroup, Question, TheoryError, TheorySpec, build_axiom_group, compile_theory, cone_to_circular,
    cone_to_order, circular_to_cone, group_clauses, group_roles, lift_statements, order_to_cone, reverse_order,
    standard_theory,
)

GOLDEN = Path(__file__).parent / "golden" / "axiom_groups.in"
COUNTS = {"Gr": 5, "AxL": 3, "OrdL": 1, "OrdB": 1, "AxC": 4, "OrdCL": 1, "OrdCB": 1, "AxPL": 3, "PB": 1,
          "AxPCL": 4, "PCB": 1, "CC": 2, "Isolated(2)": 1}
A, B = const("a"), const("b")
KLEIN = parse_presentation("< a, b | a^-1 b a = b^-1 >")
WEEKS = parse_presentation("< a, b | a^2 b^2 a^2 = b a^-1 b, b^2 a^2 b^2 = a b^-1 a >")


def golden_sections():
    out, name = {}, None
    for ln in GOLDEN.read_text().splitlines():
        if ln.startswith("% ") and ln[2:].strip() in COUNTS:
            name = ln[2:].strip()
            out[name] = []
        elif ln.strip() and not ln.startswith("%"):
            out[name].append(ln)
    return out


def axiom_group(name):
    return AxiomGroup("Isolated", M=(2,)) if name == "Isolated(2)" else AxiomGroup(name)


def test_golden_listings():
    t0 = time.perf_counter()
    sections = golden_sections()
    assert {k: len(v) for k, v in sections.items()} == COUNTS
    preds = {"L": 2, "C": 3}
    for name, lines in sections.items():
        clauses = group_clauses(axiom_group(name))
        p = {**preds, "P": 2 if name.startswith("AxPC") or name == "PCB" else 1}
        assert [formula(c) + "." for c in clauses] == lines, name
        assert [parse_formula(ln[:-1], p) for ln in lines] == clauses, name
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.parametrize("primed, base, dropped", [
    ("AxL'", "AxL", {"connectedness"}), ("AxC'", "AxC", {"connectedness"}),
    ("AxPL'", "AxPL", {"connectedness"}), ("AxPCL'", "AxPCL", {"connectedness"}),
    ("AxPCLbar", "AxPCL", {"cyclicity"}), ("AxPCLbar'", "AxPCL", {"cyclicity", "connectedness"}),
])
def test_primed_and_barred_variants_drop_exactly_the_named_axioms(primed, base, dropped):
    full = dict(zip(group_roles(base), group_clauses(AxiomGroup(base))))
    kept = [c for role, c in full.items() if role not in dropped]
    assert group_clauses(AxiomGroup(primed)) == kept
    assert len(kept) == len(full) - len(dropped)


def test_unicode_aliases():
    assert AxiomGroup("AxPCL̄′").name == "AxPCLbar'"
    assert AxiomGroup("AxL′").name == "AxL'"


def test_isolated_needs_positive_m():
    assert [formula(c) for c in group_clauses(AxiomGroup("Isolated", M=(3, 2)))] == [
        "P(x*x) -> P(x)", "P((x*x)*x) -> P(x)"]
    with pytest.raises(TheoryError):
        AxiomGroup("Isolated")
    with pytest.raises(TheoryError):
        AxiomGroup("Isolated", M=(0,))
    with pytest.raises(TheoryError):
        AxiomGroup("Ax_R")


def test_build_axiom_group_vocabulary():
    cs = build_axiom_group(AxiomGroup("AxPCL"))
    assert cs.vocabulary.symbols["P"].arity == 2
    assert len(cs) == 4


def test_lifts():
    cone = lift_statements(StatementSet.of([(E, B)], strict_index=0), "cone-unary")
    assert [formula(c) for c in cone] == ["P(e'*b)"]
    order = lift_statements(StatementSet.of([(E, A), (E, B)], strict_index=0), "order")
    assert [formula(c) for c in order] == ["L(e,a)", "L(e,b) | L(b,e)"]
    binary = lift_statements(StatementSet.of([(E, mul(A, B), mul(B, A))], strict_index=0), "cone-binary")
    assert [formula(c) for c in binary] == ["P(e'*(a*b),e'*(b*a))"]
    ineq = lift_statements(StatementSet.of([(A, E), (E, A, B)]), "inequalities")
    assert [formula(c) for c in ineq] == ["a != e", "e != a", "a != b", "b != e"]
    with pytest.raises(TheoryError):
        lift_statements(StatementSet.of([(E, A)]), "circular")


def test_compile_torsion():
    p = parse_presentation("< a | a^4 = e >")
    cs = compile_theory(TheorySpec(p, [AxiomGroup("AxPL'")], question=Question("Torsion", (A,))))
    expected = (group_clauses(AxiomGroup("Gr")) + group_clauses(AxiomGroup("Ax_R", p))
                + group_clauses(AxiomGroup("AxPL'")) + [Clause([(True, ("P", A))])])
    assert list(cs) == expected
    assert [c.label for c in cs][-1] == "q_1"


def test_compile_closure_membership_on_weeks():
    spec = TheorySpec(WEEKS, [AxiomGroup("CC")], question=Question("ClosureMembership", (B,), (A,)))
    cs = list(compile_theory(spec))
    assert [formula(c) for c in cs[-3:]] == ["P(a)", "P(a')", "- P(b)"]
    assert len(cs) == 5 + 2 + 2 + 3
    assert spec.validate().conclusion == "InClosure"


def test_compile_fixed_point():
    p = parse_presentation("< a, b | a b a^-1 = b^-1 >")
    q = Question("FixedPoint", (A, B), M=(2,))
    spec = TheorySpec(p, [AxiomGroup("AxPL'"), AxiomGroup("PB"), AxiomGroup("Isolated", M=(2,))], question=q)
    tail = [formula(c) for c in compile_theory(spec)][-6:]
    assert tail == ["- P(e)", "P(x) & P(y) -> P(x*y)", "P(x) -> P((y*x)*y')", "P(x*x) -> P(x)",
                    "P(e'*a)", "P(e'*b) | P(b'*e)"]
    assert spec.validate().citation == "Prop 6.10"


@pytest.mark.parametrize("spec", [
    TheorySpec(KLEIN, [AxiomGroup("AxL"), AxiomGroup("OrdL"), AxiomGroup("Isolated", M=(2,))],
               StatementSet.of([(B, E)]), Question("LO")),
    TheorySpec(KLEIN, [AxiomGroup("AxL"), AxiomGroup("OrdL")], StatementSet.of([(B, E)], 0), Question("LO")),
    TheorySpec(KLEIN, [AxiomGroup("AxL"), AxiomGroup("OrdL")], StatementSet.of([(const("c"), E)]),
               Question("LO")),
    TheorySpec(KLEIN, [AxiomGroup("AxL")], StatementSet.of([(B, E)]), Question("LO")),
    TheorySpec(KLEIN, [AxiomGroup("AxPL'")], StatementSet.of([(B, E)]), Question("Torsion", (A,))),
])
def test_invalid_specs_are_rejected(spec):
    with pytest.raises(TheoryError):
        compile_theory(spec)


def test_compile_is_deterministic_and_deduplicated():
    spec = TheorySpec(KLEIN, [AxiomGroup("AxL"), AxiomGroup("OrdL"), AxiomGroup("OrdL")],
                      StatementSet.of([(B, E), (B, E)]), Question("LO"))
    a, b = list(compile_theory(spec)), list(compile_theory(spec))
    assert a == b and len(a) == 5 + 1 + 3 + 1 + 1


# translations on small oracle models

def all_strict_orders(n):
    """Every strict total order on range(n) as a boolean table."""
    for perm in itertools.permutations(range(n)):
        rank = {x: i for i, x in enumerate(perm)}
        yield np.array([[rank[x] < rank[y] for y in range(n)] for x in range(n)])


def test_order_cone_translations_on_trivial_and_two_element_groups():
    triv = cyclic(1).with_predicates({"L": np.zeros((1, 1), bool)})
    assert not order_to_cone(triv).predicates["P"].any()
    c2 = cyclic(2).with_predicates({"L": np.array([[False, True], [False, False]])})
    assert reverse_order(c2).predicates["L"].tolist() == [[False, False], [True, False]]
    assert (cone_to_order(order_to_cone(c2)).predicates["L"] != c2.predicates["L"]).any()  # not left-invariant


def test_left_orders_on_small_groups_are_trivial():
    # a finite group carries a left order only when it is trivial; the cone then has n - 1 = 0 elements
    found = []
    for n in range(1, 5):
        g = cyclic(n)
        cs = standard_theory(parse_presentation("< a | >"), ["AxL", "OrdL"])
        for L in all_strict_orders(n):
            m = g.with_predicates({"L": L})
            m.constants = {"a": 0}
            if check_model(m, cs).ok:
                found.append((n, int(order_to_cone(m).predicates["P"].sum())))
    assert found == [(1, 0)]


def test_cyclic_three_circular_orders():
    g = cyclic(3)
    cs = standard_theory(parse_presentation("< a | >"), ["AxC", "OrdCL"])
    distinct = [t for t in itertools.product(range(3), repeat=3) if len(set(t)) == 3]
    cones = []
    for bits in itertools.product((False, True), repeat=len(distinct)):
        C = np.zeros((3, 3, 3), bool)
        for t, b in zip(distinct, bits):
            C[t] = b
        m = g.with_predicates({"C": C})
        m.constants = {"a": 0}
        if check_model(m, cs).ok:
            cone = circular_to_cone(m)
            assert (cone_to_circular(cone).predicates["C"] == C).all()
            cones.append(sorted(zip(*np.nonzero(cone.predicates["P"]))))
    # frozen from the exhaustive run above: the two orientations, one positive pair each
    assert sorted(cones) == [[(1, 2)], [(2, 1)]]


def test_reverse_order_is_involutive():
    m = FiniteModel(3, cyclic(3).product, cyclic(3).inverse, 0,
                    predicates={"C": np.random.default_rng(0).random((3, 3, 3)) < 0.5})
    assert (reverse_order(reverse_order(m)).predicates["C"] == m.predicates["C"]).all()
