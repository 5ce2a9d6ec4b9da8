import dataclasses
import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouporder.kernel.terms import E, Clause, ClauseSet, Vocabulary, const, mul
from grouporder.presentation import StatementSet, parse_presentation
from grouporder.prover import (
    REFUTATION, RESOURCE_OUT, SATURATED, Proof, SaturationLimits, saturate, verify_proof,
)
from grouporder.theories import standard_theory

A = const("a")
LIMITS = SaturationLimits(max_seconds=20)


def cyclic_theory(m, k):
    p = parse_presentation(f"< a | a^{m}, a^{k} >")
    return standard_theory(p, [], StatementSet.of([(A, E)]), ordering="group")


@pytest.mark.parametrize("m, k", list(itertools.product(range(2, 6), repeat=2)))
def test_cyclic_collapse_matches_gcd(m, k):
    # a^m = a^k = e forces a = e exactly when gcd(m, k) = 1
    cs = cyclic_theory(m, k)
    out = saturate(cs, LIMITS)
    if math.gcd(m, k) == 1:
        assert out.status == REFUTATION and verify_proof(out.proof, cs).ok
    else:
        assert out.status == SATURATED


def test_klein_bottle_is_not_bi_orderable():
    p = parse_presentation("< a, b | a^-1 b a = b^-1 >")
    cs = standard_theory(p, ["AxL", "OrdB"], StatementSet.of([(const("b"), E)]), ordering="group")
    out = saturate(cs, SaturationLimits(max_seconds=60))
    assert out.refuted
    assert verify_proof(out.proof, cs).ok
    assert verify_proof(Proof.loads(out.proof.dumps()), cs).ok


def test_resource_out():
    p = parse_presentation("< a, b | a^-1 b a = b^-1 >")
    cs = standard_theory(p, ["AxL", "OrdB"], StatementSet.of([(const("b"), E)]))
    out = saturate(cs, SaturationLimits(max_seconds=20, max_given=3))
    assert out.status == RESOURCE_OUT and out.proof is None and out.reason


def _refutation():
    cs = cyclic_theory(2, 3)
    out = saturate(cs, LIMITS)
    assert out.refuted
    return cs, out.proof


def test_tampered_proofs_are_rejected():
    cs, proof = _refutation()
    steps = proof.steps
    derived = [i for i, s in enumerate(steps) if s.rule != "input"]
    # drop the input steps a derived step relies on
    assert not verify_proof(Proof([s for s in steps if s.rule != "input"]), cs).ok
    # change a derived conclusion
    i = derived[0]
    bogus = Clause([(True, ("=", A, mul(A, A)))])
    assert steps[i].conclusion != bogus
    bad = dataclasses.replace(steps[i], conclusion=bogus)
    assert not verify_proof(Proof(steps[:i] + [bad] + steps[i + 1:]), cs).ok
    # stop before the empty clause
    assert not verify_proof(Proof(steps[:-1]), cs).ok
    # an input step that is not an input clause
    fake = dataclasses.replace(steps[0], conclusion=Clause([(True, ("=", A, E))]))
    assert not verify_proof(Proof([fake] + steps[1:]), cs).ok
    # the proof does not transfer to a theory without the relations
    assert not verify_proof(proof, standard_theory(parse_presentation("< a | >"), [])).ok
    assert not verify_proof(Proof([]), cs).ok


def test_proof_text_round_trip():
    cs, proof = _refutation()
    again = Proof.loads(proof.dumps())
    assert again.dumps() == proof.dumps() and verify_proof(again, cs).ok


# propositional oracle: ground clauses over unary predicates applied to one constant

ATOMS = [(name, A) for name in ("P", "Q", "R", "S")]
literal = st.tuples(st.booleans(), st.sampled_from(ATOMS))


def satisfiable(clauses):
    for bits in itertools.product((False, True), repeat=len(ATOMS)):
        val = dict(zip(ATOMS, bits))
        if all(any(val[a] == sign for sign, a in c) for c in clauses):
            return True
    return False


@given(st.lists(st.lists(literal, min_size=1, max_size=3), min_size=1, max_size=10))
@settings(max_examples=300, deadline=None)
def test_propositional_clause_sets_match_truth_tables(raw):
    vocab = Vocabulary.standard(["a"], {a[0]: 1 for a in ATOMS})
    cs = ClauseSet([Clause(c) for c in raw], vocab)
    out = saturate(cs, LIMITS)
    assert out.status in (REFUTATION, SATURATED)
    assert (out.status == REFUTATION) == (not satisfiable([c.literals for c in cs]))
    if out.refuted:
        assert verify_proof(out.proof, cs).ok


@given(st.integers(2, 7), st.integers(2, 7), st.sampled_from(["default", "group"]))
@settings(max_examples=20, deadline=None)
def test_orderings_agree_on_cyclic_collapse(m, k, ordering):
    p = parse_presentation(f"< a | a^{m}, a^{k} >")
    cs = standard_theory(p, [], StatementSet.of([(A, E)]), ordering=ordering)
    out = saturate(cs, SaturationLimits(max_seconds=3))
    if out.refuted:
        assert math.gcd(m, k) == 1 and verify_proof(out.proof, cs).ok
    if out.status == SATURATED:
        assert math.gcd(m, k) > 1
