"""Prover and finder must never disagree on random small theories."""
import random
from collections import Counter

from grouporder.kernel.terms import E, const, inv, mul
from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.search import SearchBudget, find_model
from grouporder.presentation import Presentation, Relation, StatementSet
from grouporder.prover import SaturationLimits, saturate, verify_proof
from grouporder.theories import standard_theory

THEORIES = 1000
ORDER_GROUPS = [[], [], [], ["AxL", "OrdL"], ["AxL", "OrdB"], ["AxPL", "PB"], ["AxC", "OrdCL"]]


def random_word(rnd, gens):
    return tuple((rnd.choice(gens), rnd.choice((1, -1))) for _ in range(rnd.randint(0, 4)))


def random_term(rnd, gens, depth=2):
    if depth == 0 or rnd.random() < 0.4:
        return rnd.choice([E] + [const(g) for g in gens])
    if rnd.random() < 0.25:
        return inv(random_term(rnd, gens, depth - 1))
    return mul(random_term(rnd, gens, depth - 1), random_term(rnd, gens, depth - 1))


def random_theory(seed):
    rnd = random.Random(seed)
    gens = ("a", "b", "c")[:rnd.randint(1, 3)]
    rels = tuple(Relation(random_word(rnd, gens), random_word(rnd, gens)) for _ in range(rnd.randint(0, 3)))
    stmts = [(random_term(rnd, gens), random_term(rnd, gens)) for _ in range(rnd.randint(0, 3))]
    stmts = [(s, t) for s, t in stmts if s != t]
    return standard_theory(Presentation(gens, rels), rnd.choice(ORDER_GROUPS), StatementSet.of(stmts))


def disagreements(seeds):
    """Run both engines on each seeded theory; returns the outcome tally."""
    tally = Counter()
    for seed in seeds:
        cs = random_theory(seed)
        model = find_model(cs, SearchBudget(1, 6, 2))
        out = saturate(cs, SaturationLimits(max_seconds=2, max_given=25))
        if model is not None:
            assert check_model(model, cs).ok, seed
            assert not out.refuted, f"seed {seed}: refuted a theory with a model of size {model.size}"
        if out.refuted:
            assert verify_proof(out.proof, cs).ok, seed
        tally["model" if model is not None else "no model", "refuted" if out.refuted else out.status] += 1
    return tally


def test_prover_and_finder_agree_on_fresh_seeds():
    # the acceptance suite covers seeds 0..999
    tally = disagreements(range(THEORIES, THEORIES + 100))
    assert sum(tally.values()) == 100
    assert tally["no model", "refuted"] > 0 and any(k[0] == "model" for k in tally)
