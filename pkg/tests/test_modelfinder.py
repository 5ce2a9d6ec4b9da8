import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouporder.kernel.terms import E, const, mul
from grouporder.modelfinder.check import check_model, extract_true_inequalities
from grouporder.modelfinder.model import FiniteModel, ModelFormatError
from grouporder.modelfinder.search import SearchBudget, enumerate_models, find_model, find_model_report
from grouporder.oracles import cyclic, direct_product, isomorphic, small_groups
from grouporder.presentation import StatementSet, parse_presentation
from grouporder.theories import standard_theory

A, B = const("a"), const("b")
EMPTY = parse_presentation("< a | a = e >")


def relabel(m: FiniteModel, perm) -> FiniteModel:
    perm = np.asarray(perm)
    back = np.argsort(perm)
    prod = perm[m.product[back[:, None], back[None, :]]]
    return FiniteModel(m.size, prod, perm[m.inverse[back]], int(perm[m.identity]),
                       {k: int(perm[v]) for k, v in m.constants.items()})


@pytest.mark.parametrize("n", range(1, 9))
def test_group_enumeration_is_complete_up_to_isomorphism(n):
    cs = standard_theory(EMPTY, [])
    found = list(enumerate_models(cs, n, max_seconds=120))
    assert found and all(check_model(m, cs).ok for m in found)
    oracle = small_groups(8)[n]
    for m in found:
        assert any(isomorphic(m, g) for _, g in oracle)
    for name, g in oracle:
        assert any(isomorphic(m, g) for m in found), name


def test_trivial_group_is_found_first():
    cs = standard_theory(parse_presentation("< a, b | a b = b a >"), [])
    rep = find_model_report(cs, SearchBudget(1, 3, 5))
    assert rep.size == 1 and rep.minimal


def test_model_sizes_are_minimal():
    p = parse_presentation("< a, b | a^-1 b a = b^-1 >")
    cs = standard_theory(p, [], StatementSet.of([(B, E)]))
    rep = find_model_report(cs, SearchBudget(1, 6, 30))
    assert rep.size == 2 and rep.exhausted == [1] and rep.minimal
    m = rep.model
    expected = [(s, t) for s, t in [(B, E), (A, E), (mul(A, A), E)] if m.value(s) != m.value(t)]
    assert (B, E) in expected
    assert extract_true_inequalities(m, [(B, E), (A, E), (mul(A, A), E)]).pairs() == expected


def test_no_model_within_range():
    p = parse_presentation("< a | a^2 = e, a^3 = e >")
    cs = standard_theory(p, [], StatementSet.of([(A, E)]))
    rep = find_model_report(cs, SearchBudget(1, 5, 10))
    assert rep.model is None and rep.exhausted == [1, 2, 3, 4, 5]
    assert find_model(cs, SearchBudget(1, 5, 10)) is None


def test_predicates_are_searched():
    p = parse_presentation("< a | a^3 = e >")
    cs = standard_theory(p, ["AxC", "OrdCL"], StatementSet.of([(A, E)]))
    m = find_model(cs, SearchBudget(1, 4, 30))
    assert m is not None and m.size == 3 and check_model(m, cs).ok


def test_check_model_reports_a_counterexample():
    g = direct_product(cyclic(2), cyclic(2))
    cs = standard_theory(EMPTY, [])
    bad = FiniteModel(g.size, g.product.copy(), g.inverse, g.identity, {"a": 0})
    bad.product[1, 2] = 1
    res = check_model(bad, cs)
    assert not res.ok and res.clause is not None


def test_dumps_loads_round_trip():
    g = direct_product(cyclic(3), cyclic(2))
    m = FiniteModel(g.size, g.product, g.inverse, g.identity, {"a": 2},
                    {"P": np.eye(6, dtype=bool)[0], "L": np.triu(np.ones((6, 6), bool), 1)})
    assert FiniteModel.loads(m.dumps()) == m
    with pytest.raises(ModelFormatError):
        FiniteModel.loads("size 2\nop\n0 1\n")
    with pytest.raises(ModelFormatError):
        FiniteModel(2, [[0, 1], [1, 2]], [0, 1], 0)


@given(st.sampled_from([g for gs in small_groups(8).values() for _, g in gs]), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_relabelled_groups_stay_groups_and_isomorphic(g, rnd):
    perm = list(range(g.size))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    cs = standard_theory(EMPTY, [])
    g = FiniteModel(g.size, g.product, g.inverse, g.identity, {"a": g.identity})
    h = FiniteModel(h.size, h.product, h.inverse, h.identity, {"a": h.identity})
    assert check_model(g, cs).ok and check_model(h, cs).ok
    assert isomorphic(g, h)


@st.composite
def small_presentations(draw):
    k = draw(st.integers(1, 2))
    gens = ["a", "b"][:k]
    word = st.lists(st.sampled_from(gens + [g + "^-1" for g in gens]), min_size=1, max_size=4).map(" ".join)
    rels = draw(st.lists(word, min_size=1, max_size=2))
    return parse_presentation(f"< {', '.join(gens)} | {', '.join(rels)} >")


@given(small_presentations())
@settings(max_examples=40, deadline=None)
def test_found_models_satisfy_their_theory(p):
    cs = standard_theory(p, [], StatementSet.of([(const(p.generators[0]), E)]))
    m = find_model(cs, SearchBudget(1, 4, 5))
    if m is not None:
        assert check_model(m, cs).ok
