import itertools

from grouporder.kernel.terms import E, const
from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.model import FiniteModel
from grouporder.oracles import (
    _qkey, binary_icosahedral, cyclic, direct_product, isomorphic, perm_group, poincare_sphere_model, qmul,
    small_groups,
)
from grouporder.presentation import StatementSet, parse_presentation
from grouporder.theories import standard_theory

GR = standard_theory(parse_presentation("< a | a = e >"), [])


def with_a(g: FiniteModel) -> FiniteModel:
    return FiniteModel(g.size, g.product, g.inverse, g.identity, {"a": g.identity})


def test_small_groups_are_groups_and_pairwise_distinct():
    for n, gs in small_groups(8).items():
        for name, g in gs:
            assert g.size == n and check_model(with_a(g), GR).ok, name
        for (x, g), (y, h) in itertools.combinations(gs, 2):
            assert not isomorphic(g, h), (x, y)


def test_isomorphism_oracle():
    assert isomorphic(cyclic(6), direct_product(cyclic(3), cyclic(2)))
    assert not isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2)))
    s3 = perm_group([(1, 0, 2), (1, 2, 0)])
    assert s3.size == 6 and not isomorphic(s3, cyclic(6))


def test_binary_icosahedral_group():
    elems = binary_icosahedral()
    assert len(elems) == 120
    for q in elems:
        assert abs(sum(x * x for x in q) - 1) < 1e-9
    # closed under multiplication
    keys = {_qkey(q) for q in elems}
    assert all(_qkey(qmul(p, q)) in keys for p, q in itertools.product(elems, repeat=2))


def test_poincare_model_satisfies_its_presentation():
    m = poincare_sphere_model()
    p = parse_presentation("< a, b | (a b)^2 = a^3, a^3 = b^5 >")
    cs = standard_theory(p, [], StatementSet.of([(const("a"), E)]))
    assert m.size == 120 and check_model(m, cs).ok
