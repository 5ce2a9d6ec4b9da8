import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouporder.kernel.kbo import EQUAL, GREATER, INCOMPARABLE, KBO, LESS
from grouporder.kernel.terms import (
    E, Clause, ClauseSet, Vocabulary, VocabularyError, const, encode_power, inv, is_ground, is_variant,
    mul, term_size,
)
from grouporder.kernel.unify import apply, match, resolve_subst, subsumes, unify

A, B = const("a"), const("b")


def terms(max_leaves=6, variables=True):
    leaves = [st.just(E), st.just(A), st.just(B)]
    if variables:
        leaves.append(st.integers(0, 2))
    return st.recursive(st.one_of(leaves),
                        lambda kids: st.one_of(st.builds(mul, kids, kids), st.builds(inv, kids)),
                        max_leaves=max_leaves)


def ground_terms(max_size):
    """Every ground term over e, a, b, ', * with at most ``max_size`` symbols."""
    by_size = {1: [E, A, B]}
    for n in range(2, max_size + 1):
        out = [inv(t) for t in by_size[n - 1]]
        for k in range(1, n - 1):
            out.extend(mul(s, t) for s in by_size[k] for t in by_size[n - 1 - k])
        by_size[n] = out
    return [t for n in sorted(by_size) for t in by_size[n]]


def ground_key(vocab: Vocabulary):
    """Reference KBO on ground terms: weight, then head precedence, then arguments."""
    w = {s.name: s.weight for s in vocab.symbols.values()}
    p = {s.name: s.precedence for s in vocab.symbols.values()}

    def weight(t):
        return w[t[0]] + sum(weight(a) for a in t[1:])

    def key(t):
        return (weight(t), p[t[0]], tuple(key(a) for a in t[1:]))

    return key


@pytest.mark.parametrize("ordering", ["default", "group"])
def test_kbo_matches_reference_on_all_small_ground_terms(ordering):
    vocab = Vocabulary.standard(["a", "b"], ordering=ordering)
    kbo, key = KBO(vocab), ground_key(vocab)
    pool = ground_terms(5)
    for s, t in itertools.product(pool, repeat=2):
        assert kbo.greater(s, t) == (key(s) > key(t)), (s, t)


def test_kbo_is_total_on_ground_terms():
    kbo = KBO(Vocabulary.standard(["a", "b"]))
    for s, t in itertools.combinations(ground_terms(4), 2):
        assert kbo.compare(s, t) in (GREATER, LESS)


def test_kbo_orients_group_axioms():
    kbo = KBO(Vocabulary.standard(["a"], ordering="group"))
    x, y, z = 0, 1, 2
    assert kbo.greater(mul(mul(x, y), z), mul(x, mul(y, z)))
    assert kbo.greater(mul(inv(x), x), E)
    assert kbo.greater(inv(mul(x, y)), mul(inv(y), inv(x)))
    assert kbo.greater(inv(x), x)  # weight-0 inverse: f(x) > x
    assert kbo.compare(mul(x, y), mul(y, x)) == INCOMPARABLE
    assert kbo.compare(A, A) == EQUAL


def test_weight_zero_unary_needs_top_precedence():
    vocab = Vocabulary.standard(["a"])
    with pytest.raises(VocabularyError):
        vocab.with_ordering("default", weights={"'": 0})


@given(terms(), terms(), st.lists(terms(4, variables=False), min_size=3, max_size=3))
@settings(max_examples=300, deadline=None)
def test_kbo_stable_under_ground_substitution(s, t, images):
    kbo = KBO(Vocabulary.standard(["a", "b"]))
    sigma = dict(enumerate(images))
    if kbo.greater(s, t):
        assert kbo.greater(apply(s, sigma), apply(t, sigma))


@given(terms(), terms(), terms())
@settings(max_examples=300, deadline=None)
def test_kbo_is_a_strict_order(s, t, u):
    kbo = KBO(Vocabulary.standard(["a", "b"], ordering="group"))
    assert not kbo.greater(s, s)
    if kbo.greater(s, t):
        assert not kbo.greater(t, s)
        if kbo.greater(t, u):
            assert kbo.greater(s, u)
        assert kbo.greater(mul(s, u), mul(t, u))
        assert kbo.greater(inv(s), inv(t))


@given(terms())
@settings(max_examples=200, deadline=None)
def test_kbo_subterm_property(s):
    kbo = KBO(Vocabulary.standard(["a", "b"]))
    assert kbo.greater(mul(s, A), s)
    assert kbo.greater(inv(s), s)


@given(terms(), terms())
@settings(max_examples=400, deadline=None)
def test_unifier_equalizes(s, t):
    t = apply(t, {v: v + 10 for v in range(3)}) if not isinstance(t, int) else t + 10
    sigma = unify(s, t)
    if sigma is not None:
        r = resolve_subst(sigma)
        assert apply(s, r) == apply(t, r)


@given(terms(), st.lists(terms(4, variables=False), min_size=3, max_size=3))
@settings(max_examples=300, deadline=None)
def test_unify_and_match_find_instances(s, images):
    inst = apply(s, dict(enumerate(images)))
    assert unify(s, inst) is not None
    m = match(s, inst)
    assert m is not None and apply(s, m) == inst


def test_occurs_check():
    assert unify(0, mul(0, A)) is None
    assert unify(mul(0, 1), mul(1, inv(0))) is None


def test_subsumption_is_multiset_based():
    p = lambda t: ("P", t)  # noqa: E731
    c = [(True, p(0)), (True, p(0))]
    assert not subsumes(c, [(True, p(A))])
    assert subsumes([(True, p(0))], [(True, p(A)), (False, p(B))])
    assert subsumes([(True, ("=", 0, A))], [(True, ("=", A, B))])  # equation symmetry


def test_clause_identity_ignores_variable_names_and_order():
    c = Clause([(False, ("L", 3, 5)), (True, ("L", 5, 3))])
    d = Clause([(True, ("L", 0, 1)), (False, ("L", 1, 0))])
    assert c == d and is_variant(c, d)
    assert c.literals[0] == (False, ("L", 0, 1))  # written order kept


def test_clause_set_keeps_first_occurrence():
    vocab = Vocabulary.standard(["a"], {"P": 1})
    cs = ClauseSet(vocabulary=vocab).extend([Clause([(True, ("P", A))], "first"),
                                             Clause([(True, ("P", A))], "second")])
    assert len(cs) == 1 and list(cs)[0].label == "first"


def test_power_encoding_is_left_nested():
    assert encode_power(A, 1) == A
    assert encode_power(A, 3) == mul(mul(A, A), A)
    assert term_size(encode_power(0, 4)) == 7
