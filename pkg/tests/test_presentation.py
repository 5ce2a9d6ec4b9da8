import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouporder.kernel.terms import E, const, inv, is_ground, mul
from grouporder.oracles import small_groups
from grouporder.presentation import (
    Presentation, PresentationSyntaxError, Relation, StatementSet, free_reduce, parse_presentation, parse_term,
    parse_word, relations_to_axioms, render, render_term, render_word, word_inverse, word_to_term,
)

A, B = const("a"), const("b")
GENS = ("a", "b", "c")


def words(gens=GENS, max_size=6):
    return st.lists(st.tuples(st.sampled_from(gens), st.sampled_from((1, -1))), max_size=max_size).map(tuple)


def test_klein_bottle():
    p = parse_presentation("< a, b | a^-1 b a = b^-1 >")
    assert p.generators == ("a", "b") and len(p.relations) == 1
    (c,) = list(relations_to_axioms(p))
    assert c.literals == ((True, ("=", mul(mul(inv(A), B), A), inv(B))),)


def test_free_group_has_no_relations():
    p = parse_presentation("< a | >")
    assert p.generators == ("a",) and p.relations == ()
    assert len(relations_to_axioms(p)) == 0


def test_sl2z_with_grouping_and_juxtaposition():
    p = parse_presentation("< a, b | a^4 = e, (b a)^3 = b^2 >")
    assert p.relations[0] == Relation((("a", 1),) * 4, ())
    assert p.relations[1].lhs == (("b", 1), ("a", 1)) * 3
    assert parse_presentation("< a, b | a^4 = e, (ba)^3 = b^2 >") == p


def test_bare_relator_means_identity():
    assert parse_presentation("< a | a^3 >").relations == (Relation((("a", 1),) * 3, ()),)


def test_fibonacci_relations():
    n = 12
    rels = ", ".join(f"a{i} a{(i + 1) % n} = a{(i + 2) % n}" for i in range(n))
    p = parse_presentation(f"< {', '.join(f'a{i}' for i in range(n))} | {rels} >")
    cs = list(relations_to_axioms(p))
    assert len(cs) == 12
    assert cs[11].literals[0][1] == ("=", mul(const("a11"), const("a0")), const("a1"))
    assert all(c.is_unit and c.literals[0][0] and all(is_ground(t) for t in c.literals[0][1][1:]) for c in cs)


def test_longest_match_splits_multi_letter_generators():
    w = parse_word("c0d0^-1t1", ["c0", "d0", "t1", "t"])
    assert w == (("c0", 1), ("d0", -1), ("t1", 1))


@pytest.mark.parametrize("text, line, col", [
    ("< a, b | a x = b >", 1, 12),
    ("< a, a | >", 1, 6),
    ("< a, e | >", 1, 6),
    ("< a | a^ >", 1, 10),
    ("< a |\n  a = b >", 2, 7),
    ("< a | a, >", 1, 10),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_presentation_invariants():
    with pytest.raises(ValueError):
        Presentation(("a", "a"))
    with pytest.raises(ValueError):
        Presentation(("a",), (Relation((("b", 1),)),))
    with pytest.raises(ValueError):
        Presentation(("L",))


def test_word_encoding():
    assert word_to_term(()) == E
    assert word_to_term((("b", 1),) * 3) == mul(mul(B, B), B)
    assert word_to_term((("a", -1), ("b", 1), ("a", 1))) == mul(mul(inv(A), B), A)


def test_term_syntax():
    assert parse_term("(a * b) * b") == mul(mul(A, B), B)
    assert parse_term("a * b * b") == mul(mul(A, B), B)
    assert parse_term("(b*a)'") == inv(mul(B, A))
    assert parse_term("a^3") == mul(mul(A, A), A)
    assert parse_term("e") == E
    with pytest.raises(PresentationSyntaxError):
        parse_term("a * q", ["a"])
    with pytest.raises(PresentationSyntaxError):
        parse_term("(a * b")


def test_statement_set_allows_one_strict_item():
    s = StatementSet.of([(A, E), (B, E)], strict_index=1)
    assert s.arity == 2 and [it.strict for it in s] == [False, True]
    with pytest.raises(ValueError):
        StatementSet((s.items[1], s.items[1]))
    with pytest.raises(ValueError):
        StatementSet.of([(A, 0)])
    with pytest.raises(ValueError):
        StatementSet.of([(A, B)], kind="bogus")


@st.composite
def presentations(draw):
    gens = GENS[:draw(st.integers(1, 3))]
    rels = draw(st.lists(st.tuples(words(gens), words(gens)), max_size=3))
    return Presentation(gens, tuple(Relation(l, r) for l, r in rels))


@given(presentations())
@settings(max_examples=200, deadline=None)
def test_render_round_trips(p):
    assert parse_presentation(render(p)) == p


@given(words())
@settings(max_examples=200, deadline=None)
def test_render_word_round_trips(w):
    assert parse_word(render_word(w), GENS) == w


@given(words(), words())
@settings(max_examples=200, deadline=None)
def test_term_render_round_trips(w1, w2):
    t = mul(word_to_term(w1), inv(word_to_term(w2)))
    assert parse_term(render_term(t), GENS) == t


@given(words(), words(), st.data())
@settings(max_examples=200, deadline=None)
def test_concatenation_is_model_product(w1, w2, data):
    name, g = data.draw(st.sampled_from([x for gs in small_groups(8).values() for x in gs]))
    consts = {x: data.draw(st.integers(0, g.size - 1)) for x in GENS}
    g.constants = consts
    assert g.value(word_to_term(w1 + w2)) == int(g.product[g.value(word_to_term(w1)), g.value(word_to_term(w2))])
    assert g.value(word_to_term(word_inverse(w1) + w1)) == g.identity
    assert g.value(word_to_term(free_reduce(w1))) == g.value(word_to_term(w1))
