"""Order/cone translations checked exhaustively on every small group table."""
import itertools
import time

import numpy as np
import pytest

from grouporder.modelfinder.check import check_model
from grouporder.modelfinder.search import enumerate_models
from grouporder.presentation import parse_presentation
from grouporder.theories import (
    AxiomGroup, build_axiom_group, circular_to_cone, cone_to_circular, cone_to_order, order_to_cone,
    reverse_order, standard_theory,
)

START = time.monotonic()
GROUPS = {n: list(enumerate_models(standard_theory(parse_presentation("< a | a = e >"), []), n, max_seconds=60))
          for n in range(1, 5)}


def axioms(*names):
    return [c for n in names for c in build_axiom_group(AxiomGroup(n))]


LEFT, BI = axioms("AxL", "OrdL"), axioms("AxL", "OrdB")
CONE, BICONE = axioms("AxPL"), axioms("AxPL", "PB")
CIRC, BICIRC = axioms("AxC", "OrdCL"), axioms("AxC", "OrdCB")
CCONE, BICCONE = axioms("AxPCL"), axioms("AxPCL", "PCB")
ORD_L, ORD_B, ORD_CL = axioms("OrdL"), axioms("OrdB"), axioms("OrdCL")


def holds(m, clauses):
    return check_model(m, clauses).ok


def tables(shape, free):
    """Every boolean table of ``shape`` that is False outside the ``free`` cells."""
    for bits in itertools.product((False, True), repeat=len(free)):
        t = np.zeros(shape, dtype=bool)
        for cell, b in zip(free, bits):
            t[cell] = b
        yield t


def groups(max_n):
    return [(n, g) for n in range(1, max_n + 1) for g in GROUPS[n]]


def test_every_small_group_is_enumerated():
    # counts up to the finder's symmetry breaking; each class of order <= 4 is present
    assert all(GROUPS[n] for n in range(1, 5))
    assert len(GROUPS[4]) >= 2


@pytest.mark.parametrize("n, g", groups(4), ids=str)
def test_linear_orders_and_cones_correspond(n, g):
    # cone -> order: every unary table, both directions of satisfaction
    for p in tables((n,), [(i,) for i in range(n)]):
        m = g.with_predicates({"P": p})
        order = cone_to_order(m)
        assert holds(order, ORD_L)
        assert holds(m, CONE) == holds(order, LEFT)
        assert holds(m, BICONE) == holds(order, BI)
        assert np.array_equal(order_to_cone(order).predicates["P"], p)
    # order -> cone: every irreflexive binary table
    free = [(i, j) for i in range(n) for j in range(n) if i != j]
    for t in tables((n, n), free):
        m = g.with_predicates({"L": t})
        if not holds(m, ORD_L):
            continue
        cone = order_to_cone(m)
        assert holds(m, LEFT) == holds(cone, CONE)
        assert np.array_equal(cone_to_order(cone).predicates["L"], t)
        if holds(m, LEFT):
            assert holds(m, ORD_B) == holds(cone, BICONE)
            rev = reverse_order(m)
            assert holds(rev, LEFT) and holds(rev, ORD_B) == holds(m, ORD_B)


@pytest.mark.parametrize("n, g", groups(3), ids=str)
def test_circular_orders_and_cones_correspond(n, g):
    cells = [(i, j) for i in range(n) for j in range(n)]
    for p in tables((n, n), cells):
        m = g.with_predicates({"P": p})
        circ = cone_to_circular(m)
        assert holds(circ, ORD_CL)
        assert holds(m, CCONE) == holds(circ, CIRC)
        assert holds(m, BICCONE) == holds(circ, BICIRC)
        assert np.array_equal(circular_to_cone(circ).predicates["P"], p)
    # C is False unless its three arguments are distinct (irreflexivity plus cyclicity)
    free = [c for c in itertools.product(range(n), repeat=3) if len(set(c)) == 3]
    found = 0
    for t in tables((n, n, n), free):
        m = g.with_predicates({"C": t})
        if not holds(m, ORD_CL):
            continue
        cone = circular_to_cone(m)
        assert holds(m, CIRC) == holds(cone, CCONE)
        assert np.array_equal(cone_to_circular(cone).predicates["C"], t)
        if holds(m, CIRC):
            found += 1
            rev = reverse_order(m)
            assert holds(rev, CIRC) and holds(rev, BICIRC) == holds(m, BICIRC)
    # Z/n carries exactly two circular orders for n = 3 and one otherwise here
    assert found == (2 if n == 3 else 1)


def test_runtime_budget():
    assert time.monotonic() - START < 300
