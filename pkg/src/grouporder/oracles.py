"""Groups built independently of the search engines (permutations, modular
arithmetic, quaternions), used as supplied models and as test oracles."""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .modelfinder.model import FiniteModel

Perm = Tuple[int, ...]


def table_from_elements(elements: Sequence, mul, key=lambda g: g) -> Tuple[np.ndarray, int, np.ndarray]:
    """Cayley table, identity index and inverse vector of a closed element list."""
    index = {key(g): i for i, g in enumerate(elements)}
    n = len(elements)
    prod = np.empty((n, n), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            k = index.get(key(mul(g, h)))
            if k is None:
                raise ValueError("element list is not closed under multiplication")
            prod[i, j] = k
    ident = [i for i in range(n) if all(prod[i, j] == j for j in range(n))]
    if len(ident) != 1:
        raise ValueError("no unique identity")
    e = ident[0]
    inv = np.array([int(np.nonzero(prod[i] == e)[0][0]) for i in range(n)], dtype=np.int64)
    return prod, e, inv


def closure(gens: Sequence, mul, identity, key=lambda g: g) -> List:
    """All products of ``gens`` (breadth first from the identity)."""
    seen = {key(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                k = key(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def perm_group(gens: Sequence[Perm]) -> FiniteModel:
    ident = tuple(range(len(gens[0])))
    elems = closure(gens, perm_mul, ident)
    prod, e, inv = table_from_elements(elems, perm_mul)
    return FiniteModel(len(elems), prod, inv, e)


def cyclic(n: int) -> FiniteModel:
    idx = np.arange(n)
    return FiniteModel(n, (idx[:, None] + idx[None, :]) % n, (-idx) % n, 0)


def direct_product(g: FiniteModel, h: FiniteModel) -> FiniteModel:
    n, m = g.size, h.size
    prod = np.empty((n * m, n * m), dtype=np.int64)
    for a, b, c, d in itertools.product(range(n), range(m), range(n), range(m)):
        prod[a * m + b, c * m + d] = g.product[a, c] * m + h.product[b, d]
    inv = np.array([g.inverse[a] * m + h.inverse[b] for a in range(n) for b in range(m)])
    return FiniteModel(n * m, prod, inv, g.identity * m + h.identity)


def quaternion8() -> FiniteModel:
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    gens = [units[1], units[2]]
    elems = closure(gens, qmul, units[0])
    prod, e, inv = table_from_elements(elems, qmul)
    return FiniteModel(len(elems), prod, inv, e)


def small_groups(max_order: int = 8) -> Dict[int, List[Tuple[str, FiniteModel]]]:
    """One representative of every isomorphism class of groups of order <= 8."""
    if max_order > 8:
        raise ValueError("only orders up to 8 are tabulated")
    s3 = perm_group([(1, 0, 2), (1, 2, 0)])
    d4 = perm_group([(1, 2, 3, 0), (3, 2, 1, 0)])
    c2 = cyclic(2)
    table = {
        1: [("C1", cyclic(1))], 2: [("C2", c2)], 3: [("C3", cyclic(3))],
        4: [("C4", cyclic(4)), ("C2xC2", direct_product(c2, c2))], 5: [("C5", cyclic(5))],
        6: [("C6", cyclic(6)), ("S3", s3)], 7: [("C7", cyclic(7))],
        8: [("C8", cyclic(8)), ("C4xC2", direct_product(cyclic(4), c2)),
            ("C2xC2xC2", direct_product(direct_product(c2, c2), c2)), ("D4", d4), ("Q8", quaternion8())],
    }
    return {n: gs for n, gs in table.items() if n <= max_order}


def isomorphic(g: FiniteModel, h: FiniteModel) -> bool:
    """Group isomorphism by extending generator images (products and identity only)."""
    n = g.size
    if n != h.size:
        return False
    order_g = sorted(_orders(g))
    if order_g != sorted(_orders(h)):
        return False
    gens = _generators(g)
    og, oh = _orders(g), _orders(h)
    for images in itertools.product(range(n), repeat=len(gens)):
        if any(og[a] != oh[b] for a, b in zip(gens, images)):
            continue
        phi = _extend(g, h, gens, images)
        if phi is not None:
            return True
    return False


def _orders(g: FiniteModel) -> List[int]:
    out = []
    for x in range(g.size):
        k, y = 1, x
        while y != g.identity:
            y = int(g.product[y, x])
            k += 1
        out.append(k)
    return out


def _generators(g: FiniteModel) -> List[int]:
    gens: List[int] = []
    span = {g.identity}
    for x in range(g.size):
        if x in span:
            continue
        gens.append(x)
        span = set(closure([g_ for g_ in gens], lambda a, b: int(g.product[a, b]), g.identity))
    return gens


def _extend(g: FiniteModel, h: FiniteModel, gens, images) -> Optional[Dict[int, int]]:
    phi = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = int(g.product[x, s])
                fy = int(h.product[phi[x], t])
                if y in phi:
                    if phi[y] != fy:
                        return None
                else:
                    phi[y] = fy
                    nxt.append(y)
        frontier = nxt
    if len(set(phi.values())) != g.size:
        return None
    for a in range(g.size):
        for b in range(g.size):
            if phi[int(g.product[a, b])] != int(h.product[phi[a], phi[b]]):
                return None
    return phi


# ---------------------------------------------------------------------------
# binary icosahedral group from unit quaternions

Quat = Tuple[float, float, float, float]


def qmul(p: Quat, q: Quat) -> Quat:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def _qkey(q: Quat) -> Tuple[int, ...]:
    return tuple(int(round(x * 1e6)) for x in q)


def binary_icosahedral() -> List[Quat]:
    """The 120 unit quaternions: 24 Hurwitz units and 96 even permutations of
    (0, +-1, +-phi, +-1/phi)/2."""
    phi = (1 + math.sqrt(5)) / 2
    out: List[Quat] = []
    for i in range(4):
        for s in (1.0, -1.0):
            q = [0.0] * 4
            q[i] = s
            out.append(tuple(q))
    for signs in itertools.product((0.5, -0.5), repeat=4):
        out.append(tuple(signs))
    even = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    for sb, sc, sd in itertools.product((1, -1), repeat=3):
        base = (0.0, sb * 0.5, sc * phi / 2, sd / (2 * phi))
        for p in even:
            out.append(tuple(base[p[k]] for k in range(4)))
    uniq = {_qkey(q): q for q in out}
    if len(uniq) != 120:
        raise AssertionError(f"expected 120 elements, got {len(uniq)}")
    return list(uniq.values())


def _parity(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def poincare_sphere_model() -> FiniteModel:
    """Binary icosahedral group with constants a, b satisfying (ab)^2 = a^3 = b^5
    and a != e, found by search over element pairs."""
    elems = binary_icosahedral()
    prod, e, inv = table_from_elements(elems, qmul, _qkey)
    n = len(elems)

    def power(x, k):
        y = x
        for _ in range(k - 1):
            y = int(prod[y, x])
        return y

    cube = [power(x, 3) for x in range(n)]
    fifth = [power(x, 5) for x in range(n)]
    for a in range(n):
        if a == e:
            continue
        for b in range(n):
            ab = int(prod[a, b])
            if int(prod[ab, ab]) == cube[a] == fifth[b]:
                span = closure([a, b], lambda x, y: int(prod[x, y]), e)
                if len(span) == n:
                    return FiniteModel(n, prod, inv, e, {"a": a, "b": b})
    raise AssertionError("no generating pair found")
