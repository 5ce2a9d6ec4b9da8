"""Syntactic unification, one-way matching and clause subsumption."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .terms import EQ, Literal, Term

Subst = Dict[int, Term]


def walk(t: Term, sigma: Subst) -> Term:
    while isinstance(t, int) and t in sigma:
        t = sigma[t]
    return t


def occurs(v: int, t: Term, sigma: Subst) -> bool:
    t = walk(t, sigma)
    if isinstance(t, int):
        return t == v
    for a in t[1:]:
        if occurs(v, a, sigma):
            return True
    return False


def unify(s: Term, t: Term, sigma: Optional[Subst] = None) -> Optional[Subst]:
    """Most general unifier extending ``sigma`` (triangular form), or None.

    Occurs-check failure and symbol clash both give None.
    """
    sigma = {} if sigma is None else dict(sigma)
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = walk(a, sigma)
        b = walk(b, sigma)
        if a == b:
            continue
        if isinstance(a, int):
            if occurs(a, b, sigma):
                return None
            sigma[a] = b
        elif isinstance(b, int):
            if occurs(b, a, sigma):
                return None
            sigma[b] = a
        else:
            if a[0] != b[0] or len(a) != len(b):
                return None
            for i in range(1, len(a)):
                stack.append((a[i], b[i]))
    return sigma


def unify_atoms(a: tuple, b: tuple, sigma: Optional[Subst] = None) -> Optional[Subst]:
    if a[0] != b[0] or len(a) != len(b):
        return None
    return unify(("",) + a[1:], ("",) + b[1:], sigma)


def apply(t: Term, sigma: Subst) -> Term:
    if isinstance(t, int):
        if t in sigma:
            return apply(sigma[t], sigma)
        return t
    return (t[0],) + tuple(apply(a, sigma) for a in t[1:])


def substitute(t: Term, sigma: Subst) -> Term:
    """Simultaneous one-shot substitution (for matchers, whose range may
    reuse the pattern's variable indices)."""
    if isinstance(t, int):
        return sigma.get(t, t)
    return (t[0],) + tuple(substitute(a, sigma) for a in t[1:])


def apply_atom(atom: tuple, sigma: Subst) -> tuple:
    return (atom[0],) + tuple(apply(a, sigma) for a in atom[1:])


def apply_literal(lit: Literal, sigma: Subst) -> Literal:
    return (lit[0], apply_atom(lit[1], sigma))


def resolve_subst(sigma: Subst) -> Subst:
    """Idempotent form of a triangular substitution."""
    return {v: apply(t, sigma) for v, t in sigma.items()}


def match(pattern: Term, target: Term, sigma: Optional[Subst] = None) -> Optional[Subst]:
    """One-way matching: sigma with pattern·sigma == target (target vars are rigid)."""
    sigma = {} if sigma is None else dict(sigma)
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, int):
            bound = sigma.get(p)
            if bound is None:
                sigma[p] = t
            elif bound != t:
                return None
        else:
            if isinstance(t, int) or p[0] != t[0] or len(p) != len(t):
                return None
            for i in range(1, len(p)):
                stack.append((p[i], t[i]))
    return sigma


def match_atom(p: tuple, t: tuple, sigma: Optional[Subst] = None) -> Optional[Subst]:
    if p[0] != t[0] or len(p) != len(t):
        return None
    return match(("",) + p[1:], ("",) + t[1:], sigma)


def _lit_matches(p: Literal, t: Literal, sigma: Subst):
    """Yield extensions of sigma matching literal p onto t (equations both ways)."""
    if p[0] != t[0]:
        return
    pa, ta = p[1], t[1]
    if pa[0] != ta[0]:
        return
    s = match_atom(pa, ta, sigma)
    if s is not None:
        yield s
    if pa[0] == EQ:
        s2 = match(("", pa[1], pa[2]), ("", ta[2], ta[1]), sigma)
        if s2 is not None and s2 != s:
            yield s2


def subsumes(c: Sequence[Literal], d: Sequence[Literal]) -> bool:
    """Multiset subsumption: exists sigma with c·sigma a sub-multiset of d."""
    if len(c) > len(d):
        return False
    cands = []
    for p in c:
        lst = []
        for j, t in enumerate(d):
            if p[0] == t[0] and p[1][0] == t[1][0] and next(_lit_matches(p, t, {}), None) is not None:
                lst.append(j)
        if not lst:
            return False
        cands.append(lst)
    order = sorted(range(len(c)), key=lambda i: (len(cands[i]), -_lit_size(c[i])))
    used = [False] * len(d)

    def go(k: int, sigma: Subst) -> bool:
        if k == len(order):
            return True
        i = order[k]
        p = c[i]
        for j in cands[i]:
            if used[j]:
                continue
            for s in _lit_matches(p, d[j], sigma):
                used[j] = True
                if go(k + 1, s):
                    return True
                used[j] = False
        return False

    return go(0, {})


def _lit_size(lit: Literal) -> int:
    from .terms import term_size

    return sum(term_size(a) for a in lit[1][1:])


def match_literals_bijective(c: Sequence[Literal], d: Sequence[Literal]) -> bool:
    """Variant test: a variable bijection mapping c onto d as multisets."""
    if len(c) != len(d):
        return False
    used = [False] * len(d)

    def injective(sigma: Subst) -> bool:
        vals = [v for v in sigma.values()]
        return all(isinstance(v, int) for v in vals) and len(set(vals)) == len(vals)

    def go(k: int, sigma: Subst) -> bool:
        if k == len(c):
            return True
        for j, t in enumerate(d):
            if used[j]:
                continue
            for s in _lit_matches(c[k], t, sigma):
                if not injective(s):
                    continue
                used[j] = True
                if go(k + 1, s):
                    return True
                used[j] = False
        return False

    return go(0, {})
