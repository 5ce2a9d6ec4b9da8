"""TPTP CNF emission.

Product, inverse and identity become ``mul/2``, ``inv/1`` and ``e``;
predicate and generator names are lower-cased (quoted when that is not
enough); variables are X, Y, Z, U, V, W, then X6, X7, ...
"""

from __future__ import annotations

import re
from typing import List

from ..kernel.terms import EQ, IDENTITY, INVERSE, PRODUCT, Clause, ClauseSet, Term

_VARS = ("X", "Y", "Z", "U", "V", "W")
HEADER = "% TPTP CNF problem written by grouporder"


def _var(i: int) -> str:
    return _VARS[i] if i < len(_VARS) else f"X{i}"


def _name(s: str) -> str:
    low = s[0].lower() + s[1:]
    if re.fullmatch(r"[a-z][A-Za-z0-9_]*", low):
        return low
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _term(t: Term) -> str:
    if isinstance(t, int):
        return _var(t)
    f = t[0]
    if f == PRODUCT:
        return f"mul({_term(t[1])},{_term(t[2])})"
    if f == INVERSE:
        return f"inv({_term(t[1])})"
    if f == IDENTITY:
        return "e"
    if len(t) == 1:
        return _name(f)
    return f"{_name(f)}({','.join(_term(a) for a in t[1:])})"


def _literal(sign: bool, atom) -> str:
    if atom[0] == EQ:
        return f"{_term(atom[1])} {'=' if sign else '!='} {_term(atom[2])}"
    a = f"{_name(atom[0])}({','.join(_term(x) for x in atom[1:])})"
    return a if sign else "~" + a


def _clause_name(c: Clause, k: int, used: set) -> str:
    base = re.sub(r"[^a-z0-9_]", "_", c.label.lower()) if c.label else f"c{k}"
    name = f"ax_{base}"
    if name in used:
        name = f"{name}_{k}"
    used.add(name)
    return name


def emit_tptp(cs: ClauseSet) -> str:
    lines: List[str] = [HEADER]
    used: set = set()
    for k, c in enumerate(cs, 1):
        body = " | ".join(_literal(s, a) for s, a in c.literals) or "$false"
        lines.append(f"cnf({_clause_name(c, k, used)}, axiom, {body}).")
    return "\n".join(lines) + "\n"
