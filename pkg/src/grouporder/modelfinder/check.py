"""Exhaustive model checking and statement extraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..kernel.terms import EQ, IDENTITY, INVERSE, PRODUCT, Clause, ClauseSet, Term, max_var
from ..presentation import StatementSet
from .model import FiniteModel

# cap on the number of assignments evaluated in one numpy batch
_BATCH = 1 << 21


class VocabularyMismatch(ValueError):
    pass


@dataclass
class ModelCheck:
    ok: bool
    clause: Optional[Clause] = None
    assignment: Dict[int, int] = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.ok


def _eval(m: FiniteModel, t: Term, cols: List[np.ndarray], shape) -> np.ndarray:
    if isinstance(t, int):
        return cols[t]
    f = t[0]
    if f == PRODUCT:
        return m.product[_eval(m, t[1], cols, shape), _eval(m, t[2], cols, shape)]
    if f == INVERSE:
        return m.inverse[_eval(m, t[1], cols, shape)]
    if f == IDENTITY:
        return np.full(shape, m.identity, dtype=np.int64)
    if len(t) == 1 and f in m.constants:
        return np.full(shape, m.constants[f], dtype=np.int64)
    raise VocabularyMismatch(f"model does not interpret {f!r}")


def _clause_truth(m: FiniteModel, c: Clause, cols: List[np.ndarray], shape) -> np.ndarray:
    out = np.zeros(shape, dtype=bool)
    for sg, atom in c.literals:
        if atom[0] == EQ:
            val = _eval(m, atom[1], cols, shape) == _eval(m, atom[2], cols, shape)
        else:
            table = m.predicates.get(atom[0])
            if table is None or table.ndim != len(atom) - 1:
                raise VocabularyMismatch(f"model does not interpret {atom[0]}/{len(atom) - 1}")
            val = table[tuple(_eval(m, a, cols, shape) for a in atom[1:])]
        out |= val if sg else ~val
    return out


def _nvars(c: Clause) -> int:
    m = -1
    for _, atom in c.literals:
        for a in atom[1:]:
            m = max(m, max_var(a))
    return m + 1


def check_clause(m: FiniteModel, c: Clause) -> Optional[Dict[int, int]]:
    """None when ``c`` holds under every assignment, else a falsifying one."""
    n, k = m.size, _nvars(c)
    total = n ** k
    step = max(1, _BATCH // max(1, n ** max(0, k - 1))) if k else 1
    # split on the first variable so each batch holds at most ~_BATCH rows
    firsts = range(n) if k else [None]
    for start in range(0, len(firsts), step):
        chunk = firsts[start:start + step]
        if k == 0:
            cols, shape = [], (1,)
        else:
            grids = np.meshgrid(np.asarray(chunk, dtype=np.int64),
                                *[np.arange(n, dtype=np.int64)] * (k - 1), indexing="ij")
            cols = [g.ravel() for g in grids]
            shape = cols[0].shape
        truth = _clause_truth(m, c, cols, shape)
        if not truth.all():
            i = int(np.argmin(truth))
            return {v: int(cols[v][i]) for v in range(k)}
    del total
    return None


def check_model(m: FiniteModel, cs: Iterable[Clause]) -> ModelCheck:
    """Accept iff every clause holds under every assignment of its variables."""
    for c in cs:
        try:
            bad = check_clause(m, c)
        except VocabularyMismatch as exc:
            return ModelCheck(False, c, {}, str(exc))
        if bad is not None:
            return ModelCheck(False, c, bad, "clause falsified")
    return ModelCheck(True)


def evaluate(m: FiniteModel, t: Term) -> int:
    return m.value(t, {})


def extract_true_inequalities(m: FiniteModel, candidates: Sequence[Tuple[Term, Term]]) -> StatementSet:
    """The candidate pairs whose two sides differ in ``m``."""
    kept = [(s, t) for s, t in candidates if m.value(s, {}) != m.value(t, {})]
    return StatementSet.of(kept)
