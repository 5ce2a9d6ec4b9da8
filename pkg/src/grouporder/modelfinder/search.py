"""Per-size complete backtracking search for finite models.

Cells are the entries of the operation and predicate tables.  Each cell has a
bitmask domain; clauses are instantiated over the domain and watched, so an
instance is re-examined only when a cell blocking its evaluation gets a value.
An instance with every literal false is a conflict; one with a single open
literal whose top cell is the only unknown forces (or excludes) a value.

Symmetry breaking is the least number heuristic: decisions only touch cells
whose arguments are at most ``mdn`` (the largest element mentioned by a
decision) and try values up to ``mdn + 1``.  Propagation is a symmetric
closure, so unmentioned elements stay interchangeable and the search stays
complete for each size.

When the clause set contains the group axioms, the cancellation laws and
uniqueness of inverses are propagated as well.  Every model of the group
axioms satisfies them, so the set of models is unchanged.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..kernel.terms import EQ, IDENTITY, INVERSE, PRODUCT, Clause, ClauseSet, Term, is_variant, max_var
from .model import FiniteModel


@dataclass
class SearchBudget:
    min_size: int = 1
    max_size: int = 6
    max_seconds: float = 60.0  # per size

    def __post_init__(self):
        if not 1 <= self.min_size <= self.max_size:
            raise ValueError("need 1 <= min_size <= max_size")
        if self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")


@dataclass
class SizeOutcome:
    size: int
    status: str  # "model", "none" (exhausted) or "timeout"
    seconds: float
    decisions: int = 0


@dataclass
class FinderReport:
    model: Optional[FiniteModel]
    sizes: List[SizeOutcome] = field(default_factory=list)

    @property
    def size(self) -> Optional[int]:
        return self.model.size if self.model is not None else None

    @property
    def exhausted(self) -> List[int]:
        return [s.size for s in self.sizes if s.status == "none"]

    @property
    def minimal(self) -> bool:
        """True when every size below the model's was searched exhaustively."""
        if self.model is None:
            return False
        below = [s for s in self.sizes if s.size < self.model.size]
        return all(s.status == "none" for s in below) and (not below or below[0].size == 1)


class _Timeout(Exception):
    pass


_GROUP_AXIOMS = None


def _group_axioms() -> List[Clause]:
    global _GROUP_AXIOMS
    if _GROUP_AXIOMS is None:
        x, y, z = 0, 1, 2
        m = lambda s, t: (PRODUCT, s, t)  # noqa: E731
        e = (IDENTITY,)
        _GROUP_AXIOMS = [
            Clause([(True, (EQ, m(m(x, y), z), m(x, m(y, z))))]),
            Clause([(True, (EQ, m(x, e), x))]),
            Clause([(True, (EQ, m(e, x), x))]),
            Clause([(True, (EQ, m((INVERSE, x), x), e))]),
            Clause([(True, (EQ, m(x, (INVERSE, x)), e))]),
        ]
    return _GROUP_AXIOMS


def has_group_axioms(cs: ClauseSet) -> bool:
    return all(any(is_variant(g, c) for c in cs) for g in _group_axioms())


def _clause_vars(c: Clause) -> int:
    m = -1
    for _, atom in c.literals:
        for a in atom[1:]:
            m = max(m, max_var(a))
    return m + 1


class _Search:
    def __init__(self, cs: ClauseSet, n: int, deadline: float, group_mode: Optional[bool] = None):
        self.n = n
        self.deadline = deadline
        vocab = cs.vocabulary
        funcs: Dict[str, int] = {IDENTITY: 0, INVERSE: 1, PRODUCT: 2}
        preds: Dict[str, int] = {}
        if vocab is not None:
            for g in vocab.generators:
                funcs[g] = 0
            preds.update(vocab.predicates)
        for c in cs:
            for _, atom in c.literals:
                if atom[0] != EQ:
                    preds.setdefault(atom[0], len(atom) - 1)
                for a in atom[1:]:
                    self._scan(a, funcs)
        self.funcs = funcs
        self.preds = preds
        self.base: Dict[str, int] = {}
        self.arity: Dict[str, int] = {}
        self.cell_args: List[Tuple[int, ...]] = []
        self.cell_sym: List[str] = []
        full = (1 << n) - 1
        doms: List[int] = []
        for name, ar in list(funcs.items()) + list(preds.items()):
            self.base[name] = len(doms)
            self.arity[name] = ar
            d = 0b11 if name in preds else full
            for args in itertools.product(range(n), repeat=ar):
                self.cell_args.append(args)
                self.cell_sym.append(name)
                doms.append(d)
        self.is_pred = [s in preds for s in self.cell_sym]
        self.ncells = len(doms)
        self.dom = doms
        self.val = [-1] * self.ncells
        self.max_arg = [max(a) if a else -1 for a in self.cell_args]
        self.watch: List[List[int]] = [[] for _ in range(self.ncells)]
        self.trail: List[tuple] = []
        self.queue: List[int] = []
        self.decisions = 0
        self._tick = 0
        # compiled clauses: literals (positive, is_eq, payload)
        self.clauses = [self._compile(c) for c in cs]
        self.instances: List[Tuple[int, Tuple[int, ...]]] = []
        for ci, c in enumerate(cs):
            for env in itertools.product(range(n), repeat=_clause_vars(c)):
                self.instances.append((ci, env))
        self.group = has_group_axioms(cs) if group_mode is None else group_mode
        self.e_cell = self.base[IDENTITY]
        self.p_base = self.base[PRODUCT]
        self.i_base = self.base[INVERSE]
        self.const_cells = [self.base[name] for name, ar in funcs.items() if ar == 0]
        self.const_cells.remove(self.e_cell)
        self.const_cells.insert(0, self.e_cell)

    @staticmethod
    def _scan(t: Term, funcs: Dict[str, int]):
        if isinstance(t, int):
            return
        funcs.setdefault(t[0], len(t) - 1)
        for a in t[1:]:
            _Search._scan(a, funcs)

    def _compile_term(self, t: Term):
        if isinstance(t, int):
            return t
        return (self.base[t[0]], tuple(self._compile_term(a) for a in t[1:]))

    def _compile(self, c: Clause):
        lits = []
        for sg, atom in c.literals:
            if atom[0] == EQ:
                lits.append((sg, True, (self._compile_term(atom[1]), self._compile_term(atom[2]))))
            else:
                lits.append((sg, False, (self.base[atom[0]], tuple(self._compile_term(a) for a in atom[1:]))))
        return lits

    # -- evaluation -------------------------------------------------------

    def _ev(self, t, env):
        """(value, blocking cell, blocked at top); value -1 when unknown."""
        if isinstance(t, int):
            return env[t], -1, False
        base, args = t
        off = 0
        for a in args:
            v, b, _ = self._ev(a, env)
            if v < 0:
                return -1, b, False
            off = off * self.n + v
        cell = base + off
        v = self.val[cell]
        if v < 0:
            return -1, cell, True
        return v, -1, False

    def _eval_instance(self, k: int) -> None:
        ci, env = self.instances[k]
        open_lits = []
        for sg, is_eq, payload in self.clauses[ci]:
            if is_eq:
                s, t = payload
                vs, bs, ts = self._ev(s, env)
                vt, bt, tt = self._ev(t, env)
                if vs >= 0 and vt >= 0:
                    if (vs == vt) == sg:
                        return
                    continue
                open_lits.append((sg, True, vs, bs, ts, vt, bt, tt))
            else:
                base, args = payload
                off = 0
                blocked = -1
                for a in args:
                    v, b, _ = self._ev(a, env)
                    if v < 0:
                        blocked = b
                        break
                    off = off * self.n + v
                if blocked >= 0:
                    open_lits.append((sg, False, -1, blocked, False, -1, -1, False))
                    continue
                cell = base + off
                v = self.val[cell]
                if v >= 0:
                    if (v == 1) == sg:
                        return
                    continue
                open_lits.append((sg, False, -1, cell, True, -1, -1, False))
        if not open_lits:
            raise _Conflict()
        if len(open_lits) == 1:
            sg, is_eq, vs, bs, ts, vt, bt, tt = open_lits[0]
            if is_eq:
                if vs >= 0 and tt:
                    self._force(bt, vs, sg)
                    return
                if vt >= 0 and ts:
                    self._force(bs, vt, sg)
                    return
                for b in (bs, bt):
                    if b >= 0:
                        self._watch(b, k)
                return
            if bs >= 0 and ts:
                self._force(bs, 1 if sg else 0, True)
                return
            self._watch(bs, k)
            return
        # two open literals keep the instance idle until one of them closes
        for lit in open_lits[:2]:
            self._watch(lit[3] if lit[3] >= 0 else lit[6], k)

    def _force(self, cell: int, v: int, positive: bool) -> None:
        if positive:
            if not self.assign(cell, v):
                raise _Conflict()
        elif not self.prune(cell, v):
            raise _Conflict()

    def _watch(self, cell: int, k: int) -> None:
        self.watch[cell].append(k)
        self.trail.append((2, cell))

    # -- domain operations --------------------------------------------------

    def assign(self, c: int, v: int) -> bool:
        cur = self.val[c]
        if cur >= 0:
            return cur == v
        d = self.dom[c]
        if not (d >> v) & 1:
            return False
        self.trail.append((0, c, d))
        self.val[c] = v
        self.dom[c] = 1 << v
        self.queue.append(c)
        return True

    def prune(self, c: int, v: int) -> bool:
        cur = self.val[c]
        if cur >= 0:
            return cur != v
        d = self.dom[c]
        if not (d >> v) & 1:
            return True
        nd = d & ~(1 << v)
        if nd == 0:
            return False
        self.trail.append((1, c, d))
        self.dom[c] = nd
        if nd & (nd - 1) == 0:
            return self.assign(c, nd.bit_length() - 1)
        return True

    def undo(self, mark: int) -> None:
        trail = self.trail
        val, dom, watch = self.val, self.dom, self.watch
        while len(trail) > mark:
            ent = trail.pop()
            if ent[0] == 0:
                val[ent[1]] = -1
                dom[ent[1]] = ent[2]
            elif ent[0] == 1:
                dom[ent[1]] = ent[2]
            else:
                watch[ent[1]].pop()
        self.queue.clear()

    def propagate(self) -> bool:
        try:
            while self.queue:
                c = self.queue.pop()
                if self.group:
                    self._group_rules(c)
                w = self.watch[c]
                for i in range(len(w)):
                    self._eval_instance(w[i])
        except _Conflict:
            self.queue.clear()
            return False
        return True

    def _group_rules(self, c: int) -> None:
        n = self.n
        v = self.val[c]
        pb = self.p_base
        if pb <= c < pb + n * n:
            i, j = divmod(c - pb, n)
            for k in range(n):
                if k != j and not self.prune(pb + i * n + k, v):
                    raise _Conflict()
                if k != i and not self.prune(pb + k * n + j, v):
                    raise _Conflict()
            e = self.val[self.e_cell]
            if e >= 0 and v == e:
                if not self.assign(self.i_base + i, j) or not self.assign(self.i_base + j, i):
                    raise _Conflict()
        elif self.i_base <= c < self.i_base + n:
            # inverses are unique, so the inverse table is a permutation
            for k in range(n):
                if k != c - self.i_base and not self.prune(self.i_base + k, v):
                    raise _Conflict()
        elif c == self.e_cell:
            for i in range(n):
                for j in range(n):
                    if self.val[pb + i * n + j] == v:
                        if not self.assign(self.i_base + i, j):
                            raise _Conflict()

    def _check_time(self) -> None:
        self._tick += 1
        if self._tick & 255 == 0 and time.monotonic() > self.deadline:
            raise _Timeout()

    # -- search -----------------------------------------------------------

    def _choose(self, mdn: int) -> Tuple[int, int]:
        """(cell, mdn) for the next decision, or (-1, mdn) when complete."""
        for c in self.const_cells:
            if self.val[c] < 0:
                return c, mdn
        while True:
            best, key = -1, None
            lim = (1 << (mdn + 2)) - 1
            for c in range(self.ncells):
                if self.val[c] >= 0 or self.max_arg[c] > mdn:
                    continue
                d = self.dom[c] if self.is_pred[c] else self.dom[c] & lim
                k = (bin(d).count("1"), self.max_arg[c], c)
                if key is None or k < key:
                    best, key = c, k
            if best >= 0:
                return best, mdn
            if mdn >= self.n - 1:
                return -1, mdn
            mdn += 1

    def models(self) -> Iterator[FiniteModel]:
        mark = len(self.trail)
        try:
            for k in range(len(self.instances)):
                self._eval_instance(k)
        except _Conflict:
            self.undo(mark)
            return
        if not self.propagate():
            self.undo(mark)
            return
        yield from self._search(-1)
        self.undo(mark)

    def _search(self, mdn: int) -> Iterator[FiniteModel]:
        self._check_time()
        cell, mdn = self._choose(mdn)
        if cell < 0:
            yield self._extract()
            return
        d = self.dom[cell]
        if not self.is_pred[cell]:
            d &= (1 << (mdn + 2)) - 1
        for v in range(self.n if not self.is_pred[cell] else 2):
            if not (d >> v) & 1:
                continue
            self.decisions += 1
            mark = len(self.trail)
            if self.assign(cell, v) and self.propagate():
                new_mdn = mdn
                if not self.is_pred[cell]:
                    new_mdn = max(mdn, v, self.max_arg[cell])
                yield from self._search(new_mdn)
            self.undo(mark)

    def _extract(self) -> FiniteModel:
        n = self.n
        val = self.val

        def table(name):
            b, ar = self.base[name], self.arity[name]
            return np.array(val[b:b + n ** ar], dtype=np.int64).reshape((n,) * ar) if ar else val[b]

        constants = {name: val[self.base[name]] for name, ar in self.funcs.items()
                     if ar == 0 and name != IDENTITY}
        preds = {name: table(name).astype(bool) for name in self.preds}
        return FiniteModel(n, table(PRODUCT), table(INVERSE), val[self.e_cell], constants, preds)


class _Conflict(Exception):
    pass


def search_size(cs: ClauseSet, n: int, max_seconds: float = 60.0) -> Tuple[str, Optional[FiniteModel], int]:
    """Exhaustively search size ``n``: ("model", m), ("none", None) or ("timeout", None)."""
    s = _Search(cs, n, time.monotonic() + max_seconds)
    try:
        for m in s.models():
            return "model", m, s.decisions
    except _Timeout:
        return "timeout", None, s.decisions
    return "none", None, s.decisions


def find_model_report(cs: ClauseSet, budget: Optional[SearchBudget] = None) -> FinderReport:
    budget = budget or SearchBudget()
    rep = FinderReport(None)
    for n in range(budget.min_size, budget.max_size + 1):
        t0 = time.monotonic()
        status, m, dec = search_size(cs, n, budget.max_seconds)
        rep.sizes.append(SizeOutcome(n, status, time.monotonic() - t0, dec))
        if m is not None:
            rep.model = m
            break
    return rep


def find_model(cs: ClauseSet, budget: Optional[SearchBudget] = None) -> Optional[FiniteModel]:
    """Smallest model within the budget, trying sizes in increasing order."""
    return find_model_report(cs, budget).model


def enumerate_models(cs: ClauseSet, n: int, max_seconds: float = 300.0,
                     limit: Optional[int] = None) -> Iterator[FiniteModel]:
    """All models of size ``n`` up to the finder's symmetry breaking."""
    s = _Search(cs, n, time.monotonic() + max_seconds)
    count = 0
    for m in s.models():
        yield m
        count += 1
        if limit is not None and count >= limit:
            return
