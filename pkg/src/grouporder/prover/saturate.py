"""Given-clause saturation: superposition, ordered resolution with negative
literal selection, equality resolution/factoring, demodulation and forward
subsumption, under a Knuth-Bendix ordering."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..kernel.kbo import KBO
from ..kernel.terms import (
    EQ, Clause, ClauseSet, Literal, Term, is_ground, max_var, rename_literals, replace_at, shift, term_size,
)
from ..kernel.unify import apply, match, substitute, match_atom, subsumes, unify, unify_atoms
from .index import DiscTree
from .proof import Proof, ProofStep

REFUTATION = "refutation"
SATURATED = "saturated"
RESOURCE_OUT = "resource-out"

_TRUE = ("$true",)


@dataclass
class SaturationLimits:
    max_seconds: float = 60.0
    max_clauses: int = 200_000
    max_weight: Optional[int] = None
    pick_ratio: Tuple[int, int] = (1, 4)
    max_given: Optional[int] = None
    para_from_vars: bool = False

    def __post_init__(self):
        if self.max_seconds <= 0 or self.max_clauses <= 0:
            raise ValueError("limits must be positive")
        if self.max_weight is not None and self.max_weight <= 0:
            raise ValueError("limits must be positive")
        if min(self.pick_ratio) < 0 or sum(self.pick_ratio) <= 0:
            raise ValueError("pick ratio needs a positive entry")


@dataclass
class ProverOutcome:
    status: str
    proof: Optional[Proof] = None
    stats: Dict[str, float] = field(default_factory=dict)
    reason: str = ""

    @property
    def refuted(self) -> bool:
        return self.status == REFUTATION


class _C:
    __slots__ = ("id", "lits", "weight", "nvars", "elig", "selected", "alive", "active", "demod",
                 "_syms", "_subs", "subs_indexed")

    def __init__(self, cid: int, lits: Tuple[Literal, ...]):
        self.id = cid
        self.lits = lits
        self.weight = sum(term_size(a) for _, atom in lits for a in atom[1:]) + len(lits)
        self.nvars = _nvars(lits)
        self.elig: Tuple[int, ...] = ()
        self.selected = False
        self.alive = True
        self.active = False
        self.demod = False
        self._syms = None
        self._subs = None
        self.subs_indexed = False

    @property
    def subterms(self) -> frozenset:
        if self._subs is None:
            self._subs = frozenset(sub for _, atom in self.lits for a in atom[1:]
                                   for _, sub in _nonvar_positions(a))
        return self._subs

    @property
    def syms(self) -> frozenset:
        if self._syms is None:
            acc = set()
            for _, atom in self.lits:
                for a in atom[1:]:
                    _collect_syms(a, acc)
            self._syms = frozenset(acc)
        return self._syms


def _collect_syms(t, acc) -> None:
    if isinstance(t, int):
        return
    acc.add(t[0])
    for a in t[1:]:
        _collect_syms(a, acc)


def _nvars(lits) -> int:
    m = -1
    for _, atom in lits:
        for a in atom[1:]:
            v = max_var(a)
            if v > m:
                m = v
    return m + 1


def _shift_lits(lits, off):
    if off == 0:
        return list(lits)
    return [(sg, (atom[0],) + tuple(shift(a, off) for a in atom[1:])) for sg, atom in lits]


def _inst(lits, sigma):
    return [(sg, (atom[0],) + tuple(apply(a, sigma) for a in atom[1:])) for sg, atom in lits]


def _features(lits) -> Dict[Tuple[bool, str], int]:
    """Literal counts per (sign, predicate) and symbol counts per sign; all
    are monotone under instantiation, so a subsumer never exceeds them."""
    out: Dict[Tuple[bool, str], int] = {}
    for sg, atom in lits:
        k = (sg, atom[0])
        out[k] = out.get(k, 0) + 1
        for a in atom[1:]:
            _count_syms(a, sg, out)
    return out


def _count_syms(t, sg, out) -> None:
    if isinstance(t, int):
        return
    k = (sg, "#" + t[0])
    out[k] = out.get(k, 0) + 1
    for a in t[1:]:
        _count_syms(a, sg, out)


def _resolved(sigma):
    return {v: apply(t, sigma) for v, t in sigma.items()}


def _nonvar_positions(t, path=()):
    if isinstance(t, int):
        return
    yield path, t
    for i in range(1, len(t)):
        yield from _nonvar_positions(t[i], path + (i,))


class _Timeout(Exception):
    pass


class _Refuted(Exception):
    pass


class Saturator:
    def __init__(self, cs: ClauseSet, limits: SaturationLimits):
        self.cs = cs
        self.limits = limits
        self.kbo = KBO(cs.vocabulary)
        self.steps: Dict[int, Tuple[str, Tuple[int, ...], Tuple[Literal, ...], dict]] = {}
        self.clauses: Dict[int, _C] = {}
        self.next_id = 1
        self.passive_w: List[Tuple[int, int]] = []
        self.passive_a: List[int] = []
        self.n_passive = 0
        self.active: List[_C] = []
        self.demods: List[_C] = []
        # indexes
        self.demod_tree = DiscTree()  # lhs -> (clause, dir, lhs, rhs, oriented)
        self.unit_pos = DiscTree()  # atom -> (clause, lit idx)
        self.unit_neg = DiscTree()
        # non-unit clauses filed under their largest literal: atom -> (clause, features)
        self.nonunit_pos = DiscTree()
        self.nonunit_neg = DiscTree()
        self.from_tree = DiscTree()  # lhs -> (clause, lit, dir)
        self.into_tree = DiscTree()  # subterm -> (clause, lit, path)
        self.sub_tree = DiscTree()  # subterm of active clause/demodulator -> (clause, subterm)
        self.pos_lits = DiscTree()  # atom -> (clause, lit)
        self.neg_lits = DiscTree()
        self._self_id = -1
        # term -> number of demodulators it was found irreducible against
        self._nf: Dict = {}
        self.demod_list: List[tuple] = []
        self.incomplete = False
        self.empty_id: Optional[int] = None
        self.generated = 0
        self.kept = 0
        self.given = 0
        self.start = 0.0
        self.deadline = 0.0

    # -- bookkeeping ----------------------------------------------------

    def _new_id(self) -> int:
        i = self.next_id
        self.next_id += 1
        return i

    def _check_time(self):
        if time.monotonic() > self.deadline:
            raise _Timeout()

    def greater(self, s, t) -> bool:
        return self.kbo.greater(s, t)

    # -- literal order --------------------------------------------------

    def _ms(self, lit):
        sg, atom = lit
        ms = [atom[1], atom[2]] if atom[0] == EQ else [atom, _TRUE]
        return ms if sg else ms + ms

    def _ms_greater(self, m, n) -> bool:
        m2 = list(m)
        n2 = []
        for t in n:
            if t in m2:
                m2.remove(t)
            else:
                n2.append(t)
        if not m2:
            return False
        g = self.greater
        return all(any(g(a, b) for a in m2) for b in n2)

    def _eligible(self, lits) -> Tuple[Tuple[int, ...], bool]:
        best, bw = -1, -1
        for i, (sg, atom) in enumerate(lits):
            if not sg:
                w = sum(term_size(a) for a in atom[1:])
                if w > bw:
                    best, bw = i, w
        if best >= 0:
            return (best,), True
        if len(lits) == 1:
            return (0,), False
        ms = [self._ms(l) for l in lits]
        out = []
        for i in range(len(lits)):
            if not any(j != i and self._ms_greater(ms[j], ms[i]) for j in range(len(lits))):
                out.append(i)
        return tuple(out), False

    # -- simplification -------------------------------------------------

    def _normalize(self, t, rec, li, path):
        if isinstance(t, int):
            return t
        ndem = len(self.demod_list)
        seen = self._nf.get(t)
        if seen == ndem:
            return t
        if len(t) > 1:
            args = []
            changed = False
            for k in range(1, len(t)):
                a = self._normalize(t[k], rec, li, path + (k,))
                if a is not t[k]:
                    changed = True
                args.append(a)
            if changed:
                t = (t[0],) + tuple(args)
                seen = None
        if seen is not None and ndem - seen <= 8:
            # arguments are irreducible; only demodulators newer than the cache entry can fire at the root
            cands = [it for it in self.demod_list[seen:] if it[2][0] == t[0]]
        else:
            cands = self.demod_tree.generalizations(t)
        skipped = False
        for dem, dr, lhs, rhs, oriented in cands:
            if not dem.alive:
                continue
            sigma = match(lhs, t)
            if sigma is None:
                continue
            if dem.id == self._self_id:
                skipped = True
                continue
            new = substitute(rhs, sigma)
            if not oriented and not self.greater(t, new):
                continue
            rec.append((dem.id, dr, li, path, sigma))
            return self._normalize(new, rec, li, path)
        if not skipped:
            self._nf[t] = ndem
        return t

    def _demodulate(self, lits):
        rec = []
        out = []
        for li, (sg, atom) in enumerate(lits):
            args = []
            for k in range(1, len(atom)):
                args.append(self._normalize(atom[k], rec, li, (k,)))
            out.append((sg, (atom[0],) + tuple(args)))
        return out, rec

    def _unit_delete(self, lits):
        """Remove literals contradicted by a unit; returns (lits, [(unit, i, sigma)])."""
        for i, (sg, atom) in enumerate(lits):
            tree = self.unit_neg if sg else self.unit_pos
            for unit, ui in tree.generalizations(atom if atom[0] != EQ else atom):
                if not unit.alive:
                    continue
                uatom = unit.lits[0][1]
                sigma = match_atom(uatom, atom)
                if sigma is None and atom[0] == EQ:
                    sigma = match(("", uatom[1], uatom[2]), ("", atom[2], atom[1]))
                if sigma is None:
                    continue
                return lits[:i] + lits[i + 1:], (unit, i, sigma)
        return None

    def _tautology(self, lits) -> bool:
        seen = set()
        for sg, atom in lits:
            if sg and atom[0] == EQ and atom[1] == atom[2]:
                return True
            if (not sg, atom) in seen:
                return True
            if atom[0] == EQ and (not sg, (EQ, atom[2], atom[1])) in seen:
                return True
            seen.add((sg, atom))
        return False

    def _subsumed(self, lits) -> bool:
        for sg, atom in lits:
            tree = self.unit_pos if sg else self.unit_neg
            for unit, _ in tree.generalizations(atom):
                if unit.alive and match_atom(unit.lits[0][1], atom) is not None:
                    return True
        if len(lits) < 2:
            return False
        feat = _features(lits)
        tried = set()
        for sg, atom in lits:
            tree = self.nonunit_pos if sg else self.nonunit_neg
            queries = [atom, (EQ, atom[2], atom[1])] if atom[0] == EQ else [atom]
            for q in queries:
                for c, cf in tree.generalizations(q):
                    if c.id in tried:
                        continue
                    tried.add(c.id)
                    if (c.alive and len(c.lits) <= len(lits)
                            and all(feat.get(f, 0) >= n for f, n in cf.items())
                            and subsumes(c.lits, lits)):
                        return True
        return False

    # -- clause intake --------------------------------------------------

    def _record(self, cid, rule, premises, lits, detail):
        self.steps[cid] = (rule, tuple(premises), tuple(lits), detail)

    def _simplify(self, cid, lits, pending):
        """Forward-simplify; pending accumulates steps. Returns (cid, lits)."""
        # a retained demodulator must not rewrite itself away
        self._self_id = cid
        while True:
            new, rec = self._demodulate(lits)
            if rec:
                prem = [cid]
                index = {}
                rewrites = []
                for did, dr, li, path, sigma in rec:
                    if did not in index:
                        index[did] = len(prem)
                        prem.append(did)
                    rewrites.append((index[did], dr, li, path, sigma))
                lits = rename_literals(new)
                nid = self._new_id()
                pending.append((nid, "demodulation-rewrite", prem, lits, {"rewrites": rewrites}))
                cid = nid
            changed = False
            for i, (sg, atom) in enumerate(lits):
                if not sg and atom[0] == EQ and atom[1] == atom[2]:
                    lits = rename_literals(lits[:i] + lits[i + 1:])
                    nid = self._new_id()
                    pending.append((nid, "equality-resolution", [cid], lits, {"lit": i, "subst": {}}))
                    cid = nid
                    changed = True
                    break
            if changed:
                continue
            ud = self._unit_delete(list(lits))
            if ud is not None:
                rest, (unit, i, sigma) = ud
                # premise 1: the clause, premise 2: the unit shifted past it
                off = _nvars(lits)
                ssig = {v + off: t for v, t in sigma.items()}
                lits = rename_literals(rest)
                nid = self._new_id()
                pending.append((nid, "binary-resolution", [cid, unit.id], lits,
                                {"lits": [i, 0], "subst": ssig}))
                cid = nid
                continue
            if not rec:
                return cid, lits

    def add_clause(self, rule, premises, lits, detail, to_passive=True) -> Optional[_C]:
        self.generated += 1
        lits = rename_literals(lits)
        cid = self._new_id()
        pending = [(cid, rule, premises, lits, detail)]
        if self._tautology(lits):
            return None
        cid, lits = self._simplify(cid, lits, pending)
        if not lits:
            for p in pending:
                self._record(*p)
            self.empty_id = cid
            raise _Refuted()
        if self._tautology(lits):
            return None
        w = sum(term_size(a) for _, atom in lits for a in atom[1:]) + len(lits)
        if self.limits.max_weight is not None and w > self.limits.max_weight and rule != "input":
            self.incomplete = True
            return None
        if self._subsumed(lits):
            return None
        for p in pending:
            self._record(*p)
        c = _C(cid, tuple(lits))
        c.elig, c.selected = self._eligible(c.lits)
        self.clauses[cid] = c
        self.kept += 1
        if self.kept > self.limits.max_clauses:
            self.incomplete = True
            raise _Timeout()
        self._index_retained(c)
        if len(c.lits) == 1:
            self._unit_conflict(c)
        if to_passive:
            heapq.heappush(self.passive_w, (c.weight, c.id))
            heapq.heappush(self.passive_a, c.id)
            self.n_passive += 1
        if len(c.lits) == 1 and c.lits[0][0] and c.lits[0][1][0] == EQ:
            self._add_demod(c)
        return c

    def _index_retained(self, c: _C):
        if len(c.lits) == 1:
            sg, atom = c.lits[0]
            tree = self.unit_pos if sg else self.unit_neg
            tree.insert(atom, (c, 0))
            if atom[0] == EQ:
                tree.insert((EQ, atom[2], atom[1]), (c, 0))
        else:
            # any subsumer's largest literal must generalize some literal of the subsumed clause
            sg, atom = max(c.lits, key=lambda l: sum(term_size(a) for a in l[1][1:]))
            (self.nonunit_pos if sg else self.nonunit_neg).insert(atom, (c, _features(c.lits)))

    def _unit_conflict(self, c: _C):
        sg, atom = c.lits[0]
        tree = self.unit_neg if sg else self.unit_pos
        off = c.nvars
        for other, _ in tree.unifiable(atom):
            if not other.alive or other is c:
                continue
            oatom = _shift_lits(other.lits, off)[0][1]
            sigma = unify_atoms(atom, oatom)
            if sigma is None and atom[0] == EQ:
                sigma = unify(("", atom[1], atom[2]), ("", oatom[2], oatom[1]))
            if sigma is None:
                continue
            self.add_clause("binary-resolution", [c.id, other.id], [],
                            {"lits": [0, 0], "subst": _resolved(sigma)})

    def _add_demod(self, c: _C):
        l, r = c.lits[0][1][1], c.lits[0][1][2]
        added = False
        for dr, (a, b) in enumerate(((l, r), (r, l))):
            if isinstance(a, int):
                continue
            if self.greater(a, b):
                item = (c, dr, a, b, True)
                self.demod_tree.insert(a, item)
                self.demod_list.append(item)
                added = True
                break
        if not added:
            return
        c.demod = True
        self.demods.append(c)
        self._index_subterms(c)
        self._back_demodulate(c)

    def _index_subterms(self, c: _C):
        """Record every non-variable subterm of an active clause or demodulator."""
        if c.subs_indexed:
            return
        c.subs_indexed = True
        for sub in c.subterms:
            self.sub_tree.insert(sub, (c, sub))

    def _back_demodulate(self, d: _C):
        lhs = d.lits[0][1][1] if self.greater(d.lits[0][1][1], d.lits[0][1][2]) else d.lits[0][1][2]
        hit = set()
        for c, sub in self.sub_tree.instances(lhs):
            if c.alive and c is not d and c.id not in hit and (c.active or c.demod):
                if match(lhs, sub) is not None:
                    hit.add(c.id)
        victims = []
        if hit:
            victims = [c for c in self.active if c.id in hit]
            victims += [c for c in self.demods if c.id in hit and not c.active]
        if not victims:
            return
        for c in victims:
            c.alive = False
        self.active = [c for c in self.active if c.alive]
        self.demods = [c for c in self.demods if c.alive]
        for c in victims:
            self._check_time()
            self.generated += 1
            pending = []
            nid, lits = self._simplify(c.id, list(c.lits), pending)
            if nid == c.id:
                # nothing changed after all (lhs match was blocked); revive
                c.alive = True
                if c.active:
                    self.active.append(c)
                if c.demod:
                    self.demods.append(c)
                continue
            last = pending[-1]
            self._readd(pending, last)

    def _readd(self, pending, last):
        nid, rule, premises, lits, detail = last
        if not lits:
            for p in pending:
                self._record(*p)
            self.empty_id = nid
            raise _Refuted()
        if self._tautology(lits) or self._subsumed(lits):
            return
        for p in pending:
            self._record(*p)
        c = _C(nid, tuple(lits))
        c.elig, c.selected = self._eligible(c.lits)
        self.clauses[nid] = c
        self.kept += 1
        self._index_retained(c)
        if len(c.lits) == 1:
            self._unit_conflict(c)
        heapq.heappush(self.passive_w, (c.weight, c.id))
        heapq.heappush(self.passive_a, c.id)
        self.n_passive += 1
        if len(c.lits) == 1 and c.lits[0][0] and c.lits[0][1][0] == EQ:
            self._add_demod(c)

    # -- given clause ---------------------------------------------------

    def _pick(self) -> Optional[_C]:
        a, w = self.limits.pick_ratio
        cycle = a + w
        use_age = a > 0 and (w == 0 or self.given % cycle < a)
        heap = self.passive_a if use_age else self.passive_w
        while heap:
            item = heapq.heappop(heap)
            cid = item if use_age else item[1]
            c = self.clauses.get(cid)
            if c is None or not c.alive or c.active:
                continue
            return c
        other = self.passive_w if use_age else self.passive_a
        while other:
            item = heapq.heappop(other)
            cid = item[1] if use_age else item
            c = self.clauses.get(cid)
            if c is None or not c.alive or c.active:
                continue
            return c
        return None

    def _activate(self, c: _C):
        # re-simplify with demodulators learnt since c was kept
        pending = []
        nid, lits = self._simplify(c.id, list(c.lits), pending)
        if nid != c.id:
            c.alive = False
            if c.demod:
                self.demods = [d for d in self.demods if d is not c]
            if not lits:
                for p in pending:
                    self._record(*p)
                self.empty_id = nid
                raise _Refuted()
            if self._tautology(lits) or self._subsumed(lits):
                return None
            for p in pending:
                self._record(*p)
            c2 = _C(nid, tuple(lits))
            c2.elig, c2.selected = self._eligible(c2.lits)
            self.clauses[nid] = c2
            self.kept += 1
            self._index_retained(c2)
            if len(c2.lits) == 1:
                self._unit_conflict(c2)
            if len(c2.lits) == 1 and c2.lits[0][0] and c2.lits[0][1][0] == EQ:
                self._add_demod(c2)
                if not c2.alive:
                    return None
            c = c2
        c.active = True
        self.active.append(c)
        self._index_active(c)
        self._index_subterms(c)
        return c

    def _index_active(self, c: _C):
        for i in c.elig:
            sg, atom = c.lits[i]
            if atom[0] == EQ:
                sides = []
                for k, o in ((1, 2), (2, 1)):
                    if not self.greater(atom[o], atom[k]):
                        sides.append(k)
                for k in sides:
                    for p, sub in _nonvar_positions(atom[k], (k,)):
                        self.into_tree.insert(sub, (c, i, p))
                if sg and not c.selected:
                    for dr, k in ((0, 1), (1, 2)):
                        if k in sides and (self.limits.para_from_vars or not isinstance(atom[k], int)):
                            self.from_tree.insert(atom[k], (c, i, dr))
                (self.pos_lits if sg else self.neg_lits).insert(atom, (c, i))
            else:
                for k in range(1, len(atom)):
                    for p, sub in _nonvar_positions(atom[k], (k,)):
                        self.into_tree.insert(sub, (c, i, p))
                (self.pos_lits if sg else self.neg_lits).insert(atom, (c, i))

    def _infer(self, g: _C):
        for i in g.elig:
            self._check_time()
            sg, atom = g.lits[i]
            if atom[0] == EQ:
                if not sg:
                    sigma = unify(atom[1], atom[2])
                    if sigma is not None:
                        out = _inst(g.lits[:i] + g.lits[i + 1:], sigma)
                        self.add_clause("equality-resolution", [g.id], out,
                                        {"lit": i, "subst": _resolved(sigma)})
                else:
                    self._from(g, i)
                    self._eq_factor(g, i)
                self._resolve(g, i)
                self._into(g, i)
            else:
                self._resolve(g, i)
                self._into(g, i)
                if sg and not g.selected:
                    self._factor(g, i)

    def _resolve(self, g: _C, i: int):
        sg, atom = g.lits[i]
        tree = self.neg_lits if sg else self.pos_lits
        cands = list(tree.unifiable(atom))
        if atom[0] == EQ:
            seen = {(id(o), j) for o, j in cands}
            for o, j in tree.unifiable((EQ, atom[2], atom[1])):
                if (id(o), j) not in seen:
                    cands.append((o, j))
        for other, j in cands:
            if not other.alive or not other.active:
                continue
            if sg and g.selected:
                continue
            pos_c, pi, neg_c, ni = (g, i, other, j) if sg else (other, j, g, i)
            if pos_c.selected:
                continue
            off = pos_c.nvars
            nl = _shift_lits(neg_c.lits, off)
            pa, na = pos_c.lits[pi][1], nl[ni][1]
            sigmas = [unify_atoms(pa, na)]
            if pa[0] == EQ:
                sigmas.append(unify(("", pa[1], pa[2]), ("", na[2], na[1])))
            for sigma in sigmas:
                if sigma is None:
                    continue
                out = _inst(list(pos_c.lits[:pi] + pos_c.lits[pi + 1:]) + nl[:ni] + nl[ni + 1:], sigma)
                self.add_clause("binary-resolution", [pos_c.id, neg_c.id], out,
                                {"lits": [pi, ni], "subst": _resolved(sigma)})
                if not g.alive:
                    return

    def _from(self, g: _C, i: int):
        """Superposition from g's equation into active clauses."""
        if g.selected:
            return
        atom = g.lits[i][1]
        for dr, (l, r) in enumerate(((atom[1], atom[2]), (atom[2], atom[1]))):
            if self.greater(r, l):
                continue
            if isinstance(l, int) and not self.limits.para_from_vars:
                continue
            for other, j, path in self.into_tree.unifiable(l):
                if not other.alive or not other.active:
                    continue
                self._superpose(g, i, dr, other, j, path)
                if not g.alive:
                    return

    def _into(self, g: _C, i: int):
        """Superposition from active equations into g's literal."""
        sg, atom = g.lits[i]
        if atom[0] == EQ:
            sides = [k for k, o in ((1, 2), (2, 1)) if not self.greater(atom[o], atom[k])]
        else:
            sides = list(range(1, len(atom)))
        for k in sides:
            for path, sub in list(_nonvar_positions(atom[k], (k,))):
                for other, j, dr in self.from_tree.unifiable(sub):
                    if not other.alive or not other.active or other is g:
                        continue
                    self._superpose(other, j, dr, g, i, path)
                    if not g.alive:
                        return

    def _superpose(self, fc: _C, i: int, dr: int, ic: _C, j: int, path):
        self._check_time()
        fatom = fc.lits[i][1]
        l, r = (fatom[1], fatom[2]) if dr == 0 else (fatom[2], fatom[1])
        off = fc.nvars
        il = _shift_lits(ic.lits, off)
        isg, iatom = il[j]
        sub = iatom
        for k in path:
            sub = sub[k]
        sigma = unify(l, sub)
        if sigma is None:
            return
        ls, rs = apply(l, sigma), apply(r, sigma)
        if ls == rs or self.greater(rs, ls):
            return
        if iatom[0] == EQ:
            side = path[0]
            s_ = apply(iatom[side], sigma)
            o_ = apply(iatom[3 - side], sigma)
            if self.greater(o_, s_):
                return
        inst_into = _inst(il, sigma)
        nsg, natom = inst_into[j]
        new = (nsg, replace_at(natom, path, rs))
        rest = _inst(list(fc.lits[:i] + fc.lits[i + 1:]), sigma)
        out = rest + inst_into[:j] + [new] + inst_into[j + 1:]
        self.add_clause("paramodulation", [fc.id, ic.id], out,
                        {"from": [i, dr], "into": (j, tuple(path)), "subst": _resolved(sigma)})

    def _factor(self, g: _C, i: int):
        sg, atom = g.lits[i]
        for j, (sj, aj) in enumerate(g.lits):
            if j == i or not sj or aj[0] != atom[0]:
                continue
            sigma = unify_atoms(atom, aj)
            if sigma is None:
                continue
            inst = _inst(g.lits, sigma)
            out = inst[:j] + inst[j + 1:]
            self.add_clause("factoring", [g.id], out, {"lits": [i, j], "subst": _resolved(sigma)})

    def _eq_factor(self, g: _C, i: int):
        atom = g.lits[i][1]
        for di, (s, t) in enumerate(((atom[1], atom[2]), (atom[2], atom[1]))):
            if self.greater(t, s):
                continue
            for j, (sj, aj) in enumerate(g.lits):
                if j == i or not sj or aj[0] != EQ:
                    continue
                for dj, (s2, t2) in enumerate(((aj[1], aj[2]), (aj[2], aj[1]))):
                    sigma = unify(s, s2)
                    if sigma is None:
                        continue
                    if self.greater(apply(t, sigma), apply(s, sigma)):
                        continue
                    inst = _inst(g.lits, sigma)
                    out = inst[:i] + [(False, (EQ, apply(t, sigma), apply(t2, sigma)))] + inst[i + 1:]
                    self.add_clause("factoring", [g.id], out,
                                    {"kind": "equality", "lits": [i, j], "dirs": [di, dj],
                                     "subst": _resolved(sigma)})

    # -- main loop ------------------------------------------------------

    def run(self) -> ProverOutcome:
        self.start = time.monotonic()
        self.deadline = self.start + self.limits.max_seconds
        status, reason = RESOURCE_OUT, ""
        try:
            for c in self.cs:
                self._check_time()
                self.add_clause("input", [], list(c.literals), {"input": c.label})
            while True:
                self._check_time()
                if self.limits.max_given is not None and self.given >= self.limits.max_given:
                    reason = "given-clause limit"
                    break
                g = self._pick()
                if g is None:
                    if self.incomplete:
                        reason = "clauses discarded by limits"
                    else:
                        status = SATURATED
                    break
                self.given += 1
                g = self._activate(g)
                if g is None:
                    continue
                self._infer(g)
        except _Refuted:
            status = REFUTATION
        except _Timeout:
            reason = "clause limit" if self.kept > self.limits.max_clauses else "time limit"
        stats = {"generated": self.generated, "kept": self.kept, "given": self.given,
                 "seconds": round(time.monotonic() - self.start, 3)}
        proof = self._extract() if status == REFUTATION else None
        return ProverOutcome(status, proof, stats, reason)

    def _extract(self) -> Proof:
        need = set()
        stack = [self.empty_id]
        while stack:
            sid = stack.pop()
            if sid in need:
                continue
            need.add(sid)
            stack.extend(self.steps[sid][1])
        steps = []
        for sid in sorted(need):
            rule, prem, lits, detail = self.steps[sid]
            if rule == "input":
                detail = {}
            steps.append(ProofStep(sid, rule, prem, Clause(lits, normalized=True), dict(detail)))
        return Proof(steps)


def saturate(cs: ClauseSet, limits: Optional[SaturationLimits] = None) -> ProverOutcome:
    """Run the given-clause loop on ``cs``."""
    return Saturator(cs, limits or SaturationLimits()).run()
