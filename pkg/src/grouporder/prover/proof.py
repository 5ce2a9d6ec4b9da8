"""Proof objects, their text form, and an independent proof checker.

Step conventions (``detail`` keys):

* ``binary-resolution``: ``lits=[i, j]``, ``subst``; premise 2 is renamed
  apart by shifting its variables past those of premise 1.  Equation atoms
  are complementary in either orientation.
* ``factoring``: ``lits=[i, j]``, ``subst``; literal j becomes a duplicate of
  literal i.  With ``kind="equality"`` and ``dirs=[di, dj]`` it is equality
  factoring: s=t (lit i), s'=t' (lit j), s·σ = s'·σ, literal i is replaced by
  t ≠ t'.
* ``paramodulation``: ``from=[i, dir]``, ``into=[j, path]``, ``subst``;
  premise 1 holds the equation, premise 2 (shifted) is rewritten at ``path``
  inside the atom of literal j.
* ``equality-resolution``: ``lit=i``, ``subst``; literal i is s ≠ t with
  s·σ = t·σ.
* ``demodulation-rewrite``: premises ``[target, d1, ...]``; ``rewrites`` is a
  list of ``[k, dir, lit, path, subst]`` applying premise k (an equation unit)
  left to right (dir 0) or right to left (dir 1) at ``path``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..kernel.terms import (
    EQ, Clause, ClauseSet, Literal, Term, is_variant, max_var, rename_literals, replace_at, shift,
    subterm_at,
)
from ..kernel.unify import apply, substitute

RULES = ("input", "binary-resolution", "factoring", "paramodulation", "demodulation-rewrite",
         "equality-resolution", "subsumption-deletion")


@dataclass
class ProofStep:
    id: int
    rule: str
    premises: Tuple[int, ...]
    conclusion: Clause
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Proof:
    steps: List[ProofStep]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def conclusion(self) -> Optional[Clause]:
        return self.steps[-1].conclusion if self.steps else None

    def dumps(self) -> str:
        return "".join(format_step(s) + "\n" for s in self.steps)

    @classmethod
    def loads(cls, text: str) -> "Proof":
        steps = []
        for ln in text.splitlines():
            ln = ln.strip()
            if ln and not ln.startswith("%"):
                steps.append(parse_step(ln))
        return cls(steps)


# ---------------------------------------------------------------------------
# serialization: ``id. rule premise-ids clause # detail-json``


def _enc_term(t: Term):
    if isinstance(t, int):
        return t
    return [t[0]] + [_enc_term(a) for a in t[1:]]


def _dec_term(v) -> Term:
    if isinstance(v, int):
        return v
    return (v[0],) + tuple(_dec_term(a) for a in v[1:])


def _enc_subst(s: Dict[int, Term]):
    return [[k, _enc_term(v)] for k, v in sorted(s.items())]


def _dec_subst(v) -> Dict[int, Term]:
    return {int(k): _dec_term(t) for k, t in v}


def _enc_detail(d: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(d)
    if "subst" in out:
        out["subst"] = _enc_subst(out["subst"])
    if "rewrites" in out:
        out["rewrites"] = [[k, dr, li, list(p), _enc_subst(s)] for k, dr, li, p, s in out["rewrites"]]
    if "into" in out:
        j, p = out["into"]
        out["into"] = [j, list(p)]
    return out


def _dec_detail(d: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(d)
    if "subst" in out:
        out["subst"] = _dec_subst(out["subst"])
    if "rewrites" in out:
        out["rewrites"] = [(k, dr, li, tuple(p), _dec_subst(s)) for k, dr, li, p, s in out["rewrites"]]
    if "into" in out:
        j, p = out["into"]
        out["into"] = (j, tuple(p))
    return out


def _enc_clause(c: Clause) -> str:
    return json.dumps([[sg, _enc_term(a)] for sg, a in c.literals], separators=(",", ":"))


def format_step(s: ProofStep) -> str:
    prem = ",".join(str(p) for p in s.premises) or "-"
    detail = json.dumps(_enc_detail(s.detail), separators=(",", ":"), sort_keys=True)
    return f"{s.id}. {s.rule} {prem} {_enc_clause(s.conclusion)} # {detail}  % {s.conclusion}"


def parse_step(line: str) -> ProofStep:
    if "  % " in line:
        line = line[: line.index("  % ")]
    head, _, detail = line.partition(" # ")
    sid, rule, prem, clause = head.split(" ", 3)
    if not sid.endswith("."):
        raise ValueError(f"bad step id in {line!r}")
    lits = [(bool(sg), _dec_term(a)) for sg, a in json.loads(clause)]
    premises = () if prem == "-" else tuple(int(p) for p in prem.split(","))
    return ProofStep(int(sid[:-1]), rule, premises, Clause(lits, normalized=True),
                     _dec_detail(json.loads(detail)) if detail else {})


# ---------------------------------------------------------------------------
# checking


@dataclass
class CheckResult:
    ok: bool
    failed_step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _nvars(lits: Sequence[Literal]) -> int:
    m = -1
    for _, atom in lits:
        for a in atom[1:]:
            v = max_var(a)
            if v > m:
                m = v
    return m + 1


def _shift_lits(lits, off):
    return [(sg, (atom[0],) + tuple(shift(a, off) for a in atom[1:])) for sg, atom in lits]


def _inst(lits, sigma):
    return [(sg, (atom[0],) + tuple(apply(a, sigma) for a in atom[1:])) for sg, atom in lits]


def _atoms_equal(a, b) -> bool:
    if a == b:
        return True
    return a[0] == EQ and b[0] == EQ and a[1] == b[2] and a[2] == b[1]


def _same_clause(lits, concl: Clause) -> bool:
    c = Clause(rename_literals(lits), normalized=True)
    return c == concl or is_variant(c, concl)


def _check_step(s: ProofStep, prem: List[Clause]) -> str:
    d = s.detail
    r = s.rule
    if r == "binary-resolution":
        c1, c2 = prem
        off = _nvars(c1.literals)
        l1, l2 = list(c1.literals), _shift_lits(c2.literals, off)
        i, j = d["lits"]
        sigma = d["subst"]
        a, b = _inst([l1[i]], sigma)[0], _inst([l2[j]], sigma)[0]
        if a[0] == b[0] or not _atoms_equal(a[1], b[1]):
            return "resolved literals are not complementary"
        rest = _inst(l1[:i] + l1[i + 1:] + l2[:j] + l2[j + 1:], sigma)
        return "" if _same_clause(rest, s.conclusion) else "conclusion mismatch"
    if r == "factoring":
        (c,) = prem
        lits = list(c.literals)
        i, j = d["lits"]
        sigma = d["subst"]
        inst = _inst(lits, sigma)
        if d.get("kind") == "equality":
            di, dj = d["dirs"]
            (si, ai), (sj, aj) = inst[i], inst[j]
            if not (si and sj and ai[0] == EQ and aj[0] == EQ):
                return "equality factoring needs two positive equations"
            s1, t1 = (ai[1], ai[2]) if di == 0 else (ai[2], ai[1])
            s2, t2 = (aj[1], aj[2]) if dj == 0 else (aj[2], aj[1])
            if s1 != s2:
                return "factored sides differ"
            out = inst[:i] + [(False, (EQ, t1, t2))] + inst[i + 1:]
            return "" if _same_clause(out, s.conclusion) else "conclusion mismatch"
        if inst[i][0] != inst[j][0] or not _atoms_equal(inst[i][1], inst[j][1]):
            return "factored literals differ"
        out = inst[:j] + inst[j + 1:]
        return "" if _same_clause(out, s.conclusion) else "conclusion mismatch"
    if r == "paramodulation":
        c1, c2 = prem
        off = _nvars(c1.literals)
        l1, l2 = list(c1.literals), _shift_lits(c2.literals, off)
        i, dr = d["from"]
        j, path = d["into"]
        sigma = d["subst"]
        sg, eqa = _inst([l1[i]], sigma)[0]
        if not sg or eqa[0] != EQ:
            return "paramodulation needs a positive equation"
        lhs, rhs = (eqa[1], eqa[2]) if dr == 0 else (eqa[2], eqa[1])
        tsg, tatom = _inst([l2[j]], sigma)[0]
        if not path or not 1 <= path[0] < len(tatom):
            return "bad position"
        try:
            sub = subterm_at(tatom, path)
        except (IndexError, TypeError):
            return "bad position"
        if sub != lhs:
            return "rewritten subterm does not match"
        new = (tsg, replace_at(tatom, path, rhs))
        rest = _inst(l1[:i] + l1[i + 1:], sigma) + _inst(l2[:j], sigma) + [new] + _inst(l2[j + 1:], sigma)
        return "" if _same_clause(rest, s.conclusion) else "conclusion mismatch"
    if r == "equality-resolution":
        (c,) = prem
        i = d["lit"]
        inst = _inst(list(c.literals), d.get("subst", {}))
        sg, atom = inst[i]
        if sg or atom[0] != EQ or atom[1] != atom[2]:
            return "literal is not a trivial disequation"
        return "" if _same_clause(inst[:i] + inst[i + 1:], s.conclusion) else "conclusion mismatch"
    if r == "demodulation-rewrite":
        lits = list(prem[0].literals)
        for k, dr, li, path, sigma in d["rewrites"]:
            if not 1 <= k < len(prem):
                return "bad demodulator reference"
            unit = prem[k]
            if len(unit.literals) != 1 or not unit.literals[0][0] or unit.literals[0][1][0] != EQ:
                return "demodulator is not a positive unit equation"
            atom = unit.literals[0][1]
            lhs, rhs = (atom[1], atom[2]) if dr == 0 else (atom[2], atom[1])
            sg, tatom = lits[li]
            try:
                sub = subterm_at(tatom, path)
            except (IndexError, TypeError):
                return "bad position"
            if not path or substitute(lhs, sigma) != sub:
                return "demodulator does not match"
            lits[li] = (sg, replace_at(tatom, path, substitute(rhs, sigma)))
        return "" if _same_clause(lits, s.conclusion) else "conclusion mismatch"
    return f"unknown rule {r!r}"


def verify_proof(proof: Proof, inputs: ClauseSet) -> CheckResult:
    """Replay every step; accept iff all steps check and the last is empty."""
    if not proof.steps:
        return CheckResult(False, None, "empty proof")
    known: Dict[int, Clause] = {}
    input_keys = {c for c in inputs}
    for s in proof.steps:
        if s.id in known:
            return CheckResult(False, s.id, "duplicate step id")
        if s.rule not in RULES:
            return CheckResult(False, s.id, f"unknown rule {s.rule!r}")
        if s.rule == "input":
            if s.premises:
                return CheckResult(False, s.id, "input step with premises")
            if s.conclusion not in input_keys and not any(is_variant(s.conclusion, c) for c in inputs):
                return CheckResult(False, s.id, "not an input clause")
            known[s.id] = s.conclusion
            continue
        if s.rule == "subsumption-deletion":
            return CheckResult(False, s.id, "bookkeeping step inside a proof")
        missing = [p for p in s.premises if p not in known]
        if missing:
            return CheckResult(False, s.id, f"premise {missing[0]} not established earlier")
        try:
            why = _check_step(s, [known[p] for p in s.premises])
        except (KeyError, ValueError, IndexError, TypeError) as exc:
            why = f"malformed step: {exc}"
        if why:
            return CheckResult(False, s.id, why)
        known[s.id] = s.conclusion
    if not proof.steps[-1].conclusion.is_empty:
        return CheckResult(False, proof.steps[-1].id, "last step is not the empty clause")
    return CheckResult(True)
