"""Named axiom systems, statement liftings and theory compilation.

Variables in the transcriptions: x=0, y=1, z=2, u=3, v=4.  Clause labels are
``<group>_<k>`` where k is the position in the full (unprimed) listing, so a
primed or barred group keeps the labels of the clauses it retains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .kernel.terms import (
    CIRCULAR_PRED, CONE_PRED, E, EQ, ORDER_PRED, Clause, ClauseSet, Term, Vocabulary,
    encode_power, inv, is_ground, mul,
)
from .modelfinder.model import FiniteModel
from .presentation import Presentation, StatementItem, StatementSet, relations_to_axioms


class TheoryError(ValueError):
    """Inconsistent theory specification (wrong groups for a question etc.)."""


x, y, z, u, v = 0, 1, 2, 3, 4


def _L(s, t):
    return (ORDER_PRED, s, t)


def _C(r, s, t):
    return (CIRCULAR_PRED, r, s, t)


def _P(*args):
    return (CONE_PRED,) + args


def _e(s, t):
    return (EQ, s, t)


def _cl(*lits):
    return list(lits)


T, F = True, False

# Full listings.  Each entry: (role, literals).
_LISTINGS: Dict[str, List[Tuple[str, list]]] = {
    "Gr": [
        ("associativity", _cl((T, _e(mul(mul(x, y), z), mul(x, mul(y, z)))))),
        ("right identity", _cl((T, _e(mul(x, E), x)))),
        ("left identity", _cl((T, _e(mul(E, x), x)))),
        ("left inverse", _cl((T, _e(mul(inv(x), x), E)))),
        ("right inverse", _cl((T, _e(mul(x, inv(x)), E)))),
    ],
    "AxL": [
        ("irreflexivity", _cl((F, _L(x, x)))),
        ("transitivity", _cl((F, _L(x, y)), (F, _L(y, z)), (T, _L(x, z)))),
        ("connectedness", _cl((T, _e(x, y)), (T, _L(x, y)), (T, _L(y, x)))),
    ],
    "OrdL": [
        ("left-invariance", _cl((F, _L(x, y)), (T, _L(mul(z, x), mul(z, y))))),
    ],
    "OrdB": [
        ("bi-invariance", _cl((F, _L(x, y)), (T, _L(mul(mul(z, x), u), mul(mul(z, y), u))))),
    ],
    "AxC": [
        ("cyclicity", _cl((F, _C(x, y, z)), (T, _C(y, z, x)))),
        ("irreflexivity", _cl((F, _C(x, y, y)))),
        ("transitivity", _cl((F, _C(x, y, z)), (F, _C(x, z, u)), (T, _C(x, y, u)))),
        ("connectedness", _cl((T, _e(x, y)), (T, _e(y, z)), (T, _e(z, x)),
                              (T, _C(x, y, z)), (T, _C(x, z, y)))),
    ],
    "OrdCL": [
        ("left-invariance", _cl((F, _C(x, y, z)), (T, _C(mul(u, x), mul(u, y), mul(u, z))))),
    ],
    "OrdCB": [
        ("bi-invariance", _cl((F, _C(x, y, z)),
                              (T, _C(mul(mul(u, x), v), mul(mul(u, y), v), mul(mul(u, z), v))))),
    ],
    "AxPL": [
        ("irreflexivity", _cl((F, _P(E)))),
        ("closure", _cl((F, _P(x)), (F, _P(y)), (T, _P(mul(x, y))))),
        ("connectedness", _cl((T, _e(x, E)), (T, _P(x)), (T, _P(inv(x))))),
    ],
    "PB": [
        ("conjugacy invariance", _cl((F, _P(x)), (T, _P(mul(mul(y, x), inv(y)))))),
    ],
    "AxPCL": [
        ("cyclicity", _cl((F, _P(x, y)), (T, _P(mul(inv(x), y), inv(x))))),
        ("irreflexivity", _cl((F, _P(x, x)))),
        ("transitivity", _cl((F, _P(x, y)), (F, _P(y, z)), (T, _P(x, z)))),
        ("connectedness", _cl((T, _e(E, x)), (T, _e(E, y)), (T, _e(x, y)),
                              (T, _P(x, y)), (T, _P(y, x)))),
    ],
    "PCB": [
        ("conjugacy invariance", _cl((F, _P(x, y)),
                                     (T, _P(mul(mul(z, x), inv(z)), mul(mul(z, y), inv(z)))))),
    ],
    "CC": [
        ("closure", _cl((F, _P(x)), (F, _P(y)), (T, _P(mul(x, y))))),
        ("connectedness", _cl((T, _P(x)), (T, _P(inv(x))))),
    ],
}

# derived groups: name -> (base listing, dropped roles)
_DERIVED = {
    "AxL'": ("AxL", {"connectedness"}),
    "AxC'": ("AxC", {"connectedness"}),
    "AxPL'": ("AxPL", {"connectedness"}),
    "AxPCL'": ("AxPCL", {"connectedness"}),
    "AxPCLbar": ("AxPCL", {"cyclicity"}),
    "AxPCLbar'": ("AxPCL", {"cyclicity", "connectedness"}),
}

GROUP_NAMES = ("Gr", "Ax_R", "AxL", "AxL'", "OrdL", "OrdB", "AxC", "AxC'", "OrdCL", "OrdCB",
               "AxPL", "AxPL'", "PB", "AxPCL", "AxPCL'", "AxPCLbar", "AxPCLbar'", "PCB", "CC",
               "Isolated")

_ALIASES = {"AxL′": "AxL'", "AxC′": "AxC'", "AxPL′": "AxPL'", "AxPCL′": "AxPCL'",
            "AxPCL̄": "AxPCLbar", "AxPCL̄′": "AxPCLbar'", "AxPCL̄'": "AxPCLbar'",
            "AxPCLbar′": "AxPCLbar'", "AxR": "Ax_R"}

# predicate (name, arity) each group uses
_PRED_USE = {
    "AxL": (ORDER_PRED, 2), "OrdL": (ORDER_PRED, 2), "OrdB": (ORDER_PRED, 2),
    "AxC": (CIRCULAR_PRED, 3), "OrdCL": (CIRCULAR_PRED, 3), "OrdCB": (CIRCULAR_PRED, 3),
    "AxPL": (CONE_PRED, 1), "PB": (CONE_PRED, 1), "CC": (CONE_PRED, 1), "Isolated": (CONE_PRED, 1),
    "AxPCL": (CONE_PRED, 2), "PCB": (CONE_PRED, 2),
}


def canonical_group_name(name: str) -> str:
    name = _ALIASES.get(name.strip(), name.strip())
    if name not in GROUP_NAMES:
        raise TheoryError(f"unknown axiom group {name!r}")
    return name


def _base(name: str) -> str:
    return _DERIVED.get(name, (name, None))[0]


def group_predicate(name: str) -> Optional[Tuple[str, int]]:
    return _PRED_USE.get(_base(name))


@dataclass(frozen=True)
class AxiomGroup:
    name: str
    presentation: Optional[Presentation] = None
    M: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_group_name(self.name))
        object.__setattr__(self, "M", tuple(sorted(set(self.M))))
        if self.name == "Ax_R" and self.presentation is None:
            raise TheoryError("Ax_R needs a presentation")
        if self.name == "Isolated":
            if not self.M:
                raise TheoryError("Isolated(M) needs a non-empty set M")
            if any(not isinstance(m, int) or m < 1 for m in self.M):
                raise TheoryError("Isolated(M) needs positive integers")

    def __str__(self):
        if self.name == "Isolated":
            return "Isolated({%s})" % ",".join(map(str, self.M))
        return self.name


def group_clauses(g: AxiomGroup) -> List[Clause]:
    """Clause list for one axiom group (labels ``<slug>_<k>``)."""
    if g.name == "Ax_R":
        return list(relations_to_axioms(g.presentation))
    if g.name == "Isolated":
        return [Clause([(F, _P(encode_power(x, m))), (T, _P(x))], f"isolated_{m}") for m in g.M]
    base, dropped = _DERIVED.get(g.name, (g.name, set()))
    slug = base.lower()
    out = []
    for k, (role, lits) in enumerate(_LISTINGS[base], 1):
        if role in dropped:
            continue
        out.append(Clause(lits, f"{slug}_{k}"))
    return out


def group_roles(name: str) -> List[str]:
    """Axiom roles (irreflexivity, closure, ...) retained by a named group."""
    name = canonical_group_name(name)
    base, dropped = _DERIVED.get(name, (name, set()))
    if base not in _LISTINGS:
        return []
    return [role for role, _ in _LISTINGS[base] if role not in dropped]


def _vocab_for(groups: Iterable[AxiomGroup], generators: Sequence[str] = (),
               ordering: str = "default") -> Vocabulary:
    preds: Dict[str, int] = {}
    for g in groups:
        pu = group_predicate(g.name)
        if pu is None:
            continue
        name, ar = pu
        if preds.get(name, ar) != ar:
            raise TheoryError(f"predicate {name} used with arities {preds[name]} and {ar}")
        preds[name] = ar
    return Vocabulary.standard(generators, preds, ordering)


def build_axiom_group(g: AxiomGroup, vocab: Optional[Vocabulary] = None) -> ClauseSet:
    if vocab is None:
        gens = g.presentation.generators if g.presentation is not None else ()
        vocab = _vocab_for([g], gens)
    else:
        pu = group_predicate(g.name)
        if pu is not None and pu[0] not in vocab:
            vocab = vocab.merged(Vocabulary.standard((), {pu[0]: pu[1]}))
    return ClauseSet(group_clauses(g), vocab)


# ---------------------------------------------------------------------------
# statements

LIFT_TARGETS = ("inequalities", "order", "circular", "cone-unary", "cone-binary")


def lift_statements(s: StatementSet, target: str) -> List[Clause]:
    """Statement set as clauses in the requested form (labels ``stmt_<k>``)."""
    if target not in LIFT_TARGETS:
        raise TheoryError(f"unknown lift target {target!r}")
    if sum(1 for it in s.items if it.strict) > 1:
        raise TheoryError("at most one statement may be strengthened")
    need = {"order": 2, "cone-unary": 2, "circular": 3, "cone-binary": 3}.get(target)
    out: List[Clause] = []
    for k, it in enumerate(s.items, 1):
        ts = it.terms
        if need is not None and len(ts) != need:
            raise TheoryError(f"{target} statements need {need}-tuples, got {len(ts)}")
        if target == "inequalities":
            if len(ts) == 2:
                lits_list = [[(F, _e(ts[0], ts[1]))]]
            else:
                r, s1, t = ts
                lits_list = [[(F, _e(r, s1))], [(F, _e(s1, t))], [(F, _e(t, r))]]
        elif target == "order":
            a, b = ts
            lits_list = [[(T, _L(a, b))] if it.strict else [(T, _L(a, b)), (T, _L(b, a))]]
        elif target == "circular":
            r, s1, t = ts
            first = (T, _C(r, s1, t))
            lits_list = [[first] if it.strict else [first, (T, _C(r, t, s1))]]
        elif target == "cone-unary":
            a, b = ts
            first = (T, _P(mul(inv(a), b)))
            lits_list = [[first] if it.strict else [first, (T, _P(mul(inv(b), a)))]]
        else:
            r, s1, t = ts
            first = (T, _P(mul(inv(r), s1), mul(inv(r), t)))
            lits_list = [[first] if it.strict else [first, (T, _P(mul(inv(r), t), mul(inv(r), s1)))]]
        for j, lits in enumerate(lits_list):
            label = f"stmt_{k}" if len(lits_list) == 1 else f"stmt_{k}{'abc'[j]}"
            out.append(Clause(lits, label))
    return out


# ---------------------------------------------------------------------------
# questions and theory specs

QUESTION_KINDS = ("LO", "BO", "CO", "CBO", "Torsion", "GenTorsion", "MonoidMembership",
                  "ClosureMembership", "FixedPoint", "Model")


@dataclass(frozen=True)
class Question:
    """``terms`` holds t for (Gen)Torsion, (t1, t2) for MonoidMembership, the
    single target for ClosureMembership and the cofinal list for FixedPoint;
    ``generating_set`` is the closure generating set."""

    kind: str
    terms: Tuple[Term, ...] = ()
    generating_set: Tuple[Term, ...] = ()
    M: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in QUESTION_KINDS:
            raise TheoryError(f"unknown question {self.kind!r}")
        if not all(is_ground(t) for t in self.terms + self.generating_set):
            raise TheoryError("question terms must be ground")
        need = {"Torsion": 1, "GenTorsion": 1, "MonoidMembership": 2, "ClosureMembership": 1}
        if self.kind in need and len(self.terms) != need[self.kind]:
            raise TheoryError(f"{self.kind} takes {need[self.kind]} term(s)")
        if self.kind == "ClosureMembership" and not self.generating_set:
            raise TheoryError("ClosureMembership needs a generating set")
        if self.kind == "FixedPoint" and not self.terms:
            raise TheoryError("FixedPoint needs a non-empty cofinal list")


@dataclass(frozen=True)
class Shape:
    """One admissible (question, groups, statement form) combination."""

    question: str
    groups: frozenset
    statement_kind: Optional[str]  # lift target, or None when the question fixes the extra axioms
    conclusion: str
    citation: str
    via: str = ""


def _fs(*names):
    return frozenset(names)


SHAPES: Tuple[Shape, ...] = (
    Shape("LO", _fs("AxL", "OrdL"), "inequalities", "NotLeftOrderable", "Prop 2.1(a)"),
    Shape("BO", _fs("AxL", "OrdB"), "inequalities", "NotBiOrderable", "Prop 2.1(b)"),
    Shape("CO", _fs("AxC", "OrdCL"), "inequalities", "NotCircularlyOrderable", "Prop 2.1(c)"),
    Shape("CBO", _fs("AxC", "OrdCB"), "inequalities", "NoBiInvariantCircularOrder", "Prop 2.1(d)"),
    Shape("LO", _fs("AxL'", "OrdL"), "order", "NotLeftOrderable", "Prop 3.2(a)"),
    Shape("BO", _fs("AxL'", "OrdB"), "order", "NotBiOrderable", "Prop 3.2(b)"),
    Shape("CO", _fs("AxC'", "OrdCL"), "circular", "NotCircularlyOrderable", "Prop 3.3(a)"),
    Shape("CBO", _fs("AxC'", "OrdCB"), "circular", "NoBiInvariantCircularOrder", "Prop 3.3(b)"),
    Shape("LO", _fs("AxPL"), "inequalities", "NotLeftOrderable", "Prop 3.5(a)", "Prop 2.1(a)"),
    Shape("BO", _fs("AxPL", "PB"), "inequalities", "NotBiOrderable", "Prop 3.5(b)", "Prop 2.1(b)"),
    Shape("LO", _fs("AxPL'"), "cone-unary", "NotLeftOrderable", "Prop 3.5(c)", "Prop 3.2(a)"),
    Shape("BO", _fs("AxPL'", "PB"), "cone-unary", "NotBiOrderable", "Prop 3.5(d)", "Prop 3.2(b)"),
    Shape("CO", _fs("AxPCL"), "inequalities", "NotCircularlyOrderable", "Prop 3.6(a)", "Prop 2.1(c)"),
    Shape("CBO", _fs("AxPCL", "PCB"), "inequalities", "NoBiInvariantCircularOrder", "Prop 3.6(b)",
          "Prop 2.1(d)"),
    Shape("CO", _fs("AxPCL'"), "cone-binary", "NotCircularlyOrderable", "Prop 3.6(c)", "Prop 3.3(a)"),
    Shape("CBO", _fs("AxPCL'", "PCB"), "cone-binary", "NoBiInvariantCircularOrder", "Prop 3.6(d)",
          "Prop 3.3(b)"),
    Shape("Torsion", _fs("AxPL'"), None, "IsTorsion", "Prop 4.1"),
    Shape("GenTorsion", _fs("AxPL'", "PB"), None, "IsGeneralisedTorsion", "Prop 4.3"),
    Shape("MonoidMembership", _fs("AxPCLbar'", "PCB"), None, "MonoidMembership", "Prop 4.4"),
    Shape("ClosureMembership", _fs("CC"), None, "InClosure", "Prop 6.5"),
    Shape("FixedPoint", _fs("AxPL'", "PB"), None, "NoNontrivialLeftOrderableQuotient", "Prop 6.10"),
    Shape("Model", _fs(), "inequalities", "ConsistentAtSize", "finite model"),
)

# strengthening one statement is licensed for these weakened shapes
_SYMMETRY_OK = {"order", "circular", "cone-unary", "cone-binary"}


def find_shape(question: str, group_names: Iterable[str], statement_kind: Optional[str]) -> Shape:
    names = frozenset(canonical_group_name(n) for n in group_names) - {"Gr", "Ax_R", "Isolated"}
    for sh in SHAPES:
        if sh.question == question and sh.groups == names:
            if sh.statement_kind is None or sh.statement_kind == statement_kind:
                return sh
    raise TheoryError(f"no proposition covers question {question} with groups "
                      f"{sorted(names)} and statements in {statement_kind} form")


@dataclass
class TheorySpec:
    presentation: Presentation
    groups: List[AxiomGroup]
    statements: StatementSet = field(default_factory=StatementSet)
    question: Question = field(default_factory=lambda: Question("Model"))
    lift: Optional[str] = None
    extra: List[Clause] = field(default_factory=list)
    ordering: str = "default"

    def statement_target(self) -> Optional[str]:
        if self.lift is not None:
            return self.lift
        if not self.statements.items:
            return None
        kind = self.statements.kind
        if kind == "cone":
            return "cone-unary" if self.statements.arity == 2 else "cone-binary"
        return kind

    def shape(self) -> Shape:
        names = [g.name for g in self.groups]
        target = self.statement_target()
        sh = None
        if target is None:
            for cand in ("inequalities", "order", "circular", "cone-unary", "cone-binary", None):
                try:
                    sh = find_shape(self.question.kind, names, cand)
                    break
                except TheoryError:
                    continue
            if sh is None:
                sh = find_shape(self.question.kind, names, None)
        else:
            sh = find_shape(self.question.kind, names, target)
        return sh

    def validate(self) -> Shape:
        sh = self.shape()
        target = self.statement_target()
        q = self.question
        if any(g.name == "Isolated" for g in self.groups) and q.kind != "FixedPoint":
            raise TheoryError("Isolated(M) only belongs to the fixed-point question")
        if q.kind == "FixedPoint":
            if self.statements.items:
                raise TheoryError("FixedPoint derives its statements from the cofinal list")
            iso = [g for g in self.groups if g.name == "Isolated"]
            if tuple(q.M) and (not iso or iso[0].M != tuple(sorted(set(q.M)))):
                raise TheoryError("Isolated(M) group must match the question's M")
        elif sh.statement_kind is None and self.statements.items:
            raise TheoryError(f"{q.kind} takes no statement set")
        if any(it.strict for it in self.statements.items) and target not in _SYMMETRY_OK:
            raise TheoryError("strengthening by symmetry applies only to lifted statements")
        if self.extra and q.kind != "FixedPoint":
            raise TheoryError("case-split clauses are only supported for FixedPoint questions")
        gens = set(self.presentation.generators)
        for t in self._all_terms():
            _check_gens(t, gens)
        return sh

    def _all_terms(self):
        for it in self.statements.items:
            yield from it.terms
        yield from self.question.terms
        yield from self.question.generating_set

    def strengthened(self) -> bool:
        return any(it.strict for it in self.statements.items)


def _check_gens(t: Term, gens: set):
    if isinstance(t, int):
        return
    if len(t) == 1 and t[0] != "e" and t[0] not in gens:
        raise TheoryError(f"unknown generator {t[0]!r} in statement")
    for a in t[1:]:
        _check_gens(a, gens)


def question_clauses(q: Question) -> List[Clause]:
    """Extra axioms fixed by the question itself."""
    if q.kind in ("Torsion", "GenTorsion"):
        return [Clause([(T, _P(q.terms[0]))], "q_1")]
    if q.kind == "MonoidMembership":
        t1, t2 = q.terms
        return [Clause([(T, _P(mul(mul(t2, t1), inv(t2)), t1))], "q_1")]
    if q.kind == "ClosureMembership":
        out = []
        for k, g in enumerate(q.generating_set, 1):
            out.append(Clause([(T, _P(g))], f"q_{k}a"))
            out.append(Clause([(T, _P(inv(g)))], f"q_{k}b"))
        out.append(Clause([(F, _P(q.terms[0]))], "q_target"))
        return out
    if q.kind == "FixedPoint":
        return lift_statements(fixed_point_statements(q), "cone-unary")
    return []


def fixed_point_statements(q: Question) -> StatementSet:
    return StatementSet.of([(E, t) for t in q.terms], strict_index=0, kind="cone")


def _vocab_from_clauses(clauses: Sequence[Clause], generators: Sequence[str],
                       ordering: str = "default") -> Vocabulary:
    preds: Dict[str, int] = {}
    for c in clauses:
        for _, atom in c.literals:
            if atom[0] == EQ:
                continue
            ar = len(atom) - 1
            if preds.setdefault(atom[0], ar) != ar:
                raise TheoryError(f"predicate {atom[0]} used with arities {preds[atom[0]]} and {ar}")
    return Vocabulary.standard(generators, dict(sorted(preds.items())), ordering)


def _assemble(presentation: Presentation, parts: List[Clause], ordering: str) -> ClauseSet:
    clauses = group_clauses(AxiomGroup("Gr")) + list(relations_to_axioms(presentation)) + parts
    cs = ClauseSet(vocabulary=_vocab_from_clauses(clauses, presentation.generators, ordering))
    return cs.extend(clauses)


def compile_theory(spec: TheorySpec) -> ClauseSet:
    """Gr, Ax_R, the axiom groups, then statements/question axioms."""
    spec.validate()
    parts: List[Clause] = []
    for g in spec.groups:
        if g.name not in ("Gr", "Ax_R"):
            parts.extend(group_clauses(g))
    if spec.statements.items:
        parts.extend(lift_statements(spec.statements, spec.statement_target()))
    parts.extend(question_clauses(spec.question))
    for k, c in enumerate(spec.extra, 1):
        parts.append(c if c.label else c.relabel(f"case_{k}"))
    return _assemble(spec.presentation, parts, spec.ordering)


compile = compile_theory  # noqa: A001


def standard_theory(presentation: Presentation, group_names: Sequence[str],
                    statements: Optional[StatementSet] = None, lift: Optional[str] = None,
                    extra: Sequence[Clause] = (), ordering: str = "default") -> ClauseSet:
    """Gr ∪ Ax_R ∪ groups ∪ lifted statements ∪ extra, without question validation."""
    parts: List[Clause] = []
    for n in group_names:
        g = AxiomGroup(n, presentation=presentation if canonical_group_name(n) == "Ax_R" else None)
        if g.name not in ("Gr", "Ax_R"):
            parts.extend(group_clauses(g))
    if statements is not None and statements.items:
        target = lift or statements.kind
        if target == "cone":
            target = "cone-unary" if statements.arity == 2 else "cone-binary"
        parts.extend(lift_statements(statements, target))
    parts.extend(extra)
    return _assemble(presentation, parts, ordering)


# ---------------------------------------------------------------------------
# model translations


def _pred(m: FiniteModel, name: str) -> np.ndarray:
    if name not in m.predicates:
        raise ValueError(f"model has no predicate {name}")
    return m.predicates[name]


def order_to_cone(m: FiniteModel) -> FiniteModel:
    """P(x) iff e < x."""
    L = _pred(m, ORDER_PRED)
    return m.with_predicates({CONE_PRED: L[m.identity, :].copy()})


def cone_to_order(m: FiniteModel) -> FiniteModel:
    """x < y iff P(x'·y)."""
    P = _pred(m, CONE_PRED)
    if P.ndim != 1:
        raise ValueError("unary cone expected")
    idx = m.product[m.inverse[:, None], np.arange(m.size)[None, :]]
    return m.with_predicates({ORDER_PRED: P[idx]})


def cone_translate_order(m: FiniteModel, inverse: bool = False) -> FiniteModel:
    return cone_to_order(m) if inverse else order_to_cone(m)


def circular_to_cone(m: FiniteModel) -> FiniteModel:
    """P(x,y) iff C(e,x,y)."""
    C = _pred(m, CIRCULAR_PRED)
    return m.with_predicates({CONE_PRED: C[m.identity, :, :].copy()})


def cone_to_circular(m: FiniteModel) -> FiniteModel:
    """C(x,y,z) iff P(x'·y, x'·z)."""
    P = _pred(m, CONE_PRED)
    if P.ndim != 2:
        raise ValueError("binary cone expected")
    n = m.size
    xy = m.product[m.inverse[:, None], np.arange(n)[None, :]]  # xy[x, y] = x'·y
    return m.with_predicates({CIRCULAR_PRED: P[xy[:, :, None], xy[:, None, :]]})


def cone_translate_circular(m: FiniteModel, inverse: bool = False) -> FiniteModel:
    return cone_to_circular(m) if inverse else circular_to_cone(m)


def reverse_order(m: FiniteModel) -> FiniteModel:
    """x <_op y iff y < x; C_op(x,y,z) iff C(x,z,y)."""
    preds = dict(m.predicates)
    if ORDER_PRED in preds:
        preds[ORDER_PRED] = preds[ORDER_PRED].T.copy()
    if CIRCULAR_PRED in preds:
        preds[CIRCULAR_PRED] = np.transpose(preds[CIRCULAR_PRED], (0, 2, 1)).copy()
    if ORDER_PRED not in preds and CIRCULAR_PRED not in preds:
        raise ValueError("model interprets neither L nor C")
    return m.with_predicates(preds)
