"""Terms, literals and clauses over the group vocabulary.

Terms are plain Python values so that they hash and compare structurally:

* a variable is a non-negative ``int`` (its index),
* an application is a ``tuple`` ``(symbol_name, arg1, ..., argN)``; a constant
  is the 1-tuple ``(name,)``.

An atom is either an equation ``("=", s, t)`` or a predicate application
``(pred, t1, ..., tk)``.  A literal is the pair ``(positive, atom)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Term = Union[int, tuple]
Atom = tuple
Literal = Tuple[bool, Atom]

PRODUCT = "*"
INVERSE = "'"
IDENTITY = "e"
EQ = "="

ORDER_PRED = "L"
CIRCULAR_PRED = "C"
CONE_PRED = "P"

RESERVED = frozenset({PRODUCT, INVERSE, IDENTITY, EQ, ORDER_PRED, CIRCULAR_PRED, CONE_PRED})


class VocabularyError(ValueError):
    """A symbol is unknown, duplicated, or used with the wrong arity."""


# ---------------------------------------------------------------------------
# symbols and vocabularies


SYMBOL_KINDS = ("product", "inverse", "identity", "generator", "predicate")


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    arity: int
    precedence: int
    weight: int = 1

    def __post_init__(self):
        if self.kind not in SYMBOL_KINDS:
            raise VocabularyError(f"unknown symbol kind {self.kind!r}")
        if self.weight < 0:
            raise VocabularyError(f"negative weight for {self.name!r}")
        if self.arity == 0 and self.weight < 1:
            raise VocabularyError(f"constant {self.name!r} needs weight >= 1")


@dataclass
class Vocabulary:
    """Symbol table with KBO weights and a total precedence.

    The default precedence is ``e < ' < * < generators`` (declaration order),
    all weights 1.  ``ordering="group"`` gives the inverse symbol weight 0 and
    the top precedence, which is the classical completion-friendly setting for
    group theory.
    """

    symbols: Dict[str, Symbol] = field(default_factory=dict)
    variable_weight: int = 1

    @classmethod
    def standard(cls, generators: Sequence[str] = (), predicates: Dict[str, int] | None = None,
                 ordering: str = "default") -> "Vocabulary":
        vocab = cls()
        vocab.add(Symbol(IDENTITY, "identity", 0, 0))
        vocab.add(Symbol(INVERSE, "inverse", 1, 1))
        vocab.add(Symbol(PRODUCT, "product", 2, 2))
        for g in generators:
            vocab.add_generator(g)
        for name, arity in (predicates or {}).items():
            vocab.add_predicate(name, arity)
        if ordering != "default":
            vocab = vocab.with_ordering(ordering)
        return vocab

    def add(self, sym: Symbol) -> None:
        if sym.name in self.symbols:
            raise VocabularyError(f"duplicate symbol {sym.name!r}")
        self.symbols[sym.name] = sym

    def _next_precedence(self) -> int:
        return 1 + max((s.precedence for s in self.symbols.values()), default=-1)

    def add_generator(self, name: str) -> Symbol:
        if name in self.symbols:
            sym = self.symbols[name]
            if sym.kind != "generator":
                raise VocabularyError(f"{name!r} is reserved")
            return sym
        if name in RESERVED:
            raise VocabularyError(f"{name!r} is reserved")
        sym = Symbol(name, "generator", 0, self._next_precedence())
        self.add(sym)
        return sym

    def add_predicate(self, name: str, arity: int) -> Symbol:
        if name in self.symbols:
            sym = self.symbols[name]
            if sym.kind != "predicate" or sym.arity != arity:
                raise VocabularyError(f"predicate {name!r} redeclared with arity {arity}")
            return sym
        if not 1 <= arity <= 3:
            raise VocabularyError("predicates have arity 1, 2 or 3")
        sym = Symbol(name, "predicate", arity, self._next_precedence())
        self.add(sym)
        return sym

    def with_ordering(self, ordering: str, weights: Dict[str, int] | None = None,
                      precedence: Sequence[str] | None = None) -> "Vocabulary":
        """Copy of this vocabulary with different KBO parameters."""
        syms = dict(self.symbols)
        if ordering == "group":
            top = max(s.precedence for s in syms.values()) + 1
            inv = syms[INVERSE]
            syms[INVERSE] = Symbol(inv.name, inv.kind, 1, top, 0)
        elif ordering != "default":
            raise VocabularyError(f"unknown ordering {ordering!r}")
        if precedence is not None:
            ranks = {name: i for i, name in enumerate(precedence)}
            base = len(ranks)
            rest = sorted((s for s in syms.values() if s.name not in ranks), key=lambda s: s.precedence)
            for s in rest:
                ranks[s.name] = base
                base += 1
            syms = {n: Symbol(s.name, s.kind, s.arity, ranks[n], s.weight) for n, s in syms.items()}
        for name, w in (weights or {}).items():
            s = syms[name]
            syms[name] = Symbol(s.name, s.kind, s.arity, s.precedence, w)
        vocab = Vocabulary(syms, self.variable_weight)
        vocab.validate()
        return vocab

    def validate(self) -> None:
        precs = [s.precedence for s in self.symbols.values()]
        if len(set(precs)) != len(precs):
            raise VocabularyError("precedence is not total")
        for s in self.symbols.values():
            if s.arity == 0 and s.weight < self.variable_weight:
                raise VocabularyError(f"constant {s.name!r} lighter than a variable")
            if s.kind != "predicate" and s.arity == 1 and s.weight == 0:
                top = max(t.precedence for t in self.symbols.values() if t.kind != "predicate")
                if s.precedence != top:
                    raise VocabularyError("a weight-0 unary symbol must have maximal precedence")

    def merged(self, other: "Vocabulary") -> "Vocabulary":
        vocab = Vocabulary(dict(self.symbols), self.variable_weight)
        for s in sorted(other.symbols.values(), key=lambda s: s.precedence):
            if s.name in vocab.symbols:
                if vocab.symbols[s.name].arity != s.arity:
                    raise VocabularyError(f"arity clash for {s.name!r}")
            elif s.kind == "generator":
                vocab.add_generator(s.name)
            elif s.kind == "predicate":
                vocab.add_predicate(s.name, s.arity)
            else:
                vocab.add(s)
        return vocab

    def __contains__(self, name: str) -> bool:
        return name in self.symbols

    def __getitem__(self, name: str) -> Symbol:
        try:
            return self.symbols[name]
        except KeyError:
            raise VocabularyError(f"unknown symbol {name!r}") from None

    @property
    def generators(self) -> List[str]:
        gens = [s for s in self.symbols.values() if s.kind == "generator"]
        return [s.name for s in sorted(gens, key=lambda s: s.precedence)]

    @property
    def predicates(self) -> Dict[str, int]:
        return {s.name: s.arity for s in self.symbols.values() if s.kind == "predicate"}

    def check_term(self, t: Term) -> None:
        if isinstance(t, int):
            if t < 0:
                raise VocabularyError(f"negative variable index {t}")
            return
        sym = self[t[0]]
        if sym.kind == "predicate":
            raise VocabularyError(f"predicate {sym.name!r} used as a function")
        if len(t) - 1 != sym.arity:
            raise VocabularyError(f"{sym.name!r} expects {sym.arity} arguments, got {len(t) - 1}")
        for a in t[1:]:
            self.check_term(a)

    def check_atom(self, atom: Atom) -> None:
        if atom[0] == EQ:
            if len(atom) != 3:
                raise VocabularyError("malformed equation")
        else:
            sym = self[atom[0]]
            if sym.kind != "predicate" or sym.arity != len(atom) - 1:
                raise VocabularyError(f"bad predicate application {atom[0]!r}")
        for a in atom[1:]:
            self.check_term(a)


# ---------------------------------------------------------------------------
# term helpers


def const(name: str) -> tuple:
    return (name,)


E = (IDENTITY,)


def mul(s: Term, t: Term) -> tuple:
    return (PRODUCT, s, t)


def inv(s: Term) -> tuple:
    return (INVERSE, s)


def eq(s: Term, t: Term) -> Atom:
    return (EQ, s, t)


def pos(atom: Atom) -> Literal:
    return (True, atom)


def neg(atom: Atom) -> Literal:
    return (False, atom)


def is_var(t: Term) -> bool:
    return isinstance(t, int)


def is_ground(t: Term) -> bool:
    if isinstance(t, int):
        return False
    return all(is_ground(a) for a in t[1:])


def term_size(t: Term) -> int:
    if isinstance(t, int):
        return 1
    n = 1
    for a in t[1:]:
        n += term_size(a)
    return n


def variables(t: Term, acc: Optional[List[int]] = None) -> List[int]:
    """Variables of ``t`` in left-to-right first-occurrence order."""
    if acc is None:
        acc = []
    if isinstance(t, int):
        if t not in acc:
            acc.append(t)
    else:
        for a in t[1:]:
            variables(a, acc)
    return acc


def max_var(t: Term) -> int:
    if isinstance(t, int):
        return t
    m = -1
    for a in t[1:]:
        v = max_var(a)
        if v > m:
            m = v
    return m


def subterm_positions(t: Term, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """All (position, subterm) pairs, preorder; positions index tuple slots."""
    yield path, t
    if not isinstance(t, int):
        for i in range(1, len(t)):
            yield from subterm_positions(t[i], path + (i,))


def subterm_at(t: Term, path: Sequence[int]) -> Term:
    for i in path:
        t = t[i]
    return t


def replace_at(t: Term, path: Sequence[int], new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    return t[:i] + (replace_at(t[i], path[1:], new),) + t[i + 1:]


def rename(t: Term, mapping: Dict[int, int]) -> Term:
    if isinstance(t, int):
        return mapping[t]
    return (t[0],) + tuple(rename(a, mapping) for a in t[1:])


def shift(t: Term, offset: int) -> Term:
    if isinstance(t, int):
        return t + offset
    return (t[0],) + tuple(shift(a, offset) for a in t[1:])


def term_str(t: Term) -> str:
    """Human-readable infix rendering (variables print as x0, x1, ...)."""
    if isinstance(t, int):
        return f"x{t}"
    f = t[0]
    if f == PRODUCT:
        return f"({term_str(t[1])}·{term_str(t[2])})"
    if f == INVERSE:
        return f"{term_str(t[1])}′"
    if len(t) == 1:
        return f
    return f"{f}({', '.join(term_str(a) for a in t[1:])})"


def atom_str(atom: Atom) -> str:
    if atom[0] == EQ:
        return f"{term_str(atom[1])} = {term_str(atom[2])}"
    return f"{atom[0]}({', '.join(term_str(a) for a in atom[1:])})"


def literal_str(lit: Literal) -> str:
    sign, atom = lit
    if atom[0] == EQ and not sign:
        return f"{term_str(atom[1])} ≠ {term_str(atom[2])}"
    return atom_str(atom) if sign else "¬" + atom_str(atom)


def encode_power(t: Term, m: int) -> Term:
    """Left-nested power: t^1 = t, t^m = t^(m-1) · t."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"power exponent must be a positive integer, got {m!r}")
    acc = t
    for _ in range(m - 1):
        acc = (PRODUCT, acc, t)
    return acc


# ---------------------------------------------------------------------------
# clauses


def _blind(t) -> str:
    """Variable-blind sort key."""
    if isinstance(t, int):
        return "?"
    if len(t) == 1:
        return t[0]
    return t[0] + "(" + ",".join(_blind(a) for a in t[1:]) + ")"


def _lit_key(lit: Literal) -> tuple:
    sign, atom = lit
    return (atom[0] != EQ, not sign, _blind(atom))


def normalize_literals(lits: Iterable[Literal]) -> Tuple[Literal, ...]:
    """Canonical literal tuple: oriented equations, sorted literals, merged
    duplicates, variables renumbered 0..k in order of first occurrence."""
    oriented = []
    for sign, atom in lits:
        if atom[0] == EQ:
            s, t = atom[1], atom[2]
            if _blind(t) > _blind(s):
                atom = (EQ, t, s)
        oriented.append((sign, atom))
    oriented.sort(key=_lit_key)
    order: List[int] = []
    for _, atom in oriented:
        for a in atom[1:]:
            variables(a, order)
    mapping = {v: i for i, v in enumerate(order)}
    out: List[Literal] = []
    seen = set()
    for sign, atom in oriented:
        lit = (sign, (atom[0],) + tuple(rename(a, mapping) for a in atom[1:]))
        if lit in seen:
            continue
        seen.add(lit)
        out.append(lit)
    return tuple(out)


def rename_literals(lits: Iterable[Literal]) -> Tuple[Literal, ...]:
    """Keep literal order and orientation; renumber variables by first
    occurrence and drop repeated literals."""
    lits = list(lits)
    order: List[int] = []
    for _, atom in lits:
        for a in atom[1:]:
            variables(a, order)
    mapping = {v: i for i, v in enumerate(order)}
    out: List[Literal] = []
    seen = set()
    for sign, atom in lits:
        lit = (sign, (atom[0],) + tuple(rename(a, mapping) for a in atom[1:]))
        if lit in seen:
            continue
        seen.add(lit)
        out.append(lit)
    return tuple(out)


class Clause:
    """Universally closed disjunction of literals.

    ``literals`` keep the order and equation orientation they were written
    in, with variables renumbered 0..k by first occurrence.  Equality and
    hashing use ``key``, the canonical form from :func:`normalize_literals`.
    ``label`` records provenance and is ignored for equality.
    """

    __slots__ = ("literals", "label", "key", "_hash")

    def __init__(self, literals: Iterable[Literal] = (), label: str = "", normalized: bool = False):
        lits = tuple(literals)
        self.literals = lits if normalized else rename_literals(lits)
        self.key = normalize_literals(self.literals)
        self.label = label
        self._hash = hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Clause) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __repr__(self):
        return f"Clause({self})"

    def __str__(self):
        if not self.literals:
            return "⊥"
        return " ∨ ".join(literal_str(l) for l in self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_ground(self) -> bool:
        return all(is_ground(a) for _, atom in self.literals for a in atom[1:])

    @property
    def is_unit(self) -> bool:
        return len(self.literals) == 1

    def num_vars(self) -> int:
        return 1 + max((max_var(a) for _, atom in self.literals for a in atom[1:]), default=-1)

    def weight(self) -> int:
        return sum(term_size(a) for _, atom in self.literals for a in atom[1:]) + len(self.literals)

    def symbols(self) -> set:
        out = set()

        def walk(t):
            if not isinstance(t, int):
                out.add((t[0], len(t) - 1))
                for a in t[1:]:
                    walk(a)

        for _, atom in self.literals:
            if atom[0] != EQ:
                out.add((atom[0], len(atom) - 1))
            for a in atom[1:]:
                walk(a)
        return out

    def relabel(self, label: str) -> "Clause":
        return Clause(self.literals, label, normalized=True)


def normalize(c: Clause) -> Clause:
    """Clause whose written form is the canonical one."""
    return Clause(c.key, c.label, normalized=True)


class ClauseSet:
    """Ordered, duplicate-free list of clauses plus their vocabulary."""

    def __init__(self, clauses: Iterable[Clause] = (), vocabulary: Optional[Vocabulary] = None):
        self.vocabulary = vocabulary if vocabulary is not None else Vocabulary.standard()
        self.clauses: List[Clause] = []
        self._seen: set = set()
        for c in clauses:
            self.add(c)

    def add(self, c: Clause) -> bool:
        """Append ``c`` unless a variant is already present; returns whether added."""
        for _, atom in c.literals:
            self.vocabulary.check_atom(atom)
        if c in self._seen:
            return False
        if any(is_variant(c, d) for d in self.clauses if len(d) == len(c) and d._hash != c._hash
               and _same_shape(c, d)):
            return False
        self._seen.add(c)
        self.clauses.append(c)
        return True

    def extend(self, clauses: Iterable[Clause]) -> "ClauseSet":
        for c in clauses:
            self.add(c)
        return self

    def union(self, other: "ClauseSet") -> "ClauseSet":
        out = ClauseSet(self.clauses, self.vocabulary.merged(other.vocabulary))
        out.extend(other.clauses)
        return out

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __getitem__(self, i):
        return self.clauses[i]

    def __repr__(self):
        return f"ClauseSet({len(self.clauses)} clauses)"

    def labels(self) -> List[str]:
        return [c.label for c in self.clauses]

    def with_vocabulary(self, vocab: Vocabulary) -> "ClauseSet":
        return ClauseSet(self.clauses, vocab)


def _same_shape(c: Clause, d: Clause) -> bool:
    return [_lit_key(l) for l in c.key] == [_lit_key(l) for l in d.key]


def is_variant(c: Clause, d: Clause) -> bool:
    """True when ``c`` and ``d`` are equal up to variable renaming and literal order
    (equations compared as unordered pairs)."""
    from .unify import match_literals_bijective

    if len(c) != len(d):
        return False
    return match_literals_bijective(c.literals, d.literals)
