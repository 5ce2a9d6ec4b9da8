"""Group presentations, words, and statement sets.

Presentation text grammar (whitespace insignificant)::

    presentation := "<" generators "|" relations ">"
    generators   := ident ("," ident)*
    relations    := [relation ("," relation)*]
    relation     := word ["=" word]          # bare relator r means r = e
    word         := factor*
    factor       := ident | "e" | "(" word ")" | factor "^" integer

Juxtaposed identifiers inside a word are split by longest match against the
declared generator names, so ``(ba)^3`` reads as ``(b a)^3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .kernel.terms import (
    E, EQ, IDENTITY, INVERSE, PRODUCT, RESERVED, Clause, ClauseSet, Term, Vocabulary,
    encode_power, is_ground,
)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


class PresentationSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word = ()


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be distinct")
        for g in self.generators:
            if g in RESERVED or not _IDENT.fullmatch(g):
                raise ValueError(f"invalid generator name {g!r}")
        known = set(self.generators)
        for rel in self.relations:
            for g, _ in rel.lhs + rel.rhs:
                if g not in known:
                    raise ValueError(f"unknown generator {g!r} in relation")

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.generators == other.generators
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.generators, self.relations))

    def vocabulary(self) -> Vocabulary:
        return Vocabulary.standard(self.generators)

    def __str__(self):
        return render(self)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _position(text: str, idx: int) -> Tuple[int, int]:
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, text: str, pos: int = 0, end: Optional[int] = None):
        self.text = text
        self.pos = pos
        self.end = len(text) if end is None else end

    def error(self, msg: str, at: Optional[int] = None):
        line, col = _position(self.text, self.pos if at is None else at)
        raise PresentationSyntaxError(msg, line, col)

    def skip(self):
        while self.pos < self.end and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < self.end else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip()
        m = _IDENT.match(self.text, self.pos, self.end)
        if not m:
            self.error("expected identifier")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\s*\d+").match(self.text, self.pos, self.end)
        if not m:
            self.error("expected integer exponent")
        self.pos = m.end()
        return int(m.group().replace(" ", ""))


def _split_ident(tok: str, gens: Sequence[str], reader: _Reader, at: int) -> List[str]:
    names = sorted(set(gens) | {IDENTITY}, key=len, reverse=True)
    out = []
    i = 0
    while i < len(tok):
        for name in names:
            if tok.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            reader.error(f"unknown generator in {tok!r}", at + i)
    return out


def word_inverse(w: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def word_power(w: Word, k: int) -> Word:
    if k >= 0:
        return w * k
    return word_inverse(w) * (-k)


def free_reduce(w: Word) -> Word:
    out: List[Letter] = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _parse_word(r: _Reader, gens: Sequence[str], stop: str) -> Word:
    letters: List[Letter] = []
    while True:
        ch = r.peek()
        if ch == "" or ch in stop:
            return tuple(letters)
        if ch == "(":
            r.pos += 1
            factors = [_parse_word(r, gens, ")")]
            r.expect(")")
        elif _IDENT.match(ch):
            at = r.pos
            factors = [((g, 1),) if g != IDENTITY else () for g in _split_ident(r.ident(), gens, r, at)]
        else:
            r.error(f"unexpected character {ch!r}")
        while r.peek() == "^":
            r.pos += 1
            factors[-1] = word_power(factors[-1], r.integer())
        for f in factors:
            letters.extend(f)


def parse_word(text: str, generators: Sequence[str]) -> Word:
    r = _Reader(text)
    w = _parse_word(r, generators, "")
    if r.peek():
        r.error("trailing input")
    return w


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse ``< gens | relations >`` into a :class:`Presentation`."""
    r = _Reader(text)
    r.expect("<")
    gens: List[str] = []
    while True:
        r.skip()
        at = r.pos
        g = r.ident()
        if g in RESERVED:
            r.error(f"reserved name {g!r} used as generator", at)
        if g in gens:
            r.error(f"duplicate generator {g!r}", at)
        gens.append(g)
        ch = r.peek()
        if ch == ",":
            r.pos += 1
            continue
        if ch == "|":
            r.pos += 1
            break
        if ch == ">":
            break
        r.error("expected ',' or '|'")
    rels: List[Relation] = []
    while r.peek() not in (">", ""):
        r.skip()
        start = r.pos
        lhs = _parse_word(r, gens, "=,>")
        rhs: Word = ()
        if r.peek() == "=":
            r.pos += 1
            rhs = _parse_word(r, gens, ",>")
        if r.pos == start:
            r.error("empty relation")
        rels.append(Relation(lhs, rhs))
        if r.peek() == ",":
            r.pos += 1
            if r.peek() == ">":
                r.error("relation expected after ','")
    r.expect(">")
    if r.peek():
        r.error("trailing input after '>'")
    return Presentation(tuple(gens), tuple(rels), name)


def render_word(w: Word) -> str:
    if not w:
        return "e"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        g, s = w[i]
        k = (j - i) * s
        parts.append(g if k == 1 else f"{g}^{k}")
        i = j
    return " ".join(parts)


def render(p: Presentation) -> str:
    rels = []
    for rel in p.relations:
        rels.append(render_word(rel.lhs) + " = " + render_word(rel.rhs))
    return f"< {', '.join(p.generators)} | {', '.join(rels)} >"


# ---------------------------------------------------------------------------
# encoding into terms


def word_to_term(w: Word) -> Term:
    """Left-nested product of the letters; g^-1 becomes g'; empty word is e."""
    if not w:
        return E
    acc: Optional[Term] = None
    for g, s in w:
        if s not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {s}")
        f = (g,) if s == 1 else (INVERSE, (g,))
        acc = f if acc is None else (PRODUCT, acc, f)
    return acc


def relations_to_axioms(p: Presentation) -> ClauseSet:
    """One positive unit equation per relation (the Ax_R axioms)."""
    vocab = p.vocabulary()
    cs = ClauseSet(vocabulary=vocab)
    for k, rel in enumerate(p.relations, 1):
        c = Clause([(True, (EQ, word_to_term(rel.lhs), word_to_term(rel.rhs)))], f"r_{k}")
        cs.add(c)
    return cs


# ---------------------------------------------------------------------------
# ground terms written in prover syntax (a * b, a', e, parentheses)


_TERM_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\*|·)|('|′)|(\()|(\))|(\^)|(-?\d+))")


def parse_term(text: str, generators: Optional[Iterable[str]] = None) -> Term:
    """Parse a ground term such as ``(a * b) * b`` or ``(b*a)'``.

    ``*`` associates to the left, ``'`` is postfix, ``t^k`` (k >= 1) expands
    to the left-nested power.
    """
    known = None if generators is None else set(generators) | {IDENTITY}
    toks: List[Tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            line, col = _position(text, pos)
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kinds = ("id", "mul", "inv", "(", ")", "^", "int")
        for kind, g in zip(kinds, m.groups()):
            if g is not None:
                toks.append((kind, g, m.start(m.lastindex)))
        pos = m.end()
    i = 0

    def err(msg):
        at = toks[i][2] if i < len(toks) else len(text)
        line, col = _position(text, at)
        raise PresentationSyntaxError(msg, line, col)

    def primary():
        nonlocal i
        if i >= len(toks):
            err("unexpected end of term")
        kind, val, _ = toks[i]
        if kind == "id":
            if known is not None and val not in known:
                err(f"unknown generator {val!r}")
            i += 1
            t = (val,)
        elif kind == "(":
            i += 1
            t = product()
            if i >= len(toks) or toks[i][0] != ")":
                err("expected ')'")
            i += 1
        else:
            err(f"unexpected token {val!r}")
        while i < len(toks) and toks[i][0] in ("inv", "^"):
            if toks[i][0] == "inv":
                t = (INVERSE, t)
                i += 1
            else:
                i += 1
                if i >= len(toks) or toks[i][0] != "int":
                    err("expected exponent")
                t = encode_power(t, int(toks[i][1]))
                i += 1
        return t

    def product():
        nonlocal i
        t = primary()
        while i < len(toks) and toks[i][0] == "mul":
            i += 1
            t = (PRODUCT, t, primary())
        return t

    t = product()
    if i != len(toks):
        err("trailing input in term")
    return t


def render_term(t: Term) -> str:
    """Inverse of :func:`parse_term` (fully parenthesised products)."""
    if isinstance(t, int):
        raise ValueError("ground term expected")
    if t[0] == PRODUCT:
        return f"({render_term(t[1])} * {render_term(t[2])})"
    if t[0] == INVERSE:
        return render_term(t[1]) + "'"
    return t[0]


# ---------------------------------------------------------------------------
# statements


STATEMENT_KINDS = ("inequalities", "order", "circular", "cone")


@dataclass(frozen=True)
class StatementItem:
    terms: Tuple[Term, ...]
    strict: bool = False

    def __post_init__(self):
        if len(self.terms) not in (2, 3):
            raise ValueError("statement items are pairs or triples")
        if not all(is_ground(t) for t in self.terms):
            raise ValueError("statement terms must be ground")


@dataclass(frozen=True)
class StatementSet:
    items: Tuple[StatementItem, ...] = ()
    kind: str = "inequalities"

    def __post_init__(self):
        if self.kind not in STATEMENT_KINDS:
            raise ValueError(f"unknown statement kind {self.kind!r}")
        if sum(1 for it in self.items if it.strict) > 1:
            raise ValueError("at most one statement may be strengthened")

    @classmethod
    def of(cls, items: Iterable[Sequence[Term]], strict_index: Optional[int] = None,
           kind: str = "inequalities") -> "StatementSet":
        return cls(tuple(StatementItem(tuple(it), i == strict_index) for i, it in enumerate(items)), kind)

    @property
    def arity(self) -> Optional[int]:
        sizes = {len(it.terms) for it in self.items}
        if len(sizes) > 1:
            raise ValueError("mixed pair/triple statements")
        return sizes.pop() if sizes else None

    def pairs(self) -> List[Tuple[Term, Term]]:
        return [tuple(it.terms) for it in self.items]

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)
