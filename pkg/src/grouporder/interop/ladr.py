"""Prover9/Mace4 (LADR) input emission and a reader for the emitted subset.

Formula layout:

* a unit equation or disequation is written with spaced operators,
  ``(x * y) * z = x * (y * z).`` / ``b != e.``;
* a clause with negative and positive literals becomes an implication
  ``A & B -> C | D.`` with compact terms inside atoms;
* otherwise literals are joined by ``|``, negated atoms as ``- A`` and
  equations inside a longer disjunction as ``(s=t)``.

Variables are named x, y, z, u, v, w, then v6, v7, ... (LADR treats names
starting with u-z as variables), so generator names must not start with u-z.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..kernel.terms import (
    EQ, IDENTITY, INVERSE, PRODUCT, Clause, ClauseSet, Term, Vocabulary, VocabularyError,
)

_VAR_NAMES = ("x", "y", "z", "u", "v", "w")


class InteropError(ValueError):
    """A clause set cannot be written in the target dialect."""


class LadrSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 0):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def var_name(i: int) -> str:
    return _VAR_NAMES[i] if i < len(_VAR_NAMES) else f"v{i}"


def _is_ladr_var(name: str) -> bool:
    return name[0] in "uvwxyz"


def _check_symbol(name: str, arity: int, vocab: Optional[Vocabulary]) -> None:
    if _is_ladr_var(name):
        raise InteropError(f"symbol {name!r} would read as a variable in LADR syntax")
    if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
        raise InteropError(f"symbol {name!r} is not a LADR identifier")
    if vocab is not None and name in vocab and vocab[name].arity != arity:
        raise InteropError(f"unsupported arity {arity} for {name!r}")


def _term(t: Term, sep: str, vocab: Optional[Vocabulary] = None) -> str:
    if isinstance(t, int):
        return var_name(t)
    f = t[0]
    if f == PRODUCT:
        if len(t) != 3:
            raise InteropError("product needs two arguments")
        return f"{_factor(t[1], sep, vocab)}{sep}{_factor(t[2], sep, vocab)}"
    if f == INVERSE:
        if len(t) != 2:
            raise InteropError("inverse needs one argument")
        return _factor(t[1], sep, vocab) + "'"
    if len(t) != 1:
        raise InteropError(f"unsupported function {f!r} of arity {len(t) - 1}")
    if f != IDENTITY:
        _check_symbol(f, 0, vocab)
    return f


def _factor(t: Term, sep: str, vocab) -> str:
    s = _term(t, sep, vocab)
    return f"({s})" if not isinstance(t, int) and t[0] == PRODUCT else s


def _atom(atom, vocab) -> str:
    if atom[0] == EQ:
        raise AssertionError("equations are rendered by the caller")
    _check_symbol(atom[0], len(atom) - 1, vocab)
    return f"{atom[0]}({','.join(_term(a, '*', vocab) for a in atom[1:])})"


def _lit(sign: bool, atom, vocab, *, in_antecedent: bool = False) -> str:
    """A literal inside a longer formula (compact terms)."""
    if atom[0] == EQ:
        op = "=" if sign or in_antecedent else "!="
        return f"({_term(atom[1], '*', vocab)}{op}{_term(atom[2], '*', vocab)})"
    a = _atom(atom, vocab)
    return a if sign or in_antecedent else f"- {a}"


def formula(c: Clause, vocab: Optional[Vocabulary] = None) -> str:
    """One clause as a LADR formula (without the final period)."""
    lits = list(c.literals)
    if not lits:
        return "$F"
    if len(lits) == 1:
        sign, atom = lits[0]
        if atom[0] == EQ:
            op = "=" if sign else "!="
            return f"{_term(atom[1], ' * ', vocab)} {op} {_term(atom[2], ' * ', vocab)}"
        a = _atom(atom, vocab)
        return a if sign else f"- {a}"
    negs = [(s, a) for s, a in lits if not s]
    poss = [(s, a) for s, a in lits if s]
    if negs and poss:
        ante = " & ".join(_lit(s, a, vocab, in_antecedent=True) for s, a in negs)
        cons = " | ".join(_lit(s, a, vocab) for s, a in poss)
        return f"{ante} -> {cons}"
    return " | ".join(_lit(s, a, vocab) for s, a in lits)


@dataclass
class Prover9Options:
    kbo: bool = True
    max_seconds: Optional[int] = None
    labels: bool = False
    header: str = ""


def _assumptions(cs: ClauseSet, labels: bool) -> List[str]:
    out = ["formulas(assumptions)."]
    for c in cs:
        line = formula(c, cs.vocabulary)
        if labels and c.label:
            line += f" # label({c.label})"
        out.append(line + ".")
    out.append("end_of_list.")
    return out


def emit_prover9(cs: ClauseSet, opts: Optional[Prover9Options] = None) -> str:
    opts = opts or Prover9Options()
    lines = [f"% {opts.header}"] if opts.header else []
    if opts.kbo:
        lines.append("assign(order, kbo).")
    if opts.max_seconds is not None:
        lines.append(f"assign(max_seconds, {int(opts.max_seconds)}).")
    if len(lines) > (1 if opts.header else 0):
        lines.append("")
    lines += _assumptions(cs, opts.labels)
    return "\n".join(lines) + "\n"


def emit_mace4(cs: ClauseSet, sizes: Tuple[int, int] = (1, 10), max_seconds: Optional[int] = None,
               header: str = "", labels: bool = False) -> str:
    lo, hi = sizes
    if not 1 <= lo <= hi:
        raise InteropError(f"bad size range {sizes}")
    lines = [f"% {header}"] if header else []
    lines += [f"assign(start_size, {lo}).", f"assign(end_size, {hi})."]
    if max_seconds is not None:
        lines.append(f"assign(max_seconds, {int(max_seconds)}).")
    lines.append("")
    lines += _assumptions(cs, labels)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reader for the emitted subset

_TOKEN = re.compile(r"\s*(?:(\$F)|([A-Za-z][A-Za-z0-9_]*)|(->|!=|[-&|=*'(),]))")


def _tokens(text: str, line: int) -> List[str]:
    toks, pos = [], 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise LadrSyntaxError(f"unexpected character {text[pos]!r}", line)
        toks.append(m.group(m.lastindex))
        pos = m.end()
    return toks


class _Backtrack(Exception):
    pass


class _FormulaReader:
    def __init__(self, toks: List[str], line: int, predicates: Dict[str, int]):
        self.toks = toks
        self.i = 0
        self.line = line
        self.preds = predicates
        self.vars: Dict[str, int] = {}

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok: Optional[str] = None) -> str:
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise _Backtrack(f"expected {tok or 'token'}, got {t!r}")
        self.i += 1
        return t

    # formula := disj ("->" disj)?   with disjuncts/conjuncts being literals
    def formula(self) -> List[Tuple[bool, tuple]]:
        left = self.junction()
        if self.peek() == "->":
            self.take()
            right = self.junction()
            if left[0] != "&" and len(left[1]) > 1:
                raise LadrSyntaxError("antecedent must be a conjunction", self.line)
            if right[0] == "&" and len(right[1]) > 1:
                raise LadrSyntaxError("consequent must be a disjunction", self.line)
            return [(not s, a) for s, a in left[1]] + right[1]
        if left[0] == "&" and len(left[1]) > 1:
            raise LadrSyntaxError("top-level conjunction is not a clause", self.line)
        return left[1]

    def junction(self):
        lits = [self.literal()]
        op = None
        while self.peek() in ("|", "&"):
            t = self.take()
            if op is not None and t != op:
                raise LadrSyntaxError("mixed & and | without parentheses", self.line)
            op = t
            lits.append(self.literal())
        return op, lits

    def literal(self) -> Tuple[bool, tuple]:
        if self.peek() == "-":
            self.take()
            s, a = self.literal()
            return (not s, a)
        save = self.i
        try:
            return self.equation_or_atom()
        except _Backtrack:
            self.i = save
        if self.peek() == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            if len(inner) != 1:
                raise LadrSyntaxError("nested compound formula", self.line)
            return inner[0]
        raise LadrSyntaxError(f"cannot read literal at {self.peek()!r}", self.line)

    def equation_or_atom(self) -> Tuple[bool, tuple]:
        t = self.peek()
        if t is not None and t in self.preds and self.i + 1 < len(self.toks) \
                and self.toks[self.i + 1] == "(":
            name = self.take()
            self.take("(")
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            if len(args) != self.preds[name]:
                raise LadrSyntaxError(f"{name} used with arity {len(args)}", self.line)
            return (True, (name,) + tuple(args))
        lhs = self.term()
        op = self.peek()
        if op not in ("=", "!="):
            raise _Backtrack("expected = or !=")
        self.take()
        rhs = self.term()
        return (op == "=", (EQ, lhs, rhs))

    def term(self) -> Term:
        t = self.primary()
        while self.peek() == "*":
            self.take()
            t = (PRODUCT, t, self.primary())
        return t

    def primary(self) -> Term:
        tok = self.peek()
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
        elif tok is not None and re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", tok):
            self.take()
            if tok in self.preds:
                raise _Backtrack("predicate in term position")
            if _is_ladr_var(tok):
                t = self.vars.setdefault(tok, len(self.vars))
            else:
                t = (tok,)
        else:
            raise _Backtrack(f"unexpected {tok!r} in term")
        while self.peek() == "'":
            self.take()
            t = (INVERSE, t)
        return t


def _split_statements(text: str):
    """Yield (line number, statement text) for each period-terminated statement."""
    buf, start = [], None
    for n, raw in enumerate(text.splitlines(), 1):
        ln = raw.split("%", 1)[0]
        if not ln.strip():
            continue
        if start is None:
            start = n
        buf.append(ln)
        if ln.rstrip().endswith("."):
            yield start, " ".join(buf).strip()[:-1].strip()
            buf, start = [], None
    if buf:
        raise LadrSyntaxError("unterminated statement", start or 0)


def parse_formula(text: str, predicates: Dict[str, int], line: int = 0, label: str = "") -> Clause:
    if text.strip() == "$F":
        return Clause([], label)
    r = _FormulaReader(_tokens(text, line), line, predicates)
    try:
        lits = r.formula()
    except _Backtrack as exc:
        raise LadrSyntaxError(str(exc), line) from None
    if r.peek() is not None:
        raise LadrSyntaxError(f"trailing input {r.peek()!r}", line)
    return Clause(lits, label)


_ATTR_LABEL = re.compile(r"#\s*label\(\s*([A-Za-z0-9_]+)\s*\)\s*$")


def read_ladr_input(text: str, predicates: Optional[Dict[str, int]] = None,
                    ordering: str = "default") -> ClauseSet:
    """Clause set from the assumptions list of a Prover9/Mace4 input file.

    Predicate names default to L/2, C/3 and P (arity taken from first use).
    """
    preds = dict(predicates) if predicates else None
    clauses: List[Clause] = []
    in_list = False
    seen_list = False
    for line, stmt in _split_statements(text):
        if stmt.startswith("formulas(") or stmt.startswith("clauses("):
            if in_list:
                raise LadrSyntaxError("nested list", line)
            in_list = stmt.replace(" ", "") in ("formulas(assumptions)", "clauses(assumptions)",
                                                "formulas(sos)", "clauses(sos)")
            if not in_list:
                raise LadrSyntaxError(f"unsupported list {stmt!r}", line)
            seen_list = True
            continue
        if stmt == "end_of_list":
            if not in_list:
                raise LadrSyntaxError("end_of_list outside a list", line)
            in_list = False
            continue
        if not in_list:
            if re.fullmatch(r"(assign|set|clear)\(.*\)", stmt):
                continue
            raise LadrSyntaxError(f"unsupported directive {stmt!r}", line)
        label = ""
        m = _ATTR_LABEL.search(stmt)
        if m:
            label, stmt = m.group(1), stmt[: m.start()].strip()
        cur = preds if preds is not None else _guess_predicates(stmt)
        clauses.append(parse_formula(stmt, cur, line, label))
    if in_list:
        raise LadrSyntaxError("missing end_of_list")
    if not seen_list:
        raise LadrSyntaxError("no formulas(assumptions) list")
    return _clause_set(clauses, ordering)


def _guess_predicates(stmt: str) -> Dict[str, int]:
    out = {"L": 2, "C": 3}
    m = re.search(r"\bP\(", stmt)
    if m:
        depth, commas = 0, 0
        for ch in stmt[m.end():]:
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                commas += 1
        out["P"] = commas + 1
    return out


def _clause_set(clauses: Sequence[Clause], ordering: str) -> ClauseSet:
    gens: List[str] = []
    preds: Dict[str, int] = {}

    def walk(t):
        if isinstance(t, int):
            return
        if len(t) == 1 and t[0] != IDENTITY and t[0] not in gens:
            gens.append(t[0])
        for a in t[1:]:
            walk(a)

    for c in clauses:
        for _, atom in c.literals:
            if atom[0] != EQ:
                if preds.setdefault(atom[0], len(atom) - 1) != len(atom) - 1:
                    raise LadrSyntaxError(f"predicate {atom[0]} used with two arities")
            for a in atom[1:]:
                walk(a)
    try:
        vocab = Vocabulary.standard(gens, dict(sorted(preds.items())), ordering)
    except VocabularyError as exc:
        raise LadrSyntaxError(str(exc)) from None
    return ClauseSet(clauses, vocab)
