"""Knuth-Bendix ordering."""

from __future__ import annotations

from collections import Counter
from typing import Dict, Tuple

from .terms import Term, Vocabulary, VocabularyError

GREATER = "greater"
LESS = "less"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


class KBO:
    """KBO for a fixed vocabulary.

    Predicate symbols are accepted at the root (for atom comparison); they are
    weighted like any other symbol and rank above every function symbol.
    """

    def __init__(self, vocab: Vocabulary):
        vocab.validate()
        self.vocab = vocab
        self.w0 = vocab.variable_weight
        self.weight: Dict[str, int] = {}
        self.prec: Dict[str, int] = {}
        top = max((s.precedence for s in vocab.symbols.values()), default=0) + 1
        for s in vocab.symbols.values():
            self.weight[s.name] = s.weight
            self.prec[s.name] = s.precedence + (top if s.kind == "predicate" else 0)
        # pseudo-constant standing for "true" in atom comparisons
        self.weight["$true"] = 1
        self.prec["$true"] = -1
        self.weight[""] = 0
        self.prec[""] = -2

    def _w(self, t: Term) -> int:
        if isinstance(t, int):
            return self.w0
        try:
            w = self.weight[t[0]]
        except KeyError:
            raise VocabularyError(f"unknown symbol {t[0]!r}") from None
        for a in t[1:]:
            w += self._w(a)
        return w

    def _vars(self, t: Term, acc: Counter) -> Counter:
        if isinstance(t, int):
            acc[t] += 1
        else:
            for a in t[1:]:
                self._vars(a, acc)
        return acc

    def _info(self, t: Term) -> Tuple[int, Counter]:
        return self._w(t), self._vars(t, Counter())

    def greater(self, s: Term, t: Term) -> bool:
        if s == t:
            return False
        ws, vs = self._info(s)
        wt, vt = self._info(t)
        return self._gt(s, t, ws, wt, vs, vt)

    def _gt(self, s, t, ws, wt, vs, vt) -> bool:
        for v, n in vt.items():
            if vs.get(v, 0) < n:
                return False
        if ws > wt:
            return True
        if ws < wt or isinstance(s, int):
            return False
        if isinstance(t, int):
            # s = f^n(t) with f unary of weight 0
            u = s
            while not isinstance(u, int):
                if len(u) != 2 or self.weight[u[0]] != 0:
                    return False
                u = u[1]
            return u == t
        pf, pg = self.prec[s[0]], self.prec[t[0]]
        if pf != pg:
            return pf > pg
        for a, b in zip(s[1:], t[1:]):
            if a != b:
                return self.greater(a, b)
        return False

    def compare(self, s: Term, t: Term) -> str:
        if s == t:
            return EQUAL
        ws, vs = self._info(s)
        wt, vt = self._info(t)
        if self._gt(s, t, ws, wt, vs, vt):
            return GREATER
        if self._gt(t, s, wt, ws, vt, vs):
            return LESS
        return INCOMPARABLE


def kbo_compare(s: Term, t: Term, vocab: Vocabulary) -> str:
    """Compare two terms under the KBO induced by ``vocab``."""
    vocab.check_term(s)
    vocab.check_term(t)
    return KBO(vocab).compare(s, t)
