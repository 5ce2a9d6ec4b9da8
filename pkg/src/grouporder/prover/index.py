"""Discrimination tree over flattened terms.

Keys are symbol names, with ``?`` for any variable.  Retrieval returns a
superset of the true candidates (variable identity is ignored); callers run
the exact match/unify afterwards.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Tuple

VAR = "?"
_LEAF = None


def flatten(t) -> Tuple[List[str], List[int]]:
    """Preorder keys and, per position, the index just past that subterm."""
    keys: List[str] = []
    ends: List[int] = []

    def go(s):
        i = len(keys)
        if isinstance(s, int):
            keys.append(VAR)
            ends.append(i + 1)
            return
        keys.append(s[0])
        ends.append(0)
        for a in s[1:]:
            go(a)
        ends[i] = len(keys)

    go(t)
    return keys, ends


class DiscTree:
    def __init__(self):
        self.root: Dict = {}
        self.arity: Dict[str, int] = {VAR: 0}
        self.size = 0

    def insert(self, term, item) -> None:
        node = self.root
        stack = [term]
        while stack:
            s = stack.pop()
            if isinstance(s, int):
                key = VAR
            else:
                key = s[0]
                self.arity[key] = len(s) - 1
                stack.extend(reversed(s[1:]))
            node = node.setdefault(key, {})
        node.setdefault(_LEAF, []).append(item)
        self.size += 1

    def remove(self, term, pred) -> None:
        """Drop items at ``term``'s leaf for which ``pred(item)`` holds."""
        node = self.root
        keys, _ = flatten(term)
        for k in keys:
            node = node.get(k)
            if node is None:
                return
        leaf = node.get(_LEAF)
        if leaf:
            before = len(leaf)
            leaf[:] = [it for it in leaf if not pred(it)]
            self.size -= before - len(leaf)

    def generalizations(self, term) -> Iterator:
        """Items whose key term might match onto ``term``."""
        # walk the query term directly; ``pend`` is a cons list of subterms
        out: List = []
        stack = [(self.root, (term, None))]
        while stack:
            node, pend = stack.pop()
            if pend is None:
                leaf = node.get(_LEAF)
                if leaf:
                    out.extend(leaf)
                continue
            t, rest = pend
            child = node.get(VAR)
            if child is not None:
                stack.append((child, rest))
            if not isinstance(t, int):
                child = node.get(t[0])
                if child is not None:
                    for k in range(len(t) - 1, 0, -1):
                        rest = (t[k], rest)
                    stack.append((child, rest))
        return iter(out)

    def _skip(self, node, k: int, acc: List) -> None:
        if k == 0:
            acc.append(node)
            return
        for key, child in node.items():
            if key is _LEAF:
                continue
            self._skip(child, k - 1 + self.arity[key], acc)

    def unifiable(self, term) -> Iterator:
        """Items whose key term might unify with ``term``."""
        keys, ends = flatten(term)
        n = len(keys)
        out: List = []
        stack = [(self.root, 0)]
        while stack:
            node, i = stack.pop()
            if i == n:
                leaf = node.get(_LEAF)
                if leaf:
                    out.extend(leaf)
                continue
            k = keys[i]
            if k == VAR:
                acc: List = []
                self._skip(node, 1, acc)
                for nd in acc:
                    stack.append((nd, ends[i]))
                continue
            child = node.get(VAR)
            if child is not None:
                stack.append((child, ends[i]))
            child = node.get(k)
            if child is not None:
                stack.append((child, i + 1))
        return iter(out)

    def instances(self, term) -> Iterator:
        """Items whose key term might be an instance of ``term``."""
        keys, ends = flatten(term)
        n = len(keys)
        out: List = []
        stack = [(self.root, 0)]
        while stack:
            node, i = stack.pop()
            if i == n:
                leaf = node.get(_LEAF)
                if leaf:
                    out.extend(leaf)
                continue
            k = keys[i]
            if k == VAR:
                acc: List = []
                self._skip(node, 1, acc)
                for nd in acc:
                    stack.append((nd, ends[i]))
                continue
            child = node.get(k)
            if child is not None:
                stack.append((child, i + 1))
        return iter(out)
