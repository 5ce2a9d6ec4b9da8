"""Finite interpretations and their text serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..kernel.terms import IDENTITY, INVERSE, PRODUCT, Term


class ModelFormatError(ValueError):
    pass


@dataclass
class FiniteModel:
    """Domain {0..n-1} with product/inverse tables, identity, generator
    constants and boolean predicate tables."""

    size: int
    product: np.ndarray
    inverse: np.ndarray
    identity: int
    constants: Dict[str, int] = field(default_factory=dict)
    predicates: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ModelFormatError("model size must be positive")
        self.product = np.asarray(self.product, dtype=np.int64).reshape(n, n)
        self.inverse = np.asarray(self.inverse, dtype=np.int64).reshape(n)
        for arr in (self.product, self.inverse):
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                raise ModelFormatError("table entry out of range")
        if not 0 <= self.identity < n:
            raise ModelFormatError("identity out of range")
        for name, v in self.constants.items():
            if not 0 <= v < n:
                raise ModelFormatError(f"constant {name} out of range")
        self.predicates = {k: np.asarray(v, dtype=bool) for k, v in self.predicates.items()}
        for k, v in self.predicates.items():
            if any(d != n for d in v.shape):
                raise ModelFormatError(f"predicate {k} has shape {v.shape} for size {n}")

    # -- evaluation -------------------------------------------------------

    def value(self, t: Term, env: Optional[Dict[int, int]] = None) -> int:
        if isinstance(t, int):
            if env is None or t not in env:
                raise ValueError(f"unbound variable x{t}")
            return env[t]
        f = t[0]
        if f == PRODUCT:
            return int(self.product[self.value(t[1], env), self.value(t[2], env)])
        if f == INVERSE:
            return int(self.inverse[self.value(t[1], env)])
        if f == IDENTITY:
            return self.identity
        try:
            return self.constants[f]
        except KeyError:
            raise ValueError(f"model does not interpret {f!r}") from None

    def holds(self, pred: str, *args: int) -> bool:
        return bool(self.predicates[pred][tuple(args)])

    def with_predicates(self, predicates: Dict[str, np.ndarray]) -> "FiniteModel":
        return FiniteModel(self.size, self.product.copy(), self.inverse.copy(), self.identity,
                           dict(self.constants), {k: np.array(v, dtype=bool) for k, v in predicates.items()})

    def __eq__(self, other):
        if not isinstance(other, FiniteModel):
            return NotImplemented
        return (self.size == other.size and np.array_equal(self.product, other.product)
                and np.array_equal(self.inverse, other.inverse) and self.identity == other.identity
                and self.constants == other.constants
                and self.predicates.keys() == other.predicates.keys()
                and all(np.array_equal(v, other.predicates[k]) for k, v in self.predicates.items()))

    # -- serialization ----------------------------------------------------

    def dumps(self) -> str:
        lines = [f"size {self.size}", f"identity {self.identity}", "op"]
        for row in self.product:
            lines.append(" ".join(str(int(v)) for v in row))
        lines.append("inv " + " ".join(str(int(v)) for v in self.inverse))
        for name, v in self.constants.items():
            lines.append(f"const {name}={v}")
        for name, table in self.predicates.items():
            lines.append(f"pred {name} {table.ndim}")
            for idx in zip(*np.nonzero(table)):
                lines.append(" ".join(str(int(i)) for i in idx))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FiniteModel":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        it = iter(enumerate(lines))
        n = None
        identity = 0
        product: List[List[int]] = []
        inverse = None
        constants: Dict[str, int] = {}
        preds: Dict[str, np.ndarray] = {}
        current = None
        mode = None
        for i, ln in it:
            head = ln.split()[0]
            try:
                if head == "size":
                    n = int(ln.split()[1])
                    mode = None
                elif head == "identity":
                    identity = int(ln.split()[1])
                    mode = None
                elif head == "op":
                    mode = "op"
                elif head == "inv":
                    inverse = [int(v) for v in ln.split()[1:]]
                    mode = None
                elif head == "const":
                    name, val = ln.split(None, 1)[1].split("=")
                    constants[name.strip()] = int(val)
                    mode = None
                elif head == "pred":
                    _, name, ar = ln.split()
                    if n is None:
                        raise ModelFormatError("size must precede predicates")
                    current = preds[name] = np.zeros((n,) * int(ar), dtype=bool)
                    mode = "pred"
                elif mode == "op":
                    product.append([int(v) for v in ln.split()])
                elif mode == "pred":
                    idx = tuple(int(v) for v in ln.split())
                    if len(idx) != current.ndim or any(not 0 <= v < n for v in idx):
                        raise ModelFormatError(f"bad predicate tuple on line {i + 1}")
                    current[idx] = True
                else:
                    raise ModelFormatError(f"unexpected line {i + 1}: {ln!r}")
            except (ValueError, IndexError) as exc:
                if isinstance(exc, ModelFormatError):
                    raise
                raise ModelFormatError(f"malformed line {i + 1}: {ln!r}") from exc
        if n is None or inverse is None or len(product) != n or any(len(r) != n for r in product):
            raise ModelFormatError("incomplete model block")
        return cls(n, np.array(product), np.array(inverse), identity, constants, preds)

    def __str__(self):
        return self.dumps()
