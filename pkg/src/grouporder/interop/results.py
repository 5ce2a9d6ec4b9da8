"""Parsers for Prover9 and Mace4 (LADR-Dec-2007) output."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..kernel.terms import IDENTITY, INVERSE, PRODUCT, Vocabulary
from ..modelfinder.model import FiniteModel, ModelFormatError

PROVED = "proved"
SATURATED = "saturated"
RESOURCE_OUT = "resource-out"


class OutputParseError(ValueError):
    pass


@dataclass
class Prover9Result:
    status: str
    exit_reason: str = ""
    user_cpu: Optional[float] = None
    system_cpu: Optional[float] = None
    wall_clock: Optional[float] = None
    warning: bool = False
    proof_text: str = ""


_EXIT = re.compile(r"^Process \d+ exit \((\w+)\)", re.M)
_CPU = re.compile(r"User_CPU=([\d.]+),\s*System_CPU=([\d.]+),\s*Wall_clock=([\d.]+)")
_PROOF = re.compile(r"=+ PROOF =+\n(.*?)\n=+ end of proof =+", re.S)

_LIMITS = {"max_seconds", "max_megs", "max_given", "max_kept", "max_weight", "max_generated",
           "max_sos", "max_levels"}


def parse_prover9_output(text: str) -> Prover9Result:
    """Status and CPU figures from a complete Prover9 log.

    The exit reason on the final ``Process N exit (...)`` line decides:
    max_proofs with a "THEOREM PROVED" banner is a proof, sos_empty is a
    saturation, the search limits are resource-outs and any other reason is
    reported as resource-out with ``warning`` set.
    """
    if "Prover9" not in text[:2000]:
        raise OutputParseError("no Prover9 header")
    exits = _EXIT.findall(text)
    if not exits:
        raise OutputParseError("no exit line (truncated output?)")
    reason = exits[-1]
    cpu = _CPU.findall(text)
    user = system = wall = None
    if cpu:
        user, system, wall = (float(v) for v in cpu[-1])
    proofs = _PROOF.findall(text)
    warning = False
    if reason == "max_proofs":
        if "THEOREM PROVED" not in text:
            raise OutputParseError("max_proofs exit without a THEOREM PROVED banner")
        status = PROVED
    elif reason == "sos_empty":
        status = SATURATED
    elif reason in _LIMITS:
        status = RESOURCE_OUT
    else:
        status, warning = RESOURCE_OUT, True
    return Prover9Result(status, reason, user, system, wall, warning, proofs[0] if proofs else "")


# ---------------------------------------------------------------------------
# Mace4 interpretations

_INTERP = re.compile(r"interpretation\(\s*(\d+)\s*,\s*\[[^\]]*\]\s*,\s*\[")
_ENTRY = re.compile(r"(function|relation)\(\s*('|\*|[A-Za-z_$][A-Za-z0-9_$]*)\s*(\(\s*_(?:\s*,\s*_)*\s*\))?"
                    r"\s*,\s*\[([^\]]*)\]\s*\)")


def _values(body: str, n: int, count: int, what: str) -> List[int]:
    try:
        vals = [int(v) for v in body.replace("\n", " ").split(",") if v.strip()]
    except ValueError:
        raise OutputParseError(f"non-integer entry in {what}") from None
    if len(vals) != count:
        raise OutputParseError(f"{what}: expected {count} entries, got {len(vals)}")
    if any(not 0 <= v < n for v in vals):
        raise OutputParseError(f"{what}: entry out of range for size {n}")
    return vals


def _block_end(text: str, start: int) -> int:
    depth = 1
    for i in range(start, len(text)):
        if text[i] == "[":
            depth += 1
        elif text[i] == "]":
            depth -= 1
            if depth == 0:
                return i
    raise OutputParseError("unterminated interpretation block")


def parse_mace4_model(text: str, vocab: Vocabulary) -> FiniteModel:
    """First ``interpretation(...)`` block of ``text`` as a FiniteModel over ``vocab``."""
    m = _INTERP.search(text)
    if not m:
        raise OutputParseError("no interpretation block")
    n = int(m.group(1))
    if n < 1:
        raise OutputParseError("domain size must be positive")
    body = text[m.end():_block_end(text, m.end())]
    funcs: Dict[str, List[int]] = {}
    rels: Dict[str, np.ndarray] = {}
    for kind, name, args, vals in _ENTRY.findall(body):
        arity = args.count("_")
        want = vocab[name].arity if name in vocab else None
        if want is None:
            continue
        if want != arity or (kind == "relation") != (vocab[name].kind == "predicate"):
            raise OutputParseError(f"{name} has arity {want} in the vocabulary, {arity} in the model")
        count = n ** arity
        if kind == "function":
            funcs[name] = _values(vals, n, count, name)
        else:
            flat = _values(vals, 2, count, name)
            rels[name] = np.array(flat, dtype=bool).reshape((n,) * arity) if arity else np.array(flat)
    missing = [s for s in (IDENTITY, INVERSE, PRODUCT, *vocab.generators) if s not in funcs]
    missing += [p for p in vocab.predicates if p not in rels]
    if missing:
        raise OutputParseError(f"model does not interpret {', '.join(missing)}")
    try:
        return FiniteModel(n, np.array(funcs[PRODUCT]).reshape(n, n), np.array(funcs[INVERSE]),
                           funcs[IDENTITY][0], {g: funcs[g][0] for g in vocab.generators}, rels)
    except ModelFormatError as exc:
        raise OutputParseError(str(exc)) from None


def format_mace4_model(m: FiniteModel) -> str:
    """Render ``m`` as a Mace4 interpretation block (used for fixtures and round-trips)."""
    entries = [f"function({IDENTITY}, [ {m.identity} ])"]
    for g, v in m.constants.items():
        entries.append(f"function({g}, [ {v} ])")
    entries.append(f"function('(_), [ {', '.join(str(int(v)) for v in m.inverse)} ])")
    rows = ",\n\t\t\t   ".join(", ".join(str(int(v)) for v in row) for row in m.product)
    entries.append(f"function(*(_,_), [\n\t\t\t   {rows} ])")
    for name, table in m.predicates.items():
        args = ",".join("_" * 1 for _ in range(table.ndim))
        flat = ", ".join(str(int(v)) for v in table.ravel())
        entries.append(f"relation({name}({args}), [ {flat} ])")
    inner = ",\n\n        ".join(entries)
    return (f"interpretation( {m.size}, [number=1, seconds=0], [\n\n        {inner}\n]).\n")
