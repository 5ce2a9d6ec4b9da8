"""Group-theoretic verdicts and the map from engine outcomes to them."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..kernel.terms import Term
from ..modelfinder.check import extract_true_inequalities
from ..modelfinder.model import FiniteModel
from ..presentation import render_term
from ..theories import Shape, TheoryError, TheorySpec

CONCLUSIONS = ("NotLeftOrderable", "NotBiOrderable", "NotCircularlyOrderable",
               "NoBiInvariantCircularOrder", "IsTorsion", "IsGeneralisedTorsion", "MonoidMembership",
               "InClosure", "NoNontrivialLeftOrderableQuotient", "ConsistentAtSize", "Unknown")

# engine outcome statuses
REFUTATION = "refutation"
MODEL = "model"
SATURATED = "saturated"
RESOURCE_OUT = "resource-out"
EXTERNAL_PROVED = "external-proved"
SKIPPED = "skipped"
INVALID = "invalid"
OUTCOME_STATUSES = (REFUTATION, MODEL, SATURATED, RESOURCE_OUT, EXTERNAL_PROVED, SKIPPED, INVALID)


class InterpretRefused(ValueError):
    """The outcome cannot be read through any proposition for this theory."""


@dataclass
class EngineOutcome:
    status: str
    verified: bool = False
    evidence: str = ""
    model: Optional[FiniteModel] = None
    trusted_external: bool = False
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in OUTCOME_STATUSES:
            raise ValueError(f"unknown outcome status {self.status!r}")


@dataclass
class Verdict:
    conclusion: str
    justification: str = ""
    evidence: str = ""
    terms: Tuple[str, ...] = ()
    generating_set: Tuple[str, ...] = ()
    size: Optional[int] = None
    statements: Tuple[Tuple[str, ...], ...] = ()
    caveats: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.conclusion not in CONCLUSIONS:
            raise ValueError(f"unknown conclusion {self.conclusion!r}")

    @property
    def known(self) -> bool:
        return self.conclusion != "Unknown"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["terms"] = list(self.terms)
        d["generating_set"] = list(self.generating_set)
        d["statements"] = [list(s) for s in self.statements]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(d["conclusion"], d.get("justification", ""), d.get("evidence", ""),
                   tuple(d.get("terms", ())), tuple(d.get("generating_set", ())), d.get("size"),
                   tuple(tuple(s) for s in d.get("statements", ())), list(d.get("caveats", [])))

    def describe(self) -> str:
        c = self.conclusion
        if c == "IsTorsion":
            head = f"{self.terms[0]} represents a torsion element"
        elif c == "IsGeneralisedTorsion":
            head = f"{self.terms[0]} represents a generalised torsion element"
        elif c == "MonoidMembership":
            t1, t2 = self.terms
            head = f"inverse of {t2} lies in the monoid generated by {t2} and the centraliser of {t1}"
        elif c == "InClosure":
            head = (f"{self.terms[0]} lies in the left relatively convex subgroup closure of "
                    f"{{{', '.join(self.generating_set)}}}")
        elif c == "ConsistentAtSize":
            head = f"consistent: model of size {self.size}"
        else:
            head = c
        if self.justification:
            head += f" [{self.justification}]"
        return head


def _render(t: Term) -> str:
    s = render_term(t)
    return s[1:-1] if s.startswith("(") and s.endswith(")") and t[0] == "*" else s


def citation(shape: Shape, strengthened: bool) -> str:
    parts = [shape.citation]
    if shape.via:
        parts.append(shape.via)
    if strengthened:
        parts.append("Prop 3.4 (one statement strengthened)")
    return " + ".join(parts)


def interpret(spec: TheorySpec, outcome: EngineOutcome, cofinality_established: bool = False,
              caveats: Sequence[str] = ()) -> Verdict:
    """The single conclusion licensed for ``spec`` by ``outcome``.

    Refused (``InterpretRefused``) when the axiom groups do not match any
    proposition for the question, or when a fixed-point refutation arrives
    without established cofinality premises.
    """
    try:
        shape = spec.validate()
    except TheoryError as exc:
        raise InterpretRefused(str(exc)) from None
    notes = list(caveats) + list(outcome.notes)
    status = outcome.status
    q = spec.question
    if status == MODEL and outcome.verified and outcome.model is not None:
        m = outcome.model
        pairs = [it.terms for it in spec.statements.items if len(it.terms) == 2]
        kept = extract_true_inequalities(m, pairs) if pairs else None
        confirmed = tuple((_render(s), _render(t)) for s, t in kept.pairs()) if kept else ()
        return Verdict("ConsistentAtSize", "finite model (quotient group)", outcome.evidence,
                       size=m.size, statements=confirmed, caveats=notes)
    refuted = status == REFUTATION and outcome.verified
    if status == EXTERNAL_PROVED and outcome.trusted_external:
        refuted = True
        notes.append("refutation reported by an external prover and trusted by the manifest; "
                     "not checked locally")
    if not refuted:
        if status == EXTERNAL_PROVED:
            notes.append("external prover reported a proof; the manifest does not trust external runs")
        elif status == REFUTATION:
            notes.append("refutation failed proof checking")
        elif status == SATURATED:
            notes.append("search saturated without refutation; no consistency claim is made")
        return Verdict("Unknown", "", outcome.evidence, caveats=notes)
    if shape.question == "Model":
        notes.append("statement set refuted in the presented group; no orderability conclusion")
        return Verdict("Unknown", "", outcome.evidence, caveats=notes)
    if q.kind == "FixedPoint" and not cofinality_established:
        raise InterpretRefused("fixed-point refutation without established cofinality premises")
    just = citation(shape, spec.strengthened())
    terms = tuple(_render(t) for t in q.terms)
    gens = tuple(_render(t) for t in q.generating_set)
    return Verdict(shape.conclusion, just, outcome.evidence, terms, gens, caveats=notes)
