"""Task manifests.

A manifest is a UTF-8 text of ``key: value`` lines; ``#`` starts a comment
and a line holding only ``---`` separates tasks in a multi-task file.  Keys:

``id``             task identifier (required)
``title``          free text
``presentation``   inline presentation ``< gens | rels >``
``presentation-file``  path relative to the manifest
``question``       LO, BO, CO, CBO, Torsion, GenTorsion, MonoidMembership,
                   ClosureMembership, FixedPoint or Model (default Model)
``groups``         comma list of axiom groups (Gr and Ax_R are implicit),
                   e.g. ``AxPL', PB, Isolated(2)``
``statements``     ``;``-separated items, each ``s != t`` or ``r, s, t``
``lift``           inequalities, order, circular, cone-unary, cone-binary
``strict``         1-based index of the strengthened statement
``terms``          question terms: t (Torsion), t1, t2 (MonoidMembership),
                   cofinal list (FixedPoint)
``target`` / ``generating-set``   ClosureMembership target and generators
``case``           one extra clause in Prover9 syntax (repeatable)
``case-siblings``  the other task ids of a user-declared exhaustive split
``depends``        comma list of prior task ids
``closure``        ``t in cl(g1, g2) by ID`` or ``... by-symmetry-of ID``
                   (repeatable; cofinality premises for FixedPoint)
``generated-by``   generators that must lie in each cofinal closure
                   (default: the presentation generators)
``engine``         builtin-prover, builtin-model or external
``program``        prover9 or mace4 (external engine; default by question)
``external-only``  yes/no: skip unless external binaries are configured
``model-file``     supplied model (FiniteModel text) checked when an
                   external-only model task cannot run
``trust-external`` yes/no: accept an external proof banner as evidence
``budget-seconds``, ``max-clauses``, ``sizes`` (``a..b``), ``ordering``
``expect``         ``refutation`` or ``model N`` (regression record)
``note``           caveat copied into the verdict (repeatable)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..interop.ladr import LadrSyntaxError, parse_formula
from ..kernel.terms import E, Clause, Term
from ..presentation import (
    Presentation, PresentationSyntaxError, StatementSet, parse_presentation, parse_term,
)
from ..theories import AxiomGroup, Question, TheoryError, TheorySpec

ENGINES = ("builtin-prover", "builtin-model", "external")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ClosureFact:
    """``target`` lies in cl(``generators``), established by task ``source``."""

    target: Term
    generators: Tuple[Term, ...]
    source: str
    by_symmetry: bool = False
    text: str = ""


@dataclass
class TaskSpec:
    id: str
    theory: TheorySpec
    engine: str = "builtin-prover"
    budget_seconds: float = 120.0
    max_clauses: int = 200_000
    sizes: Tuple[int, int] = (1, 6)
    dependencies: Tuple[str, ...] = ()
    closure: Tuple[ClosureFact, ...] = ()
    generated_by: Tuple[Term, ...] = ()
    case_siblings: Tuple[str, ...] = ()
    program: str = ""
    model_file: str = ""
    external_only: bool = False
    trust_external: bool = False
    expect: Optional[str] = None
    title: str = ""
    notes: Tuple[str, ...] = ()
    source: str = ""

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ManifestError(f"unknown engine {self.engine!r}")
        if self.id in self.dependencies:
            raise ManifestError(f"task {self.id} depends on itself")
        lo, hi = self.sizes
        if not 1 <= lo <= hi:
            raise ManifestError(f"bad size range {self.sizes}")
        if self.budget_seconds <= 0 or self.max_clauses <= 0:
            raise ManifestError("budgets must be positive")
        for f in self.closure:
            if f.source not in self.dependencies:
                raise ManifestError(f"closure premise cites {f.source}, which is not a dependency")

    @property
    def expected_size(self) -> Optional[int]:
        if self.expect and self.expect.startswith("model"):
            return int(self.expect.split()[1])
        return None


_MULTI = {"case", "closure", "note"}
_KEYS = {"id", "title", "presentation", "presentation-file", "question", "groups", "statements",
         "lift", "strict", "terms", "target", "generating-set", "case", "case-siblings", "depends",
         "closure", "generated-by", "engine", "program", "external-only", "trust-external",
         "budget-seconds", "max-clauses", "sizes", "ordering", "expect", "note", "model-file"}


def _fields(text: str) -> Tuple[Dict[str, str], Dict[str, List[str]], Dict[str, int]]:
    single: Dict[str, str] = {}
    multi: Dict[str, List[str]] = {k: [] for k in _MULTI}
    lines: Dict[str, int] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        if ":" not in ln:
            raise ManifestError(f"line {n}: expected 'key: value'")
        key, val = (s.strip() for s in ln.split(":", 1))
        key = key.lower()
        if key not in _KEYS:
            raise ManifestError(f"line {n}: unknown key {key!r}")
        if key in _MULTI:
            multi[key].append(val)
        elif key in single:
            raise ManifestError(f"line {n}: duplicate key {key!r}")
        else:
            single[key] = val
        lines.setdefault(key, n)
    return single, multi, lines


def _yes(v: str, key: str) -> bool:
    v = v.strip().lower()
    if v in ("yes", "true", "1"):
        return True
    if v in ("no", "false", "0", ""):
        return False
    raise ManifestError(f"{key}: expected yes/no, got {v!r}")


def _comma(v: str) -> List[str]:
    return [s.strip() for s in v.split(",") if s.strip()]


def parse_sizes(v: str) -> Tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", v)
    if not m:
        raise ManifestError(f"sizes must look like 'a..b', got {v!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return lo, hi


def _groups(v: str) -> List[AxiomGroup]:
    out = []
    for name in re.findall(r"[^,(]+(?:\([^)]*\))?", v):
        name = name.strip()
        if not name:
            continue
        m = re.fullmatch(r"Isolated\(\{?([\d,\s]*)\}?\)", name)
        try:
            if m:
                out.append(AxiomGroup("Isolated", M=tuple(int(s) for s in _comma(m.group(1)))))
            elif name not in ("Gr", "Ax_R", "AxR"):
                out.append(AxiomGroup(name))
        except TheoryError as exc:
            raise ManifestError(str(exc)) from None
    return out


_CLOSURE = re.compile(r"(.+?)\s+in\s+cl\((.*)\)\s+(by|by-symmetry-of)\s+(\S+)\s*$")


def parse_manifest(text: str, base_dir: Optional[Path] = None, source: str = "") -> TaskSpec:
    single, multi, _ = _fields(text)
    if "id" not in single:
        raise ManifestError("manifest needs an id")
    tid = single["id"]
    try:
        return _build(tid, single, multi, base_dir, source)
    except ManifestError as exc:
        raise ManifestError(f"task {tid}: {exc}") from None
    except (TheoryError, PresentationSyntaxError, LadrSyntaxError, ValueError) as exc:
        raise ManifestError(f"task {tid}: {exc}") from None


def _presentation(single: Dict[str, str], base_dir: Optional[Path]) -> Presentation:
    if "presentation" in single and "presentation-file" in single:
        raise ManifestError("give either presentation or presentation-file")
    if "presentation" in single:
        return parse_presentation(single["presentation"])
    if "presentation-file" in single:
        path = Path(single["presentation-file"])
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ManifestError(f"cannot read presentation file {path}: {exc}") from None
        return parse_presentation(text, name=path.stem)
    raise ManifestError("manifest needs a presentation")


def _build(tid, single, multi, base_dir, source) -> TaskSpec:
    pres = _presentation(single, base_dir)
    gens = pres.generators

    def term(s: str) -> Term:
        return parse_term(s, gens)

    qkind = single.get("question", "Model")
    groups = _groups(single.get("groups", ""))
    lift = single.get("lift") or None
    items: List[Tuple[Term, ...]] = []
    for raw in single.get("statements", "").split(";"):
        raw = raw.strip()
        if not raw:
            continue
        parts = raw.split("!=") if "!=" in raw else raw.split(",")
        items.append(tuple(term(p) for p in parts))
    strict = single.get("strict")
    strict_index = int(strict) - 1 if strict else None
    if strict_index is not None and not 0 <= strict_index < len(items):
        raise ManifestError(f"strict index {strict} out of range")
    kind = {"order": "order", "circular": "circular", "cone-unary": "cone",
            "cone-binary": "cone"}.get(lift or "", "inequalities")
    statements = StatementSet.of(items, strict_index, kind)

    qterms = tuple(term(s) for s in _comma(single.get("terms", "")))
    gen_set: Tuple[Term, ...] = ()
    if qkind == "ClosureMembership":
        if "target" not in single:
            raise ManifestError("ClosureMembership needs a target")
        qterms = (term(single["target"]),)
        gen_set = tuple(term(s) for s in _comma(single.get("generating-set", "")))
    M: Tuple[int, ...] = ()
    iso = [g for g in groups if g.name == "Isolated"]
    if iso:
        M = iso[0].M
    question = Question(qkind, qterms, gen_set, M)

    extra: List[Clause] = []
    for k, raw in enumerate(multi["case"], 1):
        extra.append(parse_formula(raw, {"P": 1, "L": 2, "C": 3}, label=f"case_{k}"))
    theory = TheorySpec(pres, groups, statements, question, lift, extra,
                        single.get("ordering", "default"))
    theory.validate()

    deps = tuple(_comma(single.get("depends", "")))
    facts = []
    for raw in multi["closure"]:
        m = _CLOSURE.fullmatch(raw.strip())
        if not m:
            raise ManifestError(f"bad closure premise {raw!r}")
        facts.append(ClosureFact(term(m.group(1)), tuple(term(s) for s in _comma(m.group(2))),
                                 m.group(4), m.group(3) == "by-symmetry-of", raw.strip()))
    generated_by = tuple(term(s) for s in _comma(single.get("generated-by", "")))
    default_engine = "builtin-model" if qkind == "Model" else "builtin-prover"
    engine = single.get("engine", default_engine)
    expect = single.get("expect")
    if expect is not None and not re.fullmatch(r"refutation|model \d+", expect):
        raise ManifestError(f"expect must be 'refutation' or 'model N', got {expect!r}")
    program = single.get("program", "")
    if program not in ("", "prover9", "mace4"):
        raise ManifestError(f"unknown external program {program!r}")
    model_file = single.get("model-file", "")
    if model_file and base_dir is not None and not Path(model_file).is_absolute():
        model_file = str(base_dir / model_file)
    try:
        budget = float(single.get("budget-seconds", 120))
        max_clauses = int(single.get("max-clauses", 200_000))
    except ValueError as exc:
        raise ManifestError(str(exc)) from None
    return TaskSpec(
        id=single["id"], theory=theory, engine=engine, budget_seconds=budget,
        max_clauses=max_clauses, sizes=parse_sizes(single.get("sizes", "1..6")),
        dependencies=deps, closure=tuple(facts), generated_by=generated_by,
        case_siblings=tuple(_comma(single.get("case-siblings", ""))), program=program,
        model_file=model_file,
        external_only=_yes(single.get("external-only", "no"), "external-only"),
        trust_external=_yes(single.get("trust-external", "no"), "trust-external"),
        expect=expect, title=single.get("title", ""), notes=tuple(multi["note"]), source=source,
    )


def split_manifests(text: str) -> List[str]:
    chunks, cur = [], []
    for ln in text.splitlines():
        if ln.strip() == "---":
            chunks.append("\n".join(cur))
            cur = []
        else:
            cur.append(ln)
    chunks.append("\n".join(cur))
    return [c for c in chunks if any(ln.split("#", 1)[0].strip() for ln in c.splitlines())]


def load_manifests(path: Path) -> List[TaskSpec]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(f"cannot read {path}: {exc}") from None
    return [parse_manifest(c, path.parent, str(path)) for c in split_manifests(text)]


def cofinal_closure(t: Term, facts: Sequence[ClosureFact]) -> set:
    """Elements shown to lie in cl(t) by chaining the facts (cl is a closure operator)."""
    have = {t, E}
    changed = True
    while changed:
        changed = False
        for f in facts:
            if f.target not in have and all(g in have for g in f.generators):
                have.add(f.target)
                changed = True
    return have


def topological(specs: Sequence[TaskSpec]) -> List[TaskSpec]:
    """Dependency order (stable with respect to the input order); cycles are errors."""
    by_id = {s.id: s for s in specs}
    if len(by_id) != len(specs):
        raise ManifestError("duplicate task ids")
    out: List[TaskSpec] = []
    state: Dict[str, int] = {}

    def visit(s: TaskSpec, stack: Tuple[str, ...]):
        st = state.get(s.id)
        if st == 2:
            return
        if st == 1:
            raise ManifestError(f"dependency cycle: {' -> '.join(stack + (s.id,))}")
        state[s.id] = 1
        for d in s.dependencies:
            if d in by_id:
                visit(by_id[d], stack + (s.id,))
        state[s.id] = 2
        out.append(s)

    for s in specs:
        visit(s, ())
    return out
