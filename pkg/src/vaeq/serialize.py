"""Versioned JSON formats for groups, equation systems, decompositions,
EDT0L systems, automata and growth reports.

Every document carries a ``schema`` field (``vaeq.<kind>/<version>``).
``dumps`` is deterministic: keys keep construction order, non-ASCII letters
are written verbatim, and ``dumps(load(dumps(x))) == dumps(x)``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .edt0l.closure import FiniteAutomaton
from .edt0l.construct import coordinate_letters
from .edt0l.core import Control, Edt0lSystem, Endomorphism, TripleSplit
from .equations import CosetDecomposition, GroupEquationSystem, LinearSystem, TwistedEquation, \
    TwistedSystem, VarOcc
from .group import GroupElement, GroupSpec, WeightedGeneratingSet
from .growth import GrowthReport, MultivariateTable
from .linalg_z import IntMatrix

GROUP = "vaeq.group/1"
SYSTEM = "vaeq.system/1"
DECOMPOSITION = "vaeq.decomposition/1"
EDT0L = "vaeq.edt0l/1"
AUTOMATON = "vaeq.automaton/1"
GROWTH = "vaeq.growth/1"
MGROWTH = "vaeq.mgrowth/1"


class SchemaError(ValueError):
    pass


def dumps(doc: dict) -> str:
    return _layout(doc, 0) + "\n"


def _flat(value) -> bool:
    if isinstance(value, dict):
        return False
    if isinstance(value, list):
        return all(_flat(v) for v in value)
    return True


def _layout(value, depth: int) -> str:
    # lists without dicts stay on one line when short; everything else nests
    one = json.dumps(value, ensure_ascii=False)
    if not isinstance(value, (dict, list)) or (_flat(value) and len(one) + 2 * depth <= 100):
        return one
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_layout(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if not value:
        return "[]"
    return "[\n" + ",\n".join(inner + _layout(v, depth + 1) for v in value) + "\n" + pad + "]"


def loads(text: str, schema: str | None = None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "schema" not in doc:
        raise SchemaError("document has no schema id")
    if schema is not None and doc["schema"] != schema:
        raise SchemaError(f"expected schema {schema}, found {doc['schema']}")
    return doc


def read(path, schema: str | None = None) -> dict:
    return loads(Path(path).read_text(encoding="utf-8"), schema)


def _need(doc: dict, key: str):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    return doc[key]


# elements and equations ------------------------------------------------------

_ELEMENT = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*;\s*(\d+)\s*\]$")
_VAR = re.compile(r"^X([1-9]\d*)(\^-1)?$")


def format_element(g: GroupElement) -> str:
    return f"[{', '.join(map(str, g.vector))}; {g.coset}]"


def parse_element(token: str) -> GroupElement:
    m = _ELEMENT.match(token.strip())
    if not m:
        raise SchemaError(f"bad group element {token!r}")
    vec = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
    return GroupElement(vec, int(m.group(2)))


def format_equation(eq) -> str:
    parts = []
    for it in eq:
        if isinstance(it, VarOcc):
            parts.append(f"X{it.index}" + ("^-1" if it.exponent == -1 else ""))
        else:
            parts.append(format_element(it))
    return " ".join(parts)


def parse_equation(text: str) -> tuple:
    items = []
    for tok in re.findall(r"\[[^\]]*\]|\S+", text):
        if tok.startswith("["):
            items.append(parse_element(tok))
            continue
        m = _VAR.match(tok)
        if not m:
            raise SchemaError(f"bad token {tok!r} in equation {text!r}")
        items.append(VarOcc(int(m.group(1)), -1 if m.group(2) else 1))
    return tuple(items)


# groups --------------------------------------------------------------------

def group_to_doc(spec: GroupSpec, gens: WeightedGeneratingSet | None = None) -> dict:
    doc = {
        "schema": GROUP,
        "rank": spec.rank,
        "coset_count": spec.coset_count,
        "transversal": list(spec.transversal_labels),
        "action": [m.to_rows() for m in spec.action],
        "cocycle_vectors": [[list(z) for z in row] for row in spec.cocycle_vectors],
        "cocycle_indices": [list(row) for row in spec.cocycle_indices],
    }
    if gens is not None:
        doc["generators"] = [{"name": n, "element": format_element(g), "weight": w}
                             for g, w, n in zip(gens.generators, gens.weights, gens.names)]
    return doc


def group_from_doc(doc: dict) -> tuple[GroupSpec, WeightedGeneratingSet]:
    """The spec and its generating set; without a ``generators`` field the
    coordinate generators and the transversal, all of weight 1, are used."""
    try:
        k = int(_need(doc, "rank"))
        spec = GroupSpec(
            rank=k,
            coset_count=int(_need(doc, "coset_count")),
            action=tuple(IntMatrix.from_rows(m, k) for m in _need(doc, "action")),
            cocycle_vectors=tuple(tuple(tuple(z) for z in row) for row in _need(doc, "cocycle_vectors")),
            cocycle_indices=tuple(tuple(row) for row in _need(doc, "cocycle_indices")),
            transversal_labels=tuple(doc.get("transversal", ())),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed group: {exc}") from exc
    if "generators" in doc:
        entries = doc["generators"]
        gens = [parse_element(e["element"]) for e in entries]
        if any(len(g.vector) != k for g in gens):
            raise SchemaError("generator of the wrong rank")
        return spec, WeightedGeneratingSet(tuple(gens), tuple(int(e.get("weight", 1)) for e in entries),
                                           tuple(e.get("name", f"s{i}") for i, e in enumerate(entries)))
    return spec, default_generators(spec)


def default_generators(spec: GroupSpec) -> WeightedGeneratingSet:
    k = spec.rank
    gens, names = [], []
    for i, (pos, _) in enumerate(coordinate_letters(k) if k else []):
        gens.append(GroupElement(tuple(1 if j == i else 0 for j in range(k)), 0))
        names.append(pos)
    for u in range(1, spec.coset_count):
        gens.append(GroupElement((0,) * k, u))
        names.append(spec.transversal_labels[u])
    return WeightedGeneratingSet.build(spec, gens, None, names)


# equation systems ------------------------------------------------------------

def system_to_doc(system: GroupEquationSystem) -> dict:
    return {"schema": SYSTEM, "num_vars": system.num_vars,
            "equations": [format_equation(eq) for eq in system.equations]}


def system_from_doc(doc: dict) -> GroupEquationSystem:
    try:
        return GroupEquationSystem(int(_need(doc, "num_vars")),
                                   tuple(parse_equation(e) for e in _need(doc, "equations")))
    except SchemaError:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed system: {exc}") from exc


def decomposition_to_doc(dec: CosetDecomposition) -> dict:
    pieces = []
    for cosets, (tw, lin) in dec.pieces.items():
        pieces.append({
            "cosets": list(cosets),
            "twisted": [{"coefficients": [m.to_rows() for m in eq.coefficients],
                         "constant": list(eq.constant)} for eq in tw.equations],
            "linear": {"num_vars": lin.num_vars, "matrix": lin.matrix.to_rows(),
                       "constant": list(lin.constant)},
        })
    return {"schema": DECOMPOSITION, "rank": dec.rank, "num_vars": dec.num_vars, "pieces": pieces}


def decomposition_from_doc(doc: dict) -> CosetDecomposition:
    k, n = int(_need(doc, "rank")), int(_need(doc, "num_vars"))
    pieces = {}
    for p in _need(doc, "pieces"):
        tw = TwistedSystem(k, n, tuple(
            TwistedEquation(tuple(IntMatrix.from_rows(m, k) for m in eq["coefficients"]), tuple(eq["constant"]))
            for eq in p["twisted"]))
        lin = p["linear"]
        size = len(lin["constant"])
        pieces[tuple(p["cosets"])] = (tw, LinearSystem(lin["num_vars"], IntMatrix.from_rows(lin["matrix"], size),
                                                       tuple(lin["constant"])))
    return CosetDecomposition(k, n, pieces)


# EDT0L systems and automata ---------------------------------------------------

def _endo_to_doc(e) -> dict:
    if isinstance(e, Endomorphism):
        return {"kind": "map", "images": {c: list(w) for c, w in sorted(e.images.items())}}
    return {"kind": "split", "base": _endo_to_doc(e.base), "states": list(e.states),
            "triples": {name: list(t) for name, t in e.triples.items()}, "dead": e.dead}


def _endo_from_doc(d: dict):
    kind = _need(d, "kind")
    if kind == "map":
        return Endomorphism({c: tuple(w) for c, w in _need(d, "images").items()})
    if kind == "split":
        return TripleSplit(_endo_from_doc(_need(d, "base")), tuple(_need(d, "states")),
                           {name: tuple(t) for name, t in _need(d, "triples").items()}, _need(d, "dead"))
    raise SchemaError(f"unknown endomorphism kind {kind!r}")


def edt0l_to_doc(h: Edt0lSystem) -> dict:
    return {
        "schema": EDT0L,
        "terminals": sorted(h.terminals),
        "extended": sorted(h.extended),
        "start": list(h.start),
        "endomorphisms": {name: _endo_to_doc(e) for name, e in h.endomorphisms.items()},
        "control": {
            "states": list(h.control.states),
            "start": h.control.start,
            "accepts": sorted(h.control.accepts),
            "edges": [list(e) for e in h.control.edges],
        },
    }


def edt0l_from_doc(doc: dict) -> Edt0lSystem:
    try:
        ctrl = _need(doc, "control")
        h = Edt0lSystem(
            frozenset(_need(doc, "terminals")), frozenset(_need(doc, "extended")), tuple(_need(doc, "start")),
            {name: _endo_from_doc(d) for name, d in _need(doc, "endomorphisms").items()},
            Control(tuple(ctrl["states"]), ctrl["start"], frozenset(ctrl["accepts"]),
                    tuple(tuple(e) for e in ctrl["edges"])))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed EDT0L system: {exc}") from exc
    return h


def automaton_to_doc(a: FiniteAutomaton) -> dict:
    return {"schema": AUTOMATON, "states": list(a.states), "start": a.start,
            "accepts": sorted(a.accepts), "transitions": sorted(list(t) for t in a.transitions)}


def automaton_from_doc(doc: dict) -> FiniteAutomaton:
    return FiniteAutomaton(tuple(_need(doc, "states")), _need(doc, "start"), frozenset(_need(doc, "accepts")),
                           frozenset(tuple(t) for t in _need(doc, "transitions")))


# growth ----------------------------------------------------------------------

def growth_to_doc(r: GrowthReport) -> dict:
    return {
        "schema": GROWTH,
        "status": r.status,
        "coefficients": list(r.coefficients),
        "order": r.order,
        "recurrence": [str(c) for c in r.recurrence],
        "numerator": list(r.numerator),
        "denominator": list(r.denominator),
        "fit_window": list(r.fit_window),
        "verify_window": list(r.verify_window),
        "mismatches": list(r.mismatches),
        "note": r.note,
    }


def growth_from_doc(doc: dict) -> GrowthReport:
    return GrowthReport(tuple(doc["coefficients"]), doc["order"], tuple(Fraction(c) for c in doc["recurrence"]),
                        tuple(doc["numerator"]), tuple(doc["denominator"]), tuple(doc["fit_window"]),
                        tuple(doc["verify_window"]), doc["status"], tuple(doc["mismatches"]), doc["note"])


def mgrowth_to_doc(t: MultivariateTable) -> dict:
    return {"schema": MGROWTH, "cap": t.cap, "note": t.note,
            "entries": [{"weights": list(w), "count": c} for w, c in t.counts.items()]}


def mgrowth_from_doc(doc: dict) -> MultivariateTable:
    return MultivariateTable(doc["cap"], {tuple(e["weights"]): e["count"] for e in doc["entries"]}, doc["note"])
