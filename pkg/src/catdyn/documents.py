"""JSON system documents: schema checks, loading, and canonical labels."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .core import LawReport, Morphism, ObjectRef, TimeObject, time_object_laws
from .dynamics import PreFlow, validate_flow
from .finset import FINSET, FiniteMonoid, MonoidError, finset, morphism, product, unit


class InputError(ValueError):
    """The document cannot be read or does not describe a system."""


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("catdyn").joinpath("schema/system.schema.json").read_text("utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class SystemDocument:
    name: str
    elements: tuple[str, ...]
    table: dict
    unit: str
    states: tuple[str, ...]
    flow: dict
    morphisms: dict = field(default_factory=dict)

    def monoid_section(self) -> dict:
        return {"elements": list(self.elements), "table": self.table, "unit": self.unit}


def parse_document(text: str, name: str = "system") -> SystemDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None
    return document_from_dict(raw, name)


def read_document(path) -> SystemDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return parse_document(text, name=str(path).rsplit("/", 1)[-1].removesuffix(".json"))


def _total(tbl: dict, rows, cols, values, what: str) -> None:
    if set(tbl) != set(rows):
        raise InputError(f"{what}: rows must be exactly {sorted(rows)}")
    for r, row in tbl.items():
        if set(row) != set(cols):
            raise InputError(f"{what}[{r}]: entries must be exactly {sorted(cols)}")
        for c, v in row.items():
            if v not in values:
                raise InputError(f"{what}[{r}][{c}] = {v!r} is not declared")


def document_from_dict(raw: Any, name: str = "system") -> SystemDocument:
    try:
        jsonschema.validate(raw, schema())
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {e.message}") from None
    m = raw["monoid"]
    els, states = tuple(m["elements"]), tuple(raw["omega"]["elements"])
    if m["unit"] not in els:
        raise InputError(f"monoid unit {m['unit']!r} is not declared")
    _total(m["table"], els, els, els, "monoid.table")
    _total(raw["flow"], els, states, states, "flow")
    maps = {}
    for key, spec in raw.get("morphisms", {}).items():
        tbl = spec["table"]
        if set(tbl) != set(states) or any(v not in states for v in tbl.values()):
            raise InputError(f"morphisms.{key}: must be a total map omega -> omega")
        maps[key] = tbl
    return SystemDocument(raw.get("name", name), els, m["table"], m["unit"], states,
                          raw["flow"], maps)


def document_to_dict(doc: SystemDocument) -> dict:
    out = {"name": doc.name, "monoid": doc.monoid_section(),
           "omega": {"elements": list(doc.states)}, "flow": doc.flow}
    if doc.morphisms:
        out["morphisms"] = {k: {"table": v} for k, v in doc.morphisms.items()}
    return out


# --------------------------------------------------------------------------
# building backend objects


def raw_time_object(doc: SystemDocument) -> TimeObject:
    """The (possibly lawless) monoid object of the table, for law checking."""
    t = finset(doc.elements)
    add = morphism(product(t, t), t, lambda st: doc.table[st[0]][st[1]])
    start = morphism(unit(), t, [doc.unit])
    key = ("raw", doc.elements, tuple(tuple(doc.table[s][u] for u in doc.elements) for s in doc.elements))
    return TimeObject(key, t, add, start)


def monoid_of(doc: SystemDocument) -> FiniteMonoid | None:
    try:
        return FiniteMonoid(doc.elements, doc.table, doc.unit)
    except MonoidError:
        return None


def preflow_of(doc: SystemDocument, m: FiniteMonoid) -> PreFlow:
    time = m.as_time_object()
    omega = finset(doc.states)
    phi = morphism(product(time.obj, omega), omega, lambda tx: doc.flow[tx[0]][tx[1]])
    return PreFlow(time, omega, phi)


def endomap(doc: SystemDocument, omega: ObjectRef, key: str) -> Morphism:
    return morphism(omega, omega, doc.morphisms[key])


def system_laws(doc: SystemDocument) -> tuple[list[LawReport], PreFlow | None]:
    """Monoid laws on the raw table, then flow laws when the monoid is lawful."""
    laws = list(time_object_laws(raw_time_object(doc)).parts)
    m = monoid_of(doc)
    if m is None:
        return laws, None
    pf = preflow_of(doc, m)
    laws.extend(validate_flow(pf).parts)
    return laws, pf


# --------------------------------------------------------------------------
# canonical labels


def label(obj: ObjectRef, x) -> str:
    """Stable text for an element: paths render as p[t0→x,t1→y,...]."""
    d = obj.descriptor
    if obj.is_hom:
        src, tgt = obj.source(), obj.target()
        pairs = zip(FINSET.carrier(src), x)
        return "p[" + ",".join(f"{label(src, s)}→{label(tgt, v)}" for s, v in pairs) + "]"
    if obj.is_tensor:
        return "(" + ",".join(flat_labels(obj, x)) + ")"
    if d == FINSET.unit().descriptor:
        return "•"
    return x if isinstance(x, str) else str(x)


def flat_labels(obj: ObjectRef, x) -> list[str]:
    """Labels of the non-unit components of an element, left to right."""
    if obj.is_tensor:
        return flat_labels(obj.left(), x[0]) + flat_labels(obj.right(), x[1])
    if obj.descriptor == FINSET.unit().descriptor:
        return []
    return [label(obj, x)]


def law_entry(r: LawReport) -> dict:
    cx = None
    if r.counterexample is not None:
        cx = flat_labels(r.domain, r.counterexample) if r.domain is not None else [str(r.counterexample)]
    return {"law": r.law_name, "holds": bool(r.holds), "counterexample": cx}


def flow_table(f: PreFlow, render=None) -> dict:
    """{t: {x: Φ(t,x)}} with rendered labels."""
    render = render or (lambda o, x: label(o, x))
    t_obj, o = f.time.obj, f.omega
    ts, xs = FINSET.carrier(t_obj), FINSET.carrier(o)
    n = len(xs)
    out = {}
    for i, t in enumerate(ts):
        row = f.phi.payload[i * n:(i + 1) * n]
        out[render(t_obj, t)] = {render(o, x): render(o, FINSET.element_at(o, j)) for x, j in zip(xs, row)}
    return out


def derived_document(name: str, source: SystemDocument, f: PreFlow, render=None) -> dict:
    """A re-ingestable document for a derived flow over the same monoid."""
    render = render or (lambda o, x: label(o, x))
    return {
        "name": name,
        "monoid": source.monoid_section(),
        "omega": {"elements": [render(f.omega, x) for x in FINSET.carrier(f.omega)]},
        "flow": flow_table(f, render),
    }
