"""Canonical JSON forms for complexes, presentations, and expressions.

Serialization is deterministic: element ids and covers are sorted, key
order is fixed, and reserialising a parsed document reproduces it byte for
byte.  Optional ``comment`` and ``names`` fields survive round trips.
"""
from __future__ import annotations

import json
from typing import Any, Mapping

from .ogp import Complex, SIGNS
from .products import LabelledComplex
from .theories import (
    Braid,
    BraidInv,
    DiagCell,
    DiagComplexPresentation,
    GenOp,
    GenRef,
    Layered2Cell,
    ProPresentation,
    Relation,
    Slice,
)
from .graycat import GenApp, GrayExpr3, Interchange, TwoCellNF


class ParseError(ValueError):
    pass


def _dump(doc: Any) -> bytes:
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


# -- complexes -------------------------------------------------------------------


def complex_to_doc(cx: Complex, extra: Mapping[str, Any] | None = None) -> dict:
    doc: dict[str, Any] = {"name": cx.name}
    if extra:
        for key in ("comment", "names", "labels"):
            if key in extra:
                doc[key] = extra[key]
    doc["elements"] = [
        {
            "id": x,
            "dim": cx.dim_of(x),
            "covers": [
                {"id": t, "sign": s} for t, s in sorted(cx.covers(x))
            ],
        }
        for x in cx.elements()
    ]
    return doc


def serialize_complex(cx: Complex, extra: Mapping[str, Any] | None = None) -> bytes:
    return _dump(complex_to_doc(cx, extra))


def complex_from_doc(doc: Any) -> tuple[Complex, dict[str, Any]]:
    if not isinstance(doc, dict) or "elements" not in doc:
        raise ParseError("expected an object with an 'elements' list")
    name = doc.get("name", "complex")
    table = {}
    for entry in doc["elements"]:
        try:
            eid = entry["id"]
            dim = entry["dim"]
            covers = [(c["id"], c["sign"]) for c in entry.get("covers", [])]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"malformed element entry {entry!r}") from exc
        if not isinstance(eid, str) or not isinstance(dim, int):
            raise ParseError(f"malformed element entry {entry!r}")
        if any(s not in SIGNS for _, s in covers):
            raise ParseError(f"bad sign in covers of {eid!r}")
        if eid in table:
            raise ParseError(f"duplicate element id {eid!r}")
        table[eid] = (dim, covers)
    extra = {k: doc[k] for k in ("comment", "names", "labels") if k in doc}
    return Complex(name, table), extra


def parse_complex(data: bytes | str) -> tuple[Complex, dict[str, Any]]:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return complex_from_doc(doc)


def serialize_labelled(lc: LabelledComplex, extra: Mapping[str, Any] | None = None) -> bytes:
    merged = dict(extra or {})
    merged["labels"] = {x: lc.labels[x] for x in lc.shape.elements()}
    return _dump(complex_to_doc(lc.shape, merged))


def parse_labelled(data: bytes | str) -> LabelledComplex:
    cx, extra = parse_complex(data)
    labels = extra.get("labels")
    if labels is None:
        raise ParseError("labelled complex needs a 'labels' map")
    return LabelledComplex(cx, dict(labels))


# -- presentations ---------------------------------------------------------------


def _slice_to_doc(s: Slice) -> dict:
    if isinstance(s.op, GenRef):
        op: dict[str, Any] = {"gen": s.op.name}
    elif isinstance(s.op, Braid):
        op = {"braid": [s.op.a, s.op.b]}
    else:
        op = {"braidInv": [s.op.a, s.op.b]}
    return {"pre": list(s.pre), "op": op, "post": list(s.post)}


def _slice_from_doc(doc: Any) -> Slice:
    try:
        op_doc = doc["op"]
        if "gen" in op_doc:
            op: Any = GenRef(op_doc["gen"])
        elif "braid" in op_doc:
            op = Braid(*op_doc["braid"])
        elif "braidInv" in op_doc:
            op = BraidInv(*op_doc["braidInv"])
        else:
            raise ParseError(f"unknown op {op_doc!r}")
        return Slice(tuple(doc["pre"]), op, tuple(doc["post"]))
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed slice {doc!r}") from exc


def _cell_to_doc(c: Layered2Cell) -> dict:
    return {"source": list(c.source), "slices": [_slice_to_doc(s) for s in c.slices]}


def _cell_from_doc(doc: Any) -> Layered2Cell:
    try:
        return Layered2Cell(
            tuple(doc["source"]), tuple(_slice_from_doc(s) for s in doc["slices"])
        )
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed layered cell {doc!r}") from exc


def serialize_presentation(p: ProPresentation) -> bytes:
    doc = {
        "name": p.name,
        "sorts": list(p.sorts),
        "generators": [
            {"name": g.name, "in": list(g.inputs), "out": list(g.outputs)}
            for g in p.generators
        ],
        "relations": [
            {"name": r.name, "lhs": _cell_to_doc(r.lhs), "rhs": _cell_to_doc(r.rhs)}
            for r in p.relations
        ],
        "flags": {"braided": p.braided, "symmetric": p.symmetric},
    }
    return _dump(doc)


def parse_presentation(data: bytes | str) -> ProPresentation:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    try:
        gens = tuple(
            GenOp(g["name"], tuple(g["in"]), tuple(g["out"])) for g in doc["generators"]
        )
        rels = tuple(
            Relation(
                r.get("name", f"r{i}"),
                _cell_from_doc(r["lhs"]),
                _cell_from_doc(r["rhs"]),
            )
            for i, r in enumerate(doc.get("relations", []))
        )
        flags = doc.get("flags", {})
        p = ProPresentation(
            doc.get("name", "theory"),
            tuple(doc["sorts"]),
            gens,
            rels,
            bool(flags.get("braided", False)),
            bool(flags.get("symmetric", False)),
        )
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed presentation: {exc}") from exc
    p.check_relations()
    return p


def serialize_diag_presentation(p: DiagComplexPresentation) -> bytes:
    doc = {
        "name": p.name,
        "cells": [
            {
                "name": c.name,
                "dim": c.dim,
                "shape": complex_to_doc(
                    c.cell.shape, {"labels": {x: c.cell.labels[x] for x in c.cell.shape.elements()}}
                ),
            }
            for c in p.cells
        ],
    }
    return _dump(doc)


def parse_diag_presentation(data: bytes | str) -> DiagComplexPresentation:
    try:
        doc = json.loads(data)
        cells = []
        for c in doc["cells"]:
            shape, extra = complex_from_doc(c["shape"])
            cells.append(
                DiagCell(c["name"], c["dim"], LabelledComplex(shape, dict(extra["labels"])))
            )
        return DiagComplexPresentation(doc.get("name", "presentation"), tuple(cells))
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed diagrammatic presentation: {exc}") from exc


# -- expressions -----------------------------------------------------------------


def serialize_expr(e: GrayExpr3) -> bytes:
    steps = []
    for s in e.steps:
        if isinstance(s, Interchange):
            steps.append(
                {"interchange": {"pos": s.pos, "dir": s.direction, "pair": list(s.pair)}}
            )
        else:
            steps.append(
                {"apply": {"atom": s.atom, "pre": list(s.pre), "post": list(s.post)}}
            )
    doc = {
        "source": {"support": sorted(e.source.support), "order": list(e.source.order)},
        "steps": steps,
    }
    return _dump(doc)


def parse_expr(data: bytes | str, cx: Complex) -> GrayExpr3:
    try:
        doc = json.loads(data)
        src = TwoCellNF(
            frozenset(doc["source"]["support"]), tuple(doc["source"]["order"])
        )
        steps: list[Any] = []
        for s in doc["steps"]:
            if "interchange" in s:
                i = s["interchange"]
                steps.append(Interchange(i["pos"], i["dir"], tuple(i["pair"])))
            else:
                a = s["apply"]
                steps.append(GenApp(a["atom"], tuple(a["pre"]), tuple(a["post"])))
        return GrayExpr3(cx, src, tuple(steps))
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed expression: {exc}") from exc
