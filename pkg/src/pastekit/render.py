"""DOT and SVG exports.

DOT output ranks elements by dimension and draws the oriented Hasse graph
(input-labelled edges reversed).  The SVG exporter lays a diagram of
dimension <= 2 out slice by slice in its canonical cell order; dashed wires
and nodeless cells mark basepoint labels.  Layout is best-effort; tests
assert labels and connectivity, never pixels.
"""
from __future__ import annotations

from typing import Mapping

from .ogp import Complex, MINUS, PLUS
from .orders import MaxdGraph, normal_order_of_subset
from .products import BASEPOINT, LabelledComplex


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(cx: Complex) -> str:
    lines = [f"digraph {_quote(cx.name)} {{", "  rankdir=BT;"]
    for n in range(cx.dim + 1):
        ids = cx.by_dim(n)
        if not ids:
            continue
        lines.append("  { rank=same; " + " ".join(_quote(x) + ";" for x in ids) + " }")
    adj = cx.oriented_hasse()
    for v in sorted(adj):
        for w in adj[v]:
            lines.append(f"  {_quote(v)} -> {_quote(w)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot_maxd(g: MaxdGraph, name: str = "maxd") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for v in g.low:
        lines.append(f"  {_quote(v)} [shape=ellipse];")
    for v in g.high:
        lines.append(f"  {_quote(v)} [shape=box];")
    for v in sorted(g.adjacency):
        for w in g.adjacency[v]:
            lines.append(f"  {_quote(v)} -> {_quote(w)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- string-diagram SVG ------------------------------------------------------------


def _wire_sequence(cx: Complex, wires: frozenset[str]) -> list[str]:
    """Order the 1-cells of a 1-dimensional closed subset along their path."""
    ones = [x for x in wires if cx.dim_of(x) == 1]
    if not ones:
        return []
    start = cx.boundary(wires, 0, MINUS)
    if len(start) != 1:
        raise ValueError("wire layer is not a single path")
    at = next(iter(start))
    by_source = {}
    for w in ones:
        src = [t for t, s in cx.covers(w) if s == MINUS]
        if len(src) != 1:
            raise ValueError("wire without a single source endpoint")
        by_source[src[0]] = w
    out = []
    for _ in ones:
        w = by_source[at]
        out.append(w)
        at = next(t for t, s in cx.covers(w) if s == PLUS)
    return out


def export_svg_2diagram(
    lc: LabelledComplex | Complex, names: Mapping[str, str] | None = None
) -> str:
    """Render a diagram of dimension <= 2 as a layered string diagram."""
    if isinstance(lc, Complex):
        lc = LabelledComplex(lc, {x: x for x in lc.elements()})
    cx = lc.shape
    if cx.dim > 2:
        raise ValueError("string diagrams render up to dimension 2")
    names = names or {}
    whole = cx.whole()
    cells = normal_order_of_subset(cx, whole) if cx.dim == 2 else ()
    layer = _wire_sequence(cx, cx.boundary(whole, 1, MINUS)) if cx.dim >= 1 else []
    layers = [layer]
    placements = []
    for cell in cells:
        cl = cx.closure([cell])
        ins = _wire_sequence(cx, cx.boundary(cl, 1, MINUS))
        outs = _wire_sequence(cx, cx.boundary(cl, 1, PLUS))
        if ins:
            pos = layer.index(ins[0])
        else:
            pos = len(layer)
        if layer[pos : pos + len(ins)] != ins:
            raise ValueError(f"cell {cell!r} inputs are not contiguous in the layer")
        layer = layer[:pos] + outs + layer[pos + len(ins) :]
        placements.append((cell, pos, len(ins), len(outs)))
        layers.append(layer)
    xstep, ystep, pad = 40, 50, 20
    width = pad * 2 + xstep * max((len(l) for l in layers), default=1)
    height = pad * 2 + ystep * max(len(placements), 1)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
    ]

    def wx(i: int) -> int:
        return pad + xstep // 2 + i * xstep

    y = pad
    for level, (cell, pos, n_in, n_out) in enumerate(placements):
        y0 = pad + level * ystep
        y1 = y0 + ystep
        cx_mid = wx(pos) + (max(n_in, n_out, 1) - 1) * xstep // 2
        before = layers[level]
        after = layers[level + 1]
        for i, w in enumerate(before):
            dash = ' stroke-dasharray="4 3"' if lc.labels[w] == BASEPOINT else ""
            x0 = wx(i)
            x1 = cx_mid if pos <= i < pos + n_in else wx(after.index(w))
            parts.append(
                f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{(y0 + y1) // 2 if pos <= i < pos + n_in else y1}" stroke="black"{dash}/>'
            )
        for j, w in enumerate(after[pos : pos + n_out], start=pos):
            dash = ' stroke-dasharray="4 3"' if lc.labels[w] == BASEPOINT else ""
            parts.append(
                f'<line x1="{cx_mid}" y1="{(y0 + y1) // 2}" x2="{wx(j)}" y2="{y1}" stroke="black"{dash}/>'
            )
        label = lc.labels[cell]
        if label != BASEPOINT:
            parts.append(
                f'<circle cx="{cx_mid}" cy="{(y0 + y1) // 2}" r="5" fill="black"/>'
            )
            parts.append(
                f'<text x="{cx_mid + 8}" y="{(y0 + y1) // 2 + 4}" font-size="12">'
                f"{names.get(label, label)}</text>"
            )
        y = y1
    if not placements:
        for i, w in enumerate(layers[0]):
            dash = ' stroke-dasharray="4 3"' if lc.labels[w] == BASEPOINT else ""
            parts.append(
                f'<line x1="{wx(i)}" y1="{pad}" x2="{wx(i)}" y2="{height - pad}" stroke="black"{dash}/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
