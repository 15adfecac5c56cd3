"""Deterministic text serializations of Coxeter diagrams: DOT, JSON, ASCII.

Identical inputs must produce identical bytes; everything is sorted and no
environment-dependent content is emitted.
"""

from __future__ import annotations

import json

from .vinberg import CoxeterDiagram

_BOND_GLYPH = {
    "single": "---",
    "double": "===",
    "triple": "≡≡≡",
    "parallel": "-inf-",
    "ultraparallel": "...",
}

_DOT_ATTRS = {
    "single": 'color="black"',
    "double": 'color="black:black"',
    "triple": 'color="black:black:black"',
    "parallel": 'color="black", label="inf"',
    "ultraparallel": 'color="black", style="dashed"',
}


def diagram_to_json(diagram, name=None):
    obj = diagram.to_json()
    if name:
        obj["name"] = name
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def diagram_from_json(text):
    return CoxeterDiagram.from_json(json.loads(text))


def diagram_to_dot(diagram, name="diagram"):
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, q in enumerate(diagram.norms):
        lines.append(f'  n{i + 1} [label="{q}"];')
    for i, j, bond in diagram.edges:
        lines.append(f"  n{i + 1} -- n{j + 1} [{_DOT_ATTRS[bond]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_to_ascii(diagram, name="diagram"):
    lines = [f"{name}: {len(diagram)} nodes"]
    lines.append("nodes: " + "  ".join(
        f"n{i + 1}[{q}]" for i, q in enumerate(diagram.norms)))
    if diagram.edges:
        lines.append("bonds:")
        for i, j, bond in diagram.edges:
            lines.append(f"  n{i + 1} {_BOND_GLYPH[bond]} n{j + 1}   ({bond})")
    else:
        lines.append("bonds: none")
    return "\n".join(lines) + "\n"


def roots_table(roots):
    lines = ["idx  norm  height  coords"]
    for k, r in enumerate(roots):
        lines.append(f"r{k + 1}   {r.norm}   {r.height}   {list(r.coords)}")
    return "\n".join(lines) + "\n"
