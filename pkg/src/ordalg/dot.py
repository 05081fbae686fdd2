"""Graphviz output for finite orders: Hasse diagrams drawn bottom to top."""

from __future__ import annotations

from typing import Callable

from .finposet import FinPreorder


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(P: FinPreorder, name: str = "P", *, closure: bool = False,
           label: Callable[[object], str] = str) -> str:
    """Covering edges by default; every strict pair with ``closure``."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, x in enumerate(P.elements):
        lines.append(f"  n{i} [label={_quote(label(x))}];")
    if closure:
        m = P.matrix
        edges = [(i, j) for i in range(len(P)) for j in range(len(P)) if i != j and m[i, j]]
    else:
        edges = [(P.index(a), P.index(b)) for a, b in P.hasse_edges()]
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
