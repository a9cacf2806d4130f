"""Graphviz rendering of an instance and, optionally, a solution.

Tree arcs are drawn solid and labelled with their index.  Each dipath is
overlaid as a chain of thin coloured edges along its arcs.  With a colouring
the overlay colour is the dipath's colour; cut arcs are drawn thick red;
packed or kernel dipaths are drawn bold and the rest dashed.
"""

from __future__ import annotations

from typing import Sequence

from .formats import Solution
from .tree import DirectedTree, Dipath

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def export_dot(tree: DirectedTree, paths: Sequence[Dipath], solution: Solution | None = None) -> str:
    cut = solution.cut if solution is not None else set()
    chosen: set[int] = set()
    if solution is not None:
        chosen = solution.packed if solution.kind == "multicut" else solution.kernel
    out = [
        "digraph dipaths {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="Helvetica"];',
        '  edge [fontname="Helvetica", fontsize=10];',
    ]
    out += [f"  v{v} [label=\"{v}\"];" for v in range(tree.n)]
    for a, (t, h) in enumerate(tree.arcs):
        if a in cut:
            out.append(f'  v{t} -> v{h} [color=red, penwidth=4, label="a{a} (cut)"];')
        else:
            out.append(f'  v{t} -> v{h} [penwidth=2, label="a{a}"];')
    for p in paths:
        if solution is not None and solution.kind == "coloring" and p.id in solution.color:
            colour = PALETTE[solution.color[p.id] % len(PALETTE)]
            note = f"P{p.id} c{solution.color[p.id]}"
        else:
            colour = PALETTE[p.id % len(PALETTE)]
            note = f"P{p.id}"
        if solution is None or solution.kind == "coloring":
            style = "solid"
        else:
            style = "bold" if p.id in chosen else "dashed"
        for k, (x, y) in enumerate(zip(p.vertices, p.vertices[1:])):
            label = f', label="{note}"' if k == 0 else ""
            out.append(
                f'  v{x} -> v{y} [color="{colour}", style={style}, arrowsize=0.5, constraint=false{label}];'
            )
    out.append("}")
    return "\n".join(out) + "\n"
