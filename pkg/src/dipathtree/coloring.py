"""Minimum colouring of dipaths so that dipaths sharing an arc differ."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bipartite import edge_color_extend
from .errors import InternalInvariantViolation
from .star import build_star_bipartite
from .tree import DirectedTree, Dipath, PathIndex, index_paths, root_tree


@dataclass(frozen=True)
class ColoringResult:
    color: dict[int, int]
    num_colors: int
    omega: int


def max_arc_load(index: PathIndex) -> int:
    return max((len(s) for s in index.by_arc), default=0)


def color_dipaths(
    tree: DirectedTree, paths: Sequence[Dipath], start: int = 0
) -> ColoringResult:
    """Colour with exactly ``max_arc_load`` colours.

    Vertices are visited breadth-first from ``start``.  When ``v`` is reached,
    every already coloured dipath through ``v`` also uses the arc to ``v``'s
    BFS father, so the precoloured edges of the star at ``v`` all meet that
    arc's vertex and the bipartite colouring can be extended around them.
    """
    rooted = root_tree(tree, start)
    index = index_paths(rooted, paths)
    omega = max_arc_load(index)
    color: dict[int, int] = {}
    for v in rooted.top_down:
        through = index.by_vertex[v]
        if not through:
            continue
        star = build_star_bipartite(tree, v, through, index)
        fixed = {star.edge_of_path[p]: color[p] for p in through if p in color}
        edge_colors = edge_color_extend(star, omega, fixed)
        for e, c in enumerate(edge_colors):
            color[star.labels[e]] = c
    if len(color) != len(paths):
        raise InternalInvariantViolation("some dipath was left uncoloured")
    used = len(set(color.values()))
    if used != omega:
        raise InternalInvariantViolation(f"{used} colours used, max arc load is {omega}")
    return ColoringResult(color, used, omega)
