"""Encoding of the dipaths through one vertex as a bipartite multigraph.

At a centre ``v`` each neighbour arc becomes a vertex: arcs entering ``v`` on
the left, arcs leaving ``v`` on the right.  A dipath through ``v`` becomes the
edge joining its in-arc to its out-arc.  A dipath starting (ending) at ``v``
gets a private dummy left (right) endpoint, so dummies never tie two dipaths
together.  Dipaths sharing an arc of the star are exactly edges sharing a
vertex.
"""

from __future__ import annotations

from typing import Iterable

from .bipartite import LEFT, RIGHT, BipartiteMultigraph
from .errors import PathNotThroughCenter
from .instrument import current
from .tree import DirectedTree, PathIndex

__all__ = ["BipartiteMultigraph", "StarGraph", "build_star_bipartite"]


class StarGraph(BipartiteMultigraph):
    """A star reduction; vertex keys are arc ids, ``None`` for dummies.

    ``vertex_of_arc`` maps each arc seen at the centre to its vertex and
    ``edge_of_path`` maps dipath ids to edge ids.
    """

    def __init__(self, center: int) -> None:
        super().__init__()
        self.center = center
        self.vertex_of_arc: dict[int, int] = {}
        self.edge_of_path: dict[int, int] = {}

    def arc_vertex(self, arc: int, side: bool) -> int:
        v = self.vertex_of_arc.get(arc)
        if v is None:
            v = self.vertex_of_arc[arc] = self.add_vertex(side, arc)
        return v

    def edge_subgraph(self, keep: Iterable[int]) -> StarGraph:
        sub = StarGraph(self.center)
        sub.side = list(self.side)
        sub.key = list(self.key)
        sub.adj = [[] for _ in self.side]
        sub.vertex_of_arc = dict(self.vertex_of_arc)
        for e in keep:
            f = sub.add_edge(*self.edges[e], self.labels[e])
            sub.edge_of_path[self.labels[e]] = f
        return sub


def build_star_bipartite(
    tree: DirectedTree,
    center: int,
    path_ids: Iterable[int],
    index: PathIndex,
    anchor_arc: int | None = None,
) -> StarGraph:
    """Bipartite multigraph of the dipaths ``path_ids`` restricted to the star at ``center``.

    Edges are created in the order of ``index.crossings[center]``, so the
    result does not depend on the iteration order of ``path_ids``.  If
    ``anchor_arc`` is given its vertex is created even when no edge uses it.
    """
    wanted = set(path_ids)
    star = StarGraph(center)
    if anchor_arc is not None:
        t, _ = tree.arcs[anchor_arc]
        star.arc_vertex(anchor_arc, RIGHT if t == center else LEFT)
    found = 0
    for pid, a_in, a_out in index.crossings[center]:
        if pid not in wanted:
            continue
        found += 1
        left = star.add_vertex(LEFT) if a_in is None else star.arc_vertex(a_in, LEFT)
        right = star.add_vertex(RIGHT) if a_out is None else star.arc_vertex(a_out, RIGHT)
        star.edge_of_path[pid] = star.add_edge(left, right, pid)
    if found != len(wanted):
        missing = sorted(wanted - set(star.edge_of_path))
        raise PathNotThroughCenter(f"dipaths {missing} do not pass through vertex {center}")
    ops = current()
    if ops is not None:
        ops.steps += len(index.crossings[center]) + 1
    return star
