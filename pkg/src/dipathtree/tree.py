"""Directed trees, dipaths and the per-vertex / per-arc path indices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadVertexId,
    DuplicateArc,
    EmptyDipath,
    NotADipath,
    NotATree,
    PathTreeMismatch,
    SelfLoop,
)
from .instrument import current


@dataclass(frozen=True)
class DirectedTree:
    """A tree on vertices ``0..n-1`` whose ``n-1`` edges carry an orientation.

    ``adjacency[v]`` lists ``(arc_id, neighbour, outgoing)`` where ``outgoing``
    is true when the arc points from ``v`` to the neighbour.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int, bool], ...], ...] = field(repr=False)
    _arc_of: dict[tuple[int, int], int] = field(repr=False, compare=False)

    def arc_between(self, u: int, v: int) -> int | None:
        """Id of the arc joining ``u`` and ``v`` in either direction."""
        return self._arc_of.get((u, v) if u < v else (v, u))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def out_neighbours(self, v: int) -> list[int]:
        return [w for _, w, out in self.adjacency[v] if out]


def build_tree(n: int, arcs: Iterable[tuple[int, int]]) -> DirectedTree:
    """Validate ``arcs`` as the oriented edges of a tree on ``n`` vertices."""
    arcs = tuple((int(t), int(h)) for t, h in arcs)
    if n < 1:
        raise NotATree("a tree needs at least one vertex")
    arc_of: dict[tuple[int, int], int] = {}
    adjacency: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, (t, h) in enumerate(arcs):
        for x in (t, h):
            if not 0 <= x < n:
                raise BadVertexId(f"arc {a} ({t}, {h}): vertex {x} not in 0..{n - 1}")
        if t == h:
            raise SelfLoop(f"arc {a} is a loop at vertex {t}")
        key = (t, h) if t < h else (h, t)
        if key in arc_of:
            raise DuplicateArc(f"arc {a} ({t}, {h}) repeats arc {arc_of[key]}")
        arc_of[key] = a
        rt, rh = find(t), find(h)
        if rt == rh:
            raise NotATree(f"arc {a} ({t}, {h}) closes a cycle")
        parent[rt] = rh
        adjacency[t].append((a, h, True))
        adjacency[h].append((a, t, False))
    if len(arcs) != n - 1:
        raise NotATree(f"{n} vertices need {n - 1} arcs, got {len(arcs)}")
    return DirectedTree(n, arcs, tuple(tuple(adj) for adj in adjacency), arc_of)


@dataclass(frozen=True)
class Dipath:
    """A direction-respecting path; ``arcs[i]`` joins ``vertices[i]`` to ``vertices[i+1]``."""

    id: int
    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def sink(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.arcs)


def make_dipath(tree: DirectedTree, vertices: Sequence[int], id: int = 0) -> Dipath:
    vertices = tuple(int(v) for v in vertices)
    if len(vertices) < 2:
        raise EmptyDipath(f"dipath {id} has no arc")
    for v in vertices:
        if not 0 <= v < tree.n:
            raise BadVertexId(f"dipath {id}: vertex {v} not in 0..{tree.n - 1}")
    if len(set(vertices)) != len(vertices):
        raise NotADipath(f"dipath {id} visits a vertex twice")
    arcs = []
    for x, y in zip(vertices, vertices[1:]):
        a = tree.arc_between(x, y)
        if a is None:
            raise NotADipath(f"dipath {id}: no tree arc between {x} and {y}")
        if tree.arcs[a] != (x, y):
            raise NotADipath(f"dipath {id}: arc {a} is oriented {y}->{x}")
        arcs.append(a)
    return Dipath(id, vertices, tuple(arcs))


def resolve_dipath(tree: DirectedTree, source: int, sink: int, id: int = 0) -> Dipath:
    """The unique tree path from ``source`` to ``sink``, provided it is directed."""
    for x in (source, sink):
        if not 0 <= x < tree.n:
            raise BadVertexId(f"vertex {x} not in 0..{tree.n - 1}")
    if source == sink:
        raise EmptyDipath(f"dipath {id} has no arc (source == sink == {source})")
    back = {source: source}
    queue = deque([source])
    while sink not in back:
        x = queue.popleft()
        for _, y, _ in tree.adjacency[x]:
            if y not in back:
                back[y] = x
                queue.append(y)
    walk = [sink]
    while walk[-1] != source:
        walk.append(back[walk[-1]])
    walk.reverse()
    return make_dipath(tree, walk, id)


def make_paths(tree: DirectedTree, specs: Iterable[Sequence[int]]) -> list[Dipath]:
    """Dipaths numbered by position; a 2-element entry is read as ``(source, sink)``."""
    paths = []
    for i, entry in enumerate(specs):
        if len(entry) == 2 and tree.arc_between(entry[0], entry[1]) is None:
            paths.append(resolve_dipath(tree, entry[0], entry[1], i))
        else:
            paths.append(make_dipath(tree, entry, i))
    return paths


@dataclass(frozen=True)
class RootedTree:
    base: DirectedTree
    root: int
    father: tuple[int | None, ...]
    father_arc: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    """Bottom-up: every vertex appears after all of its children."""
    depth: tuple[int, ...]

    @property
    def top_down(self) -> tuple[int, ...]:
        return self.order[::-1]


def root_tree(tree: DirectedTree, r: int = 0) -> RootedTree:
    if not 0 <= r < tree.n:
        raise BadVertexId(f"root {r} not in 0..{tree.n - 1}")
    father: list[int | None] = [None] * tree.n
    father_arc: list[int | None] = [None] * tree.n
    depth = [0] * tree.n
    children: list[list[int]] = [[] for _ in range(tree.n)]
    bfs = [r]
    seen = [False] * tree.n
    seen[r] = True
    for x in bfs:
        for a, y, _ in tree.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                father[y] = x
                father_arc[y] = a
                depth[y] = depth[x] + 1
                children[x].append(y)
                bfs.append(y)
    return RootedTree(
        tree,
        r,
        tuple(father),
        tuple(father_arc),
        tuple(tuple(c) for c in children),
        tuple(reversed(bfs)),
        tuple(depth),
    )


@dataclass(frozen=True)
class PathIndex:
    """Which dipaths use which vertices and arcs.

    ``crossings[v]`` holds ``(path_id, in_arc, out_arc)`` for every dipath
    through ``v``; ``in_arc`` is ``None`` when the dipath starts at ``v`` and
    ``out_arc`` is ``None`` when it ends there.  ``q_sets[v]`` is the set of
    dipaths using the arc between ``v`` and its father (empty at the root).
    """

    rooted: RootedTree
    paths: tuple[Dipath, ...]
    by_vertex: tuple[frozenset[int], ...]
    by_arc: tuple[frozenset[int], ...]
    q_sets: tuple[frozenset[int], ...]
    crossings: tuple[tuple[tuple[int, int | None, int | None], ...], ...] = field(repr=False)

    @property
    def tree(self) -> DirectedTree:
        return self.rooted.base


def index_paths(rooted: RootedTree, paths: Sequence[Dipath]) -> PathIndex:
    tree = rooted.base
    ops = current()
    crossings: list[list[tuple[int, int | None, int | None]]] = [[] for _ in range(tree.n)]
    by_arc: list[list[int]] = [[] for _ in range(tree.n - 1)]
    for i, p in enumerate(paths):
        if p.id != i:
            raise PathTreeMismatch(f"dipath at position {i} has id {p.id}")
        if len(p.vertices) != len(p.arcs) + 1 or not p.arcs:
            raise PathTreeMismatch(f"dipath {i} is malformed")
        for k, a in enumerate(p.arcs):
            if not 0 <= a < tree.n - 1 or tree.arcs[a] != (p.vertices[k], p.vertices[k + 1]):
                raise PathTreeMismatch(f"dipath {i}: step {k} does not follow a tree arc")
            by_arc[a].append(i)
        last = len(p.arcs)
        for k, v in enumerate(p.vertices):
            crossings[v].append(
                (i, p.arcs[k - 1] if k > 0 else None, p.arcs[k] if k < last else None)
            )
        if ops is not None:
            ops.steps += 2 * last + 1
    by_arc_sets = tuple(frozenset(s) for s in by_arc)
    q_sets = tuple(
        frozenset() if a is None else by_arc_sets[a] for a in rooted.father_arc
    )
    return PathIndex(
        rooted,
        tuple(paths),
        tuple(frozenset(pid for pid, _, _ in c) for c in crossings),
        by_arc_sets,
        q_sets,
        tuple(tuple(c) for c in crossings),
    )


def work_bound(index: PathIndex, power: int = 1) -> int:
    """``sum_v deg(v) * |P_v| ** power``, the per-star cost scale."""
    tree = index.tree
    return sum(tree.degree(v) * len(index.by_vertex[v]) ** power for v in range(tree.n))
