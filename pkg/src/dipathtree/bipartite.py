"""Bipartite multigraph primitives.

Vertices are integers ``0..V-1`` each tagged with a side; edges are stored as
``(left, right)`` pairs and may be parallel.  Every edge carries a label (the
dipath it stands for in the star reduction); preference orders are expressed
on labels so that edge subgraphs can reuse them unchanged.

Provided here: proper edge colouring with a precoloured star, maximum
matchings (optionally through a forced edge), Koenig vertex covers including
the anchored variant with the two guarantees needed by the multicut pass,
maximum-matching membership, and deferred-acceptance stable matchings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    AnchorNotInEveryMaxMatching,
    EdgeNotIncident,
    EdgeNotInGraph,
    PaletteTooSmall,
    PrecoloringConflict,
    PrecoloringNotStarShaped,
)
from .instrument import current

LEFT, RIGHT = False, True


class BipartiteMultigraph:
    """Two-sided multigraph; treat as immutable once built."""

    def __init__(self) -> None:
        self.side: list[bool] = []
        self.key: list[Hashable | None] = []
        self.edges: list[tuple[int, int]] = []
        self.labels: list[int] = []
        self.adj: list[list[int]] = []

    def add_vertex(self, side: bool, key: Hashable | None = None) -> int:
        self.side.append(side)
        self.key.append(key)
        self.adj.append([])
        return len(self.side) - 1

    def add_edge(self, left: int, right: int, label: int | None = None) -> int:
        if self.side[left] is not LEFT or self.side[right] is not RIGHT:
            raise ValueError(f"edge ({left}, {right}) must join a left to a right vertex")
        e = len(self.edges)
        self.edges.append((left, right))
        self.labels.append(e if label is None else label)
        self.adj[left].append(e)
        self.adj[right].append(e)
        return e

    @property
    def num_vertices(self) -> int:
        return len(self.side)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def other(self, e: int, v: int) -> int:
        x, y = self.edges[e]
        return y if v == x else x

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edge_subgraph(self, keep: Iterable[int]) -> BipartiteMultigraph:
        """Same vertices, only the listed edges (renumbered in the given order, labels kept)."""
        sub = BipartiteMultigraph()
        sub.side = list(self.side)
        sub.key = list(self.key)
        sub.adj = [[] for _ in self.side]
        for e in keep:
            sub.add_edge(*self.edges[e], self.labels[e])
        return sub

    @classmethod
    def from_edges(
        cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]
    ) -> BipartiteMultigraph:
        """Left vertices get ids ``0..n_left-1``; edge ``(i, j)`` joins left ``i`` to right ``j``."""
        g = cls()
        for _ in range(n_left):
            g.add_vertex(LEFT)
        for _ in range(n_right):
            g.add_vertex(RIGHT)
        for i, j in edges:
            g.add_edge(i, n_left + j)
        return g

    def __repr__(self) -> str:
        return f"BipartiteMultigraph(V={self.num_vertices}, E={self.num_edges})"


def _check_edge(B: BipartiteMultigraph, e: int) -> None:
    if not 0 <= e < B.num_edges:
        raise EdgeNotInGraph(f"edge {e} not in graph with {B.num_edges} edges")


# --------------------------------------------------------------------------
# edge colouring


def edge_color_extend(
    B: BipartiteMultigraph, palette_size: int, precolored: Mapping[int, int] | None = None
) -> list[int]:
    """Properly colour all edges with colours ``0..palette_size-1``.

    Precoloured edges must share a common vertex and keep their colours.
    Uncoloured edges are added one at a time; when no colour is free at both
    ends, an alternating two-colour chain is flipped.  Of the two candidate
    chains (one from each end) at most one meets the precoloured vertex, and
    the other is used, so fixed colours are never touched.
    """
    precolored = dict(precolored or {})
    if B.max_degree() > palette_size:
        raise PaletteTooSmall(f"max degree {B.max_degree()} exceeds palette {palette_size}")
    hub = None
    if precolored:
        for e in precolored:
            _check_edge(B, e)
        first = next(iter(precolored))
        candidates = set(B.edges[first])
        for e in precolored:
            candidates &= set(B.edges[e])
        if not candidates:
            raise PrecoloringNotStarShaped("precoloured edges do not share a vertex")
        hub = min(candidates)
        colors_used = list(precolored.values())
        if len(set(colors_used)) != len(colors_used):
            raise PrecoloringConflict("two precoloured edges share a colour")
        if any(not 0 <= c < palette_size for c in colors_used):
            raise PrecoloringConflict("precoloured colour outside the palette")

    ops = current()
    steps = 0
    color = [-1] * B.num_edges
    at: list[dict[int, int]] = [{} for _ in range(B.num_vertices)]
    fresh = [0] * B.num_vertices
    released: list[list[int]] = [[] for _ in range(B.num_vertices)]

    def paint(e: int, c: int) -> None:
        color[e] = c
        x, y = B.edges[e]
        at[x][c] = e
        at[y][c] = e

    def unpaint(e: int) -> None:
        c = color[e]
        for v in B.edges[e]:
            del at[v][c]
            released[v].append(c)
        color[e] = -1

    def free(v: int) -> int:
        nonlocal steps
        used = at[v]
        stack = released[v]
        while stack:
            steps += 1
            if stack[-1] in used:
                stack.pop()
            else:
                return stack[-1]
        while fresh[v] in used:
            steps += 1
            fresh[v] += 1
        return fresh[v]

    def chain(start: int, first: int, second: int) -> list[int]:
        nonlocal steps
        out = []
        v, c, d = start, first, second
        while c in at[v]:
            e = at[v][c]
            out.append(e)
            v = B.other(e, v)
            c, d = d, c
        steps += len(out) + 1
        return out

    def flip(edges: list[int], a: int, b: int) -> None:
        old = [color[e] for e in edges]
        for e in edges:
            unpaint(e)
        for e, c in zip(edges, old):
            paint(e, b if c == a else a)

    for e, c in precolored.items():
        paint(e, c)
    if hub is not None:
        for e in B.adj[hub]:
            if color[e] < 0:
                paint(e, free(hub))
    for e in range(B.num_edges):
        steps += 1
        if color[e] >= 0:
            continue
        x, y = B.edges[e]
        alpha, beta = free(x), free(y)
        if alpha not in at[y]:
            paint(e, alpha)
        elif beta not in at[x]:
            paint(e, beta)
        else:
            path = chain(y, alpha, beta)
            if hub is None or all(hub not in B.edges[f] for f in path):
                flip(path, alpha, beta)
                paint(e, alpha)
            else:
                path = chain(x, beta, alpha)
                flip(path, alpha, beta)
                paint(e, beta)
    if ops is not None:
        ops.steps += steps + B.num_vertices
    return color


def is_proper_edge_coloring(B: BipartiteMultigraph, color: Sequence[int]) -> bool:
    for v in range(B.num_vertices):
        seen = [color[e] for e in B.adj[v]]
        if len(set(seen)) != len(seen):
            return False
    return True


# --------------------------------------------------------------------------
# matchings


@dataclass(frozen=True)
class Matching:
    """Edge ids plus, per vertex, the matched edge id (``-1`` if exposed)."""

    edges: frozenset[int]
    mate: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def covers(self, v: int) -> bool:
        return self.mate[v] >= 0

    def covered(self) -> frozenset[int]:
        return frozenset(v for v, e in enumerate(self.mate) if e >= 0)

    @classmethod
    def from_edges(cls, B: BipartiteMultigraph, edges: Iterable[int]) -> Matching:
        mate = [-1] * B.num_vertices
        chosen = frozenset(edges)
        for e in chosen:
            for v in B.edges[e]:
                if mate[v] >= 0:
                    raise ValueError(f"edges {mate[v]} and {e} share vertex {v}")
                mate[v] = e
        return cls(chosen, tuple(mate))


def _kuhn(B: BipartiteMultigraph, banned: set[int]) -> list[int]:
    """Augmenting-path maximum matching avoiding ``banned`` vertices.

    Visited marks survive failed searches and are cleared only after an
    augmentation, so the work is O((nu + 1) * E).
    """
    mate = [-1] * B.num_vertices
    steps = 0
    for e, (x, y) in enumerate(B.edges):
        if mate[x] < 0 and mate[y] < 0 and x not in banned and y not in banned:
            mate[x] = mate[y] = e
    steps += B.num_edges
    seen = [False] * B.num_vertices
    for start in range(B.num_vertices):
        if B.side[start] is not LEFT or mate[start] >= 0 or start in banned:
            continue
        stack = [[start, 0]]
        via: list[int] = []
        found = False
        while stack and not found:
            frame = stack[-1]
            x, i = frame
            adj = B.adj[x]
            if i == len(adj):
                stack.pop()
                if via:
                    via.pop()
                continue
            frame[1] = i + 1
            steps += 1
            e = adj[i]
            y = B.edges[e][1]
            if seen[y] or y in banned:
                continue
            seen[y] = True
            if mate[y] < 0:
                via.append(e)
                for f in via:
                    fx, fy = B.edges[f]
                    mate[fx] = mate[fy] = f
                found = True
            else:
                via.append(e)
                stack.append([B.edges[mate[y]][0], 0])
        if found:
            seen = [False] * B.num_vertices
            steps += B.num_vertices
    ops = current()
    if ops is not None:
        ops.steps += steps
    return mate


def max_matching(
    B: BipartiteMultigraph, forced: int | None = None, avoid: Iterable[int] = ()
) -> Matching:
    """A maximum matching; with ``forced`` it is maximum among those containing it.

    Vertices in ``avoid`` are left exposed (the result is then maximum in
    ``B`` minus those vertices).
    """
    banned = set(avoid)
    if forced is None:
        mate = _kuhn(B, banned)
    else:
        _check_edge(B, forced)
        x, y = B.edges[forced]
        mate = _kuhn(B, banned | {x, y})
        mate[x] = mate[y] = forced
    return Matching(frozenset(e for e in mate if e >= 0), tuple(mate))


def matching_number(B: BipartiteMultigraph, without: Iterable[int] = ()) -> int:
    """Size of a maximum matching of ``B`` minus the given vertices."""
    mate = _kuhn(B, set(without))
    return len({e for e in mate if e >= 0})


def _alternating_reach(
    B: BipartiteMultigraph, M: Matching, start_side: bool, seeds: Iterable[int] = ()
) -> set[int]:
    """Vertices reachable from exposed ``start_side`` vertices (and ``seeds``).

    Moves go from a ``start_side`` vertex along non-matching edges and from an
    opposite-side vertex along its matching edge.  With ``start_side=LEFT``
    this is reachability in the digraph D_M.
    """
    reach = set(seeds)
    for v in range(B.num_vertices):
        if B.side[v] is start_side and M.mate[v] < 0:
            reach.add(v)
    stack = list(reach)
    steps = 0
    while stack:
        v = stack.pop()
        if B.side[v] is start_side:
            for e in B.adj[v]:
                steps += 1
                if e in M.edges:
                    continue
                w = B.other(e, v)
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        elif M.mate[v] >= 0:
            steps += 1
            w = B.other(M.mate[v], v)
            if w not in reach:
                reach.add(w)
                stack.append(w)
    ops = current()
    if ops is not None:
        ops.steps += steps + B.num_vertices
    return reach


def inessential_vertices(B: BipartiteMultigraph, M: Matching) -> set[int]:
    """Vertices left exposed by at least one maximum matching (``M`` must be maximum)."""
    out = set()
    for side in (LEFT, RIGHT):
        out |= {v for v in _alternating_reach(B, M, side) if B.side[v] is side}
    return out


def edge_in_some_max_matching(B: BipartiteMultigraph, M: Matching, e: int) -> bool:
    """Whether a maximum matching of ``B`` contains ``e`` (``M`` must be maximum).

    True iff ``e`` is in ``M``, or lies on an even alternating path from an
    exposed vertex, or on an alternating cycle.
    """
    _check_edge(B, e)
    if e in M.edges:
        return True
    u, w = B.edges[e]
    if u in _alternating_reach(B, M, LEFT) or w in _alternating_reach(B, M, RIGHT):
        return True
    # alternating cycle: u -> w in D_M, so look for a way back from w to u
    seen = {w}
    stack = [w]
    while stack:
        v = stack.pop()
        if B.side[v] is RIGHT:
            nxt = [B.other(M.mate[v], v)] if M.mate[v] >= 0 else []
        else:
            nxt = [B.other(f, v) for f in B.adj[v] if f not in M.edges]
        for x in nxt:
            if x == u:
                return True
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return False


def min_vertex_cover(B: BipartiteMultigraph, M: Matching) -> set[int]:
    """Koenig cover ``(L \\ R) | (R-side & R)`` with R the D_M reach; ``M`` must be maximum."""
    reach = _alternating_reach(B, M, LEFT)
    return {v for v in range(B.num_vertices) if (v in reach) == (B.side[v] is RIGHT)}


def min_cover_with_anchor(
    B: BipartiteMultigraph, M: Matching, x: int, check: bool = __debug__
) -> set[int]:
    """Minimum vertex cover containing ``x`` that also holds the far end of
    every edge at ``x`` lying in no maximum matching.

    ``x`` must be covered by every maximum matching.  Either side is accepted
    for ``x``: the reach is run from the opposite side.  An exposed neighbour
    is simulated by seeding the reach with ``x`` itself.
    """
    if check and matching_number(B, [x]) != len(M) - 1:
        raise AnchorNotInEveryMaxMatching(f"vertex {x} is avoided by some maximum matching")
    start = not B.side[x]
    reach = _alternating_reach(B, M, start, seeds=[x])
    return {v for v in range(B.num_vertices) if (v in reach) == (B.side[v] is B.side[x])}


def is_vertex_cover(B: BipartiteMultigraph, cover: set[int]) -> bool:
    return all(x in cover or y in cover for x, y in B.edges)


# --------------------------------------------------------------------------
# stable matchings


class EdgePreferences:
    """Strict per-vertex orders on incident edges, stored as label ranks.

    ``rank[v][label]`` is 0 for the most preferred edge at ``v``.  A vertex
    with no entry (a dummy endpoint) ranks all its edges 0; such vertices
    have a single edge.
    """

    def __init__(self, rank: Sequence[Mapping[int, int] | None]) -> None:
        self.rank = list(rank)

    def at(self, v: int) -> Mapping[int, int]:
        return self.rank[v] or {}

    def prefers(self, B: BipartiteMultigraph, v: int, f: int, e: int) -> bool:
        """``f`` is at least as good as ``e`` at ``v``."""
        r = self.at(v)
        return r.get(B.labels[f], 0) <= r.get(B.labels[e], 0)

    @classmethod
    def from_orders(
        cls, B: BipartiteMultigraph, orders: Sequence[Sequence[int]]
    ) -> EdgePreferences:
        """``orders[v]`` lists the edge ids at ``v``, most preferred first."""
        rank = []
        for v, order in enumerate(orders):
            if sorted(order) != sorted(B.adj[v]) or len(set(order)) != len(order):
                raise ValueError(f"order at vertex {v} is not a permutation of its edges")
            rank.append({B.labels[e]: i for i, e in enumerate(order)})
        return cls(rank)


def stable_matching(
    B: BipartiteMultigraph, prefs: EdgePreferences, proposer: bool = LEFT
) -> Matching:
    """Deferred acceptance with incomplete lists; proposers are scanned in id order.

    Every edge is proposed at most once, so the cost is O(V + E) plus sorting.
    """
    steps = 0
    lists: dict[int, list[int]] = {}
    queue = []
    for v in range(B.num_vertices):
        if B.side[v] is proposer and B.adj[v]:
            r = prefs.at(v)
            lists[v] = sorted(B.adj[v], key=lambda e: r.get(B.labels[e], 0), reverse=True)
            queue.append(v)
            steps += len(B.adj[v])
    queue.reverse()
    held = [-1] * B.num_vertices
    while queue:
        x = queue.pop()
        todo = lists[x]
        while todo:
            steps += 1
            e = todo.pop()
            y = B.other(e, x)
            cur = held[y]
            if cur < 0:
                held[y] = e
                break
            r = prefs.at(y)
            if r.get(B.labels[e], 0) < r.get(B.labels[cur], 0):
                held[y] = e
                queue.append(B.other(cur, y))
                break
    chosen = [e for e in held if e >= 0]
    ops = current()
    if ops is not None:
        ops.steps += steps + B.num_vertices
    return Matching.from_edges(B, chosen)


def dominator(
    B: BipartiteMultigraph, prefs: EdgePreferences, M: Matching, e: int
) -> tuple[int, int] | None:
    """``(vertex, f)`` with ``f`` in ``M`` at a shared vertex and ``f`` preferred there, if any."""
    for v in B.edges[e]:
        f = M.mate[v]
        if f >= 0 and (f == e or prefs.prefers(B, v, f, e)):
            return v, f
    return None


def is_stable(B: BipartiteMultigraph, prefs: EdgePreferences, M: Matching) -> bool:
    return all(
        e in M.edges or dominator(B, prefs, M, e) is not None for e in range(B.num_edges)
    )


def edge_survives_test(
    B: BipartiteMultigraph, prefs: EdgePreferences, u: int, e: int
) -> bool:
    """Whether ``e`` lies in a stable matching of ``B`` with ``u``'s other edges removed.

    One stable matching suffices: all stable matchings cover the same
    vertices and ``e`` is then the only edge able to cover ``u``.
    """
    _check_edge(B, e)
    if u not in B.edges[e]:
        raise EdgeNotIncident(f"edge {e} is not incident to vertex {u}")
    keep = [f for f in range(B.num_edges) if f == e or u not in B.edges[f]]
    sub = B.edge_subgraph(keep)
    M = stable_matching(sub, prefs)
    return keep.index(e) in M.edges
