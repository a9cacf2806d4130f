"""Maximum arc-disjoint dipath packing together with a minimum multicut.

Two passes over a rooted tree.  The upward pass finds, for every vertex
``v``, the *bad* dipaths on the arc above ``v``: those whose selection would
lose a dipath of an optimal packing inside the subtree of ``v``.  The
downward pass then picks a matching and a vertex cover on each star, adding
as many dipaths to the packing as arcs to the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bipartite import (
    inessential_vertices,
    matching_number,
    max_matching,
    min_cover_with_anchor,
    min_vertex_cover,
)
from .errors import AnchorNotInEveryMaxMatching, InternalInvariantViolation
from .star import StarGraph, build_star_bipartite
from .tree import PathIndex, RootedTree


@dataclass(frozen=True)
class BadSets:
    bad: tuple[frozenset[int], ...]

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.bad[v]


@dataclass(frozen=True)
class MulticutCertificate:
    stable_set: frozenset[int]
    cut: frozenset[int]
    cut_at: dict[int, tuple[int, ...]]
    """Arcs added to the cut while processing each vertex."""


def _star_paths(rooted: RootedTree, index: PathIndex, excluded: Sequence[frozenset[int]], v: int):
    """Dipaths through ``v`` not excluded at any child of ``v``, and the excluded union."""
    blocked: set[int] = set()
    for w in rooted.children[v]:
        blocked |= excluded[w]
    return index.by_vertex[v] - blocked, blocked


def compute_bad_sets(rooted: RootedTree, index: PathIndex) -> BadSets:
    tree = rooted.base
    bad: list[frozenset[int]] = [frozenset()] * tree.n
    for v in rooted.order:
        if v == rooted.root:
            continue
        live, blocked = _star_paths(rooted, index, bad, v)
        q = index.q_sets[v]
        result = set(q & blocked)
        candidates = q - blocked
        if candidates:
            star = build_star_bipartite(tree, v, live, index)
            x = star.vertex_of_arc[rooted.father_arc[v]]
            below = star.edge_subgraph(e for e in range(star.num_edges) if star.labels[e] not in q)
            avoidable = inessential_vertices(below, max_matching(below))
            for p in candidates:
                w = star.other(star.edge_of_path[p], x)
                if star.key[w] is not None and w not in avoidable:
                    result.add(p)
        bad[v] = frozenset(result)
    return BadSets(tuple(bad))


def _cover_arcs(star: StarGraph, cover: set[int]) -> set[int]:
    """Arcs of a cover, with each dummy replaced by its unique real neighbour."""
    arcs = set()
    for c in cover:
        if star.key[c] is None:
            if not star.adj[c]:
                continue
            c = star.other(star.adj[c][0], c)
        arcs.add(star.key[c])
    if len(arcs) != len(cover):
        raise InternalInvariantViolation(f"cover at {star.center} collapsed after dummy swap")
    return arcs


def _dump(star: StarGraph) -> str:
    return f"star at {star.center}: " + ", ".join(
        f"P{star.labels[e]}:{star.key[x]}-{star.key[y]}" for e, (x, y) in enumerate(star.edges)
    )


def multicut(
    rooted: RootedTree,
    index: PathIndex,
    bad: BadSets | None = None,
    check: bool = __debug__,
) -> MulticutCertificate:
    """An arc-disjoint dipath set S and a cut C meeting every dipath with ``|S| == |C|``."""
    tree = rooted.base
    if bad is None:
        bad = compute_bad_sets(rooted, index)
    chosen: set[int] = set()
    cut: set[int] = set()
    cut_at: dict[int, tuple[int, ...]] = {}
    for v in rooted.top_down:
        live, _ = _star_paths(rooted, index, bad.bad, v)
        if not live:
            continue
        star = build_star_bipartite(tree, v, live, index)
        if v == rooted.root:
            M = max_matching(star)
            new_paths = {star.labels[e] for e in M.edges}
            new_arcs = _cover_arcs(star, min_vertex_cover(star, M))
        else:
            q = index.q_sets[v]
            fixed = [p for p in q if p in chosen]
            x = star.vertex_of_arc.get(rooted.father_arc[v])
            if fixed:
                f = star.edge_of_path[fixed[0]]
                M = max_matching(star, forced=f)
                try:
                    cover = min_cover_with_anchor(star, M, x, check=check)
                except AnchorNotInEveryMaxMatching as exc:
                    raise InternalInvariantViolation(f"{exc}; {_dump(star)}") from exc
                new_paths = {star.labels[e] for e in M.edges} - {fixed[0]}
                new_arcs = _cover_arcs(star, cover - {x})
            else:
                drop = q - bad[v]
                sub = star.edge_subgraph(
                    e for e in range(star.num_edges) if star.labels[e] not in drop
                )
                M = max_matching(sub, avoid=[] if x is None else [x])
                if check and matching_number(sub) != len(M):
                    raise InternalInvariantViolation(
                        f"bad dipaths enlarge the matching; {_dump(sub)}"
                    )
                new_paths = {sub.labels[e] for e in M.edges}
                new_arcs = _cover_arcs(sub, min_vertex_cover(sub, M))
        if len(new_paths) != len(new_arcs):
            raise InternalInvariantViolation(
                f"{len(new_paths)} dipaths vs {len(new_arcs)} arcs; {_dump(star)}"
            )
        chosen |= new_paths
        cut |= new_arcs
        cut_at[v] = tuple(sorted(new_arcs))
    cert = MulticutCertificate(frozenset(chosen), frozenset(cut), cut_at)
    if check:
        _check_certificate(index, cert)
    return cert


def _check_certificate(index: PathIndex, cert: MulticutCertificate) -> None:
    used: set[int] = set()
    for p in cert.stable_set:
        arcs = index.paths[p].arcs
        if used.intersection(arcs):
            raise InternalInvariantViolation(f"dipath {p} overlaps another selected dipath")
        used.update(arcs)
    for p in index.paths:
        if cert.cut.isdisjoint(p.arcs):
            raise InternalInvariantViolation(f"dipath {p.id} avoids the cut")
    if len(cert.stable_set) != len(cert.cut):
        raise InternalInvariantViolation("packing and cut sizes differ")
