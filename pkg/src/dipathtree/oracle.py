"""Exhaustive ground truth for small instances.

Nothing here calls the fast algorithms; only the tree/dipath data types and
the plain fields of bipartite graphs and priority relations are shared.
Everything is exponential and guarded by :class:`SizeLimit`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import SizeLimit
from .tree import DirectedTree, Dipath

MAX_VERTICES = 16
MAX_CUT_ARCS = 20


@dataclass(frozen=True)
class IntersectionGraph:
    """Arc-intersection graph; ``adj[i]`` is a bitmask of the neighbours of dipath ``i``."""

    size: int
    adj: tuple[int, ...]

    def neighbours(self, i: int) -> set[int]:
        return {j for j in range(self.size) if self.adj[i] >> j & 1}

    def edges(self) -> set[tuple[int, int]]:
        return {(i, j) for i in range(self.size) for j in self.neighbours(i) if i < j}


def build_intersection_graph(tree: DirectedTree, paths: Sequence[Dipath]) -> IntersectionGraph:
    arc_sets = [set(p.arcs) for p in paths]
    adj = [0] * len(paths)
    for i, j in itertools.combinations(range(len(paths)), 2):
        if arc_sets[i] & arc_sets[j]:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return IntersectionGraph(len(paths), tuple(adj))


def _guard(G: IntersectionGraph) -> None:
    if G.size > MAX_VERTICES:
        raise SizeLimit(f"{G.size} dipaths exceeds the exhaustive limit {MAX_VERTICES}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def clique_number(G: IntersectionGraph) -> int:
    _guard(G)
    best = 0

    def grow(size: int, candidates: int) -> None:
        nonlocal best
        if not candidates:
            best = max(best, size)
            return
        if size + bin(candidates).count("1") <= best:
            return
        v = (candidates & -candidates).bit_length() - 1
        grow(size + 1, candidates & G.adj[v])
        grow(size, candidates & ~(1 << v))

    grow(0, (1 << G.size) - 1)
    return best


def exact_max_stable(G: IntersectionGraph) -> int:
    _guard(G)

    def best(candidates: int) -> int:
        if not candidates:
            return 0
        v = (candidates & -candidates).bit_length() - 1
        rest = candidates & ~(1 << v)
        return max(best(rest), 1 + best(rest & ~G.adj[v]))

    return best((1 << G.size) - 1)


def exact_chromatic(G: IntersectionGraph) -> int:
    """Smallest k admitting a proper colouring, by backtracking.

    A vertex may only open colour ``max_used + 1``, which removes the
    relabelling symmetry.
    """
    _guard(G)
    if G.size == 0:
        return 0
    order = sorted(range(G.size), key=lambda v: -bin(G.adj[v]).count("1"))

    def colourable(k: int) -> bool:
        colour = [-1] * G.size

        def place(i: int, opened: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            taken = {colour[u] for u in _bits(G.adj[v])}
            for c in range(min(k, opened + 1)):
                if c not in taken:
                    colour[v] = c
                    if place(i + 1, max(opened, c + 1)):
                        return True
            colour[v] = -1
            return False

        return place(0, 0)

    k = 1
    while not colourable(k):
        k += 1
    return k


def exact_min_multicut(tree: DirectedTree, paths: Sequence[Dipath]) -> frozenset[int]:
    """A smallest arc set meeting every dipath, by increasing-size enumeration."""
    relevant = sorted({a for p in paths for a in p.arcs})
    if len(relevant) > MAX_CUT_ARCS:
        raise SizeLimit(f"{len(relevant)} arcs exceeds the exhaustive limit {MAX_CUT_ARCS}")
    arc_sets = [set(p.arcs) for p in paths]
    for k in range(len(relevant) + 1):
        for combo in itertools.combinations(relevant, k):
            chosen = set(combo)
            if all(s & chosen for s in arc_sets):
                return frozenset(chosen)
    raise AssertionError("the set of all used arcs is always a multicut")


def max_packing(paths: Sequence[Dipath], within: Iterable[int] | None = None) -> int:
    """Largest number of pairwise arc-disjoint dipaths among ``within`` (default: all)."""
    ids = list(range(len(paths))) if within is None else list(within)
    sub = [paths[i] for i in ids]
    if len(sub) > MAX_VERTICES:
        raise SizeLimit(f"{len(sub)} dipaths exceeds the exhaustive limit {MAX_VERTICES}")
    arc_sets = [frozenset(p.arcs) for p in sub]

    def best(i: int, used: frozenset[int]) -> int:
        if i == len(sub):
            return 0
        skip = best(i + 1, used)
        if used.isdisjoint(arc_sets[i]):
            return max(skip, 1 + best(i + 1, used | arc_sets[i]))
        return skip

    return best(0, frozenset())


# --------------------------------------------------------------------------
# kernels


def _above(rel, arc: int, p: int, q: int) -> bool:
    """``p`` at least as high as ``q`` on ``arc``, read straight from the raw relation."""
    if p == q:
        return True
    if rel.mode == "global":
        ranking = list(rel.global_rank)
        return ranking.index(p) < ranking.index(q)
    order = list(rel.per_arc_order[arc])
    return order.index(p) < order.index(q)


def verify_kernel(tree: DirectedTree, paths: Sequence[Dipath], rel, K: Iterable[int]) -> bool:
    K = set(K)
    arc_sets = [set(p.arcs) for p in paths]
    for p, q in itertools.combinations(sorted(K), 2):
        if arc_sets[p] & arc_sets[q]:
            return False
    for q in range(len(paths)):
        if q in K:
            continue
        if not any(_above(rel, a, p, q) for p in K for a in arc_sets[p] & arc_sets[q]):
            return False
    return True


def enumerate_kernels(tree: DirectedTree, paths: Sequence[Dipath], rel) -> list[frozenset[int]]:
    G = build_intersection_graph(tree, paths)
    _guard(G)
    found = []

    def stable_sets(i: int, chosen: int) -> Iterator[int]:
        if i == G.size:
            yield chosen
            return
        yield from stable_sets(i + 1, chosen)
        if not G.adj[i] & chosen:
            yield from stable_sets(i + 1, chosen | 1 << i)

    for mask in stable_sets(0, 0):
        K = set(_bits(mask))
        if verify_kernel(tree, paths, rel, K):
            found.append(frozenset(K))
    return found


# --------------------------------------------------------------------------
# bipartite matchings


def enumerate_matchings(B) -> list[frozenset[int]]:
    """Every matching of a bipartite multigraph, as sets of edge ids."""
    if B.num_vertices > MAX_VERTICES:
        raise SizeLimit(f"{B.num_vertices} vertices exceeds the exhaustive limit")
    out = []

    def extend(e: int, used: frozenset[int], chosen: frozenset[int]) -> None:
        if e == B.num_edges:
            out.append(chosen)
            return
        extend(e + 1, used, chosen)
        x, y = B.edges[e]
        if x not in used and y not in used:
            extend(e + 1, used | {x, y}, chosen | {e})

    extend(0, frozenset(), frozenset())
    return out


def maximum_matchings(B) -> list[frozenset[int]]:
    every = enumerate_matchings(B)
    top = max(len(m) for m in every)
    return [m for m in every if len(m) == top]


def _rank(prefs, B, v: int, e: int) -> int:
    r = prefs.rank[v] or {}
    return r.get(B.labels[e], 0)


def is_stable_brute(B, prefs, M: frozenset[int]) -> bool:
    mate = {}
    for e in M:
        for v in B.edges[e]:
            mate[v] = e
    for e in range(B.num_edges):
        if e in M:
            continue
        if not any(v in mate and _rank(prefs, B, v, mate[v]) <= _rank(prefs, B, v, e) for v in B.edges[e]):
            return False
    return True


def enumerate_stable_matchings(B, prefs) -> list[frozenset[int]]:
    return [M for M in enumerate_matchings(B) if is_stable_brute(B, prefs, M)]
