"""Seeded random instances and priority relations."""

from __future__ import annotations

import random
from collections import deque
from typing import Sequence

from .kernel import PriorityRelation
from .tree import DirectedTree, Dipath, build_tree, make_dipath

SHAPES = ("chain", "star", "random", "caterpillar")


def random_tree(rng: random.Random, n: int, shape: str = "random") -> DirectedTree:
    """Random tree of the given shape with random arc orientations.

    A caterpillar is a spine ``0 -> 1 -> ...`` oriented forwards with one
    randomly oriented leg per spine vertex, so dipaths along it can be long.
    """
    if shape == "chain":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif shape == "star":
        edges = [(0, i) for i in range(1, n)]
    elif shape == "random":
        edges = [(rng.randrange(i), i) for i in range(1, n)]
    elif shape == "caterpillar":
        spine = (n + 1) // 2
        arcs = [(i, i + 1) for i in range(spine - 1)]
        for leg in range(spine, n):
            s = leg - spine
            arcs.append((s, leg) if rng.random() < 0.5 else (leg, s))
        return build_tree(n, arcs)
    else:
        raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")
    return build_tree(n, [(u, v) if rng.random() < 0.5 else (v, u) for u, v in edges])


def _walk(rng: random.Random, tree: DirectedTree, start: int, length: int) -> list[int]:
    walk = [start]
    while len(walk) <= length:
        nxt = tree.out_neighbours(walk[-1])
        if not nxt:
            break
        walk.append(rng.choice(nxt))
    return walk


def _caterpillar_path(rng: random.Random, tree: DirectedTree) -> list[int] | None:
    spine = (tree.n + 1) // 2
    i, j = sorted(rng.sample(range(spine), 2)) if spine > 1 else (0, 0)
    walk = list(range(i, j + 1))
    if i + spine < tree.n and tree.arc_between(i, i + spine) is not None:
        leg = i + spine
        if tree.arcs[tree.arc_between(i, leg)] == (leg, i) and rng.random() < 0.5:
            walk.insert(0, leg)
    if j + spine < tree.n:
        leg = j + spine
        if tree.arcs[tree.arc_between(j, leg)] == (j, leg) and rng.random() < 0.5:
            walk.append(leg)
    return walk if len(walk) > 1 else None


def random_dipaths(
    rng: random.Random,
    tree: DirectedTree,
    p: int,
    shape: str = "random",
    max_len: int | None = None,
) -> list[Dipath]:
    """``p`` dipaths, each a random directed walk (never invalid by construction)."""
    starts = [v for v in range(tree.n) if tree.out_neighbours(v)]
    if not starts:
        return []
    max_len = max_len or max(1, tree.n - 1)
    paths: list[Dipath] = []
    while len(paths) < p:
        if shape == "caterpillar" and tree.n >= 4:
            walk = _caterpillar_path(rng, tree)
            if walk is None:
                continue
        else:
            walk = _walk(rng, tree, rng.choice(starts), rng.randint(1, max_len))
        paths.append(make_dipath(tree, walk, len(paths)))
    return paths


def random_ranking(rng: random.Random, p: int) -> PriorityRelation:
    ranking = list(range(p))
    rng.shuffle(ranking)
    return PriorityRelation.ranking(ranking)


def random_per_arc_orders(
    rng: random.Random, tree: DirectedTree, paths: Sequence[Dipath]
) -> PriorityRelation:
    """Random consistent per-arc orders, generally not induced by any global ranking.

    Arcs are visited so that each new arc touches the already visited part of
    the tree at one vertex.  Dipaths on the new arc that were already ordered
    all pass through that vertex, and those sharing a visited arc there form
    chains with a fixed order; dipaths on different visited arcs share no
    visited arc at all.  A random interleaving of these chains (plus the
    fresh dipaths) therefore never contradicts an earlier decision.
    """
    by_arc: list[list[int]] = [[] for _ in tree.arcs]
    position: dict[tuple[int, int], int] = {}
    for p in paths:
        for k, a in enumerate(p.arcs):
            by_arc[a].append(p.id)
            position[(p.id, a)] = k
    orders: dict[int, tuple[int, ...]] = {}
    if tree.n == 1:
        return PriorityRelation.per_arc(orders)
    ranks: dict[int, dict[int, int]] = {}
    seen_vertex = [False] * tree.n
    seen_vertex[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a, y, _ in tree.adjacency[x]:
            if seen_vertex[y]:
                continue
            seen_vertex[y] = True
            queue.append(y)
            chains: dict[int | None, list[int]] = {}
            for pid in by_arc[a]:
                arcs = paths[pid].arcs
                k = position[(pid, a)]
                neighbour_arcs = [arcs[i] for i in (k - 1, k + 1) if 0 <= i < len(arcs)]
                prior = next((b for b in neighbour_arcs if b in orders), None)
                chains.setdefault(prior, []).append(pid)
            lanes = []
            for prior, members in chains.items():
                if prior is None:
                    lanes.extend([pid] for pid in members)
                else:
                    if prior not in ranks:
                        ranks[prior] = {q: i for i, q in enumerate(orders[prior])}
                    lanes.append(sorted(members, key=ranks[prior].__getitem__))
            # a uniformly random interleaving: shuffle lane labels, then take each lane in order
            labels = [i for i, lane in enumerate(lanes) for _ in lane]
            rng.shuffle(labels)
            heads = [0] * len(lanes)
            merged = []
            for i in labels:
                merged.append(lanes[i][heads[i]])
                heads[i] += 1
            orders[a] = tuple(merged)
    return PriorityRelation.per_arc(orders)
