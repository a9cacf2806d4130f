"""Shared instance builders for the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from hypothesis import strategies as st

from dipathtree import oracle
from dipathtree.bipartite import (
    BipartiteMultigraph,
    EdgePreferences,
    edge_survives_test,
    is_vertex_cover,
    max_matching,
    min_cover_with_anchor,
)
from dipathtree.generate import SHAPES, random_dipaths, random_per_arc_orders, random_ranking, random_tree
from dipathtree.kernel import PriorityRelation
from dipathtree.tree import Dipath, DirectedTree, RootedTree, build_tree, index_paths, make_paths, root_tree


STEP_CONSTANT = 8
"""The ``c`` in every ``steps <= c * sum_v deg(v) |P_v|^k`` check."""

ACCEPTANCE_LINES: list[str] = []
"""One PASS/FAIL line per acceptance criterion, echoed in the terminal summary."""


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@dataclass
class Case:
    seed: int
    shape: str
    tree: DirectedTree
    paths: list[Dipath]
    root: int

    @property
    def rooted(self) -> RootedTree:
        return root_tree(self.tree, self.root)

    def index(self):
        return index_paths(self.rooted, self.paths)

    def relation(self, adversarial: bool) -> PriorityRelation:
        rng = random.Random(self.seed ^ 0x5EED)
        if adversarial:
            return random_per_arc_orders(rng, self.tree, self.paths)
        return random_ranking(rng, len(self.paths))


def seeded_case(seed: int, max_n: int = 12, max_p: int = 14, shape: str | None = None) -> Case:
    """Deterministic small instance; the shape cycles through all generators."""
    rng = random.Random(seed)
    shape = shape or SHAPES[seed % len(SHAPES)]
    n = rng.randint(2, max_n)
    p = rng.randint(0, max_p)
    tree = random_tree(rng, n, shape)
    max_len = rng.choice([None, 2, 3])
    paths = random_dipaths(rng, tree, p, shape, max_len)
    return Case(seed, shape, tree, paths, rng.randrange(n))


def subtree(rooted: RootedTree, v: int) -> set[int]:
    out = [v]
    for x in out:
        out.extend(rooted.children[x])
    return set(out)


def figure_instance():
    """Star at vertex 1 with father 0 and children 2, 3, 4.

    Dipath 0 runs 3 -> 1 -> 0, dipath 1 runs 2 -> 1 -> 4, dipath 2 runs
    2 -> 1 -> 0.  Dipaths 1 and 2 compete for arc 2 -> 1, and dipath 1 can
    only be packed there, so dipath 2 is bad at vertex 1 while dipath 0 is not.
    """
    tree = build_tree(5, [(1, 0), (2, 1), (3, 1), (1, 4)])
    paths = make_paths(tree, [[3, 1, 0], [2, 1, 4], [2, 1, 0]])
    return tree, paths


@st.composite
def cases(draw, max_n: int = 10, max_p: int = 10) -> Case:
    seed = draw(st.integers(0, 2**32 - 1))
    shape = draw(st.sampled_from(SHAPES))
    rng = random.Random(seed)
    n = draw(st.integers(1, max_n))
    p = draw(st.integers(0, max_p)) if n > 1 else 0
    tree = random_tree(rng, n, shape)
    paths = random_dipaths(rng, tree, p, shape) if n > 1 else []
    root = draw(st.integers(0, n - 1))
    return Case(seed, shape, tree, paths, root)


# --------------------------------------------------------------------------
# bipartite graphs


def random_graph(rng: random.Random, max_vertices: int = 12, max_edges: int = 14) -> BipartiteMultigraph:
    n_left = rng.randint(1, max_vertices - 1)
    n_right = rng.randint(1, max_vertices - n_left)
    m = rng.randint(0, max_edges)
    edges = [(rng.randrange(n_left), rng.randrange(n_right)) for _ in range(m)]
    return BipartiteMultigraph.from_edges(n_left, n_right, edges)


def random_preferences(rng: random.Random, B: BipartiteMultigraph) -> EdgePreferences:
    orders = []
    for v in range(B.num_vertices):
        order = list(B.adj[v])
        rng.shuffle(order)
        orders.append(order)
    return EdgePreferences.from_orders(B, orders)


def valid_anchors(B: BipartiteMultigraph) -> list[int]:
    """Vertices covered by every maximum matching, by enumeration."""
    maxima = oracle.maximum_matchings(B)
    return [x for x in range(B.num_vertices) if all(any(x in B.edges[e] for e in m) for m in maxima)]


def anchored_cover_holds(B: BipartiteMultigraph, x: int) -> bool:
    maxima = oracle.maximum_matchings(B)
    M = max_matching(B)
    C = min_cover_with_anchor(B, M, x)
    in_some = set().union(*maxima)
    ok = is_vertex_cover(B, C) and len(C) == len(M) and x in C
    for e in B.adj[x]:
        if e not in in_some:
            ok = ok and B.other(e, x) in C
    return ok


def surviving_edge_law_holds(B: BipartiteMultigraph, prefs: EdgePreferences, u: int) -> bool:
    """A surviving edge at ``u`` stays in every stable matching after adding failing ones."""
    survivors = [e for e in B.adj[u] if edge_survives_test(B, prefs, u, e)]
    failing = [e for e in B.adj[u] if e not in survivors]
    base = [f for f in range(B.num_edges) if u not in B.edges[f]]
    for e in B.adj[u]:
        keep = base + [e]
        sub = B.edge_subgraph(keep)
        found = any(keep.index(e) in m for m in oracle.enumerate_stable_matchings(sub, prefs))
        if found != (e in survivors):
            return False
    for f in survivors:
        for mask in range(1 << len(failing)):
            extra = [g for i, g in enumerate(failing) if mask >> i & 1]
            keep = sorted(base + [f] + extra)
            sub = B.edge_subgraph(keep)
            for m in oracle.enumerate_stable_matchings(sub, prefs):
                if keep.index(f) not in m:
                    return False
    return True
