"""Kernels of clique-acyclic orientations of the arc-intersection graph.

Orientations are given as per-arc priority orders on the dipaths using each
arc.  A kernel is a set of pairwise arc-disjoint dipaths such that every
other dipath is beaten, on some arc it shares with a kernel dipath, by that
kernel dipath.

The computation mirrors the multicut passes with stable matchings in place
of maximum matchings.  Upward, a dipath on the arc above ``v`` is marked
*uninteresting* when its edge cannot survive in a stable matching of the
star at ``v`` once it is the only edge on that arc.  Downward, each star
gets one stable matching; the dipath fixed from above is guaranteed to be
part of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bipartite import EdgePreferences, dominator, stable_matching
from .errors import IncompleteOrder, InconsistentOrder, InternalInvariantViolation
from .instrument import current
from .star import StarGraph, build_star_bipartite
from .tree import Dipath, PathIndex, RootedTree

GLOBAL, PER_ARC = "global", "per-arc"


@dataclass(frozen=True)
class PriorityRelation:
    """Either one ranking of all dipaths, or an explicit order per arc.

    Orders list dipath ids highest priority first.  After
    :func:`validate_priorities`, ``per_arc_order`` is always filled in.
    """

    mode: str
    global_rank: tuple[int, ...] | None = None
    per_arc_order: Mapping[int, tuple[int, ...]] | None = None
    _rank: tuple[dict[int, int], ...] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def ranking(cls, ranking: Sequence[int]) -> PriorityRelation:
        return cls(GLOBAL, global_rank=tuple(ranking))

    @classmethod
    def per_arc(cls, orders: Mapping[int, Sequence[int]]) -> PriorityRelation:
        return cls(PER_ARC, per_arc_order={a: tuple(o) for a, o in orders.items()})

    def rank(self, arc: int) -> dict[int, int]:
        """Position of each dipath in the order on ``arc`` (0 = highest)."""
        if self._rank is None:
            raise ValueError("relation has not been validated")
        return self._rank[arc]

    def prefers(self, arc: int, p: int, q: int) -> bool:
        """``p`` is at least as high as ``q`` on ``arc``."""
        r = self.rank(arc)
        return r[p] <= r[q]


def _check_consistent(paths: Sequence[Dipath], orders: dict[int, tuple[int, ...]]) -> None:
    """Raise unless the per-arc orders come from one antisymmetric relation.

    Two dipaths of a tree share a contiguous run of arcs, so it is enough
    that for consecutive arcs ``a, b`` the dipaths using both appear in the
    same relative order on ``a`` and on ``b``.  Linear in the total load.
    """
    nxt: dict[tuple[int, int], int] = {}
    prv: dict[tuple[int, int], int] = {}
    for p in paths:
        for a, b in zip(p.arcs, p.arcs[1:]):
            nxt[(p.id, a)] = b
            prv[(p.id, b)] = a
    forward: dict[tuple[int, int], list[int]] = {}
    backward: dict[tuple[int, int], list[int]] = {}
    for a, order in orders.items():
        for p in order:
            b = nxt.get((p, a))
            if b is not None:
                forward.setdefault((a, b), []).append(p)
            z = prv.get((p, a))
            if z is not None:
                backward.setdefault((z, a), []).append(p)
    for (a, b), seq in forward.items():
        other = backward[(a, b)]
        if seq != other:
            i = next(i for i, (x, y) in enumerate(zip(seq, other)) if x != y)
            p, q = seq[i], other[i]
            raise InconsistentOrder(f"dipaths {p} and {q}: {q} is above on arc {b}, {p} is above on arc {a}")


def validate_priorities(
    paths: Sequence[Dipath], index: PathIndex, rel: PriorityRelation
) -> PriorityRelation:
    """Normalise to per-arc orders and check they come from one antisymmetric relation."""
    num_arcs = len(index.by_arc)
    if rel.mode == GLOBAL:
        ranking = rel.global_rank or ()
        if sorted(ranking) != list(range(len(paths))):
            raise IncompleteOrder("global ranking must list every dipath exactly once")
        position = {p: i for i, p in enumerate(ranking)}
        orders = {a: tuple(sorted(index.by_arc[a], key=position.__getitem__)) for a in range(num_arcs)}
    elif rel.mode == PER_ARC:
        given = rel.per_arc_order or {}
        orders = {}
        for a in range(num_arcs):
            order = tuple(given.get(a, ()))
            if len(set(order)) != len(order) or set(order) != index.by_arc[a]:
                raise IncompleteOrder(f"order on arc {a} must list exactly the dipaths using it")
            orders[a] = order
        extra = set(given) - set(range(num_arcs))
        if extra:
            raise IncompleteOrder(f"orders given for unknown arcs {sorted(extra)}")
        _check_consistent(paths, orders)
    else:
        raise ValueError(f"unknown priority mode {rel.mode!r}")
    ranks = tuple({p: i for i, p in enumerate(orders[a])} for a in range(num_arcs))
    return PriorityRelation(rel.mode, rel.global_rank, orders, ranks)


@dataclass(frozen=True)
class UninterestingSets:
    sets: tuple[frozenset[int], ...]

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.sets[v]


@dataclass(frozen=True)
class KernelResult:
    kernel: frozenset[int]
    witness: dict[int, tuple[int, int]]
    """Excluded dipath -> (shared arc, kernel dipath at least as high on it)."""


def _preferences(star: StarGraph, rel: PriorityRelation) -> EdgePreferences:
    return EdgePreferences([None if k is None else rel.rank(k) for k in star.key])


def _live(rooted: RootedTree, index: PathIndex, excluded: Sequence[frozenset[int]], v: int):
    blocked: set[int] = set()
    for w in rooted.children[v]:
        blocked |= excluded[w]
    return index.by_vertex[v] - blocked, blocked


def compute_uninteresting_sets(
    rooted: RootedTree, index: PathIndex, rel: PriorityRelation
) -> UninterestingSets:
    tree = rooted.base
    out: list[frozenset[int]] = [frozenset()] * tree.n
    for v in rooted.order:
        if v == rooted.root:
            continue
        live, blocked = _live(rooted, index, out, v)
        q = index.q_sets[v]
        result = set(q & blocked)
        candidates = q - blocked
        if candidates:
            star = build_star_bipartite(tree, v, live, index)
            prefs = _preferences(star, rel)
            below = [e for e in range(star.num_edges) if star.labels[e] not in q]
            for p in candidates:
                e = star.edge_of_path[p]
                sub = star.edge_subgraph(below + [e])
                if len(below) not in stable_matching(sub, prefs).edges:
                    result.add(p)
        out[v] = frozenset(result)
    return UninterestingSets(tuple(out))


def kernel(
    rooted: RootedTree,
    index: PathIndex,
    rel: PriorityRelation,
    uninteresting: UninterestingSets | None = None,
    check: bool = __debug__,
) -> KernelResult:
    """A kernel with a domination witness for every excluded dipath.

    ``rel`` must come from :func:`validate_priorities`.
    """
    tree = rooted.base
    if uninteresting is None:
        uninteresting = compute_uninteresting_sets(rooted, index, rel)
    chosen: set[int] = set()
    witness: dict[int, tuple[int, int]] = {}
    ops = current()
    for v in rooted.top_down:
        live, _ = _live(rooted, index, uninteresting.sets, v)
        if not live:
            continue
        star = build_star_bipartite(tree, v, live, index)
        fixed = None
        if v != rooted.root:
            q = index.q_sets[v]
            fixed = next((p for p in q if p in chosen), None)
            drop = (q - uninteresting[v]) - {fixed}
            star = star.edge_subgraph(
                e for e in range(star.num_edges) if star.labels[e] not in drop
            )
        prefs = _preferences(star, rel)
        M = stable_matching(star, prefs)
        matched = {star.labels[e] for e in M.edges}
        if fixed is not None and fixed not in matched:
            raise InternalInvariantViolation(
                f"fixed dipath {fixed} dropped from the stable matching at vertex {v}"
            )
        chosen |= matched
        for e in range(star.num_edges):
            p = star.labels[e]
            if p in matched or p in witness:
                continue
            hit = dominator(star, prefs, M, e)
            if hit is None:
                raise InternalInvariantViolation(f"unstable matching at vertex {v}")
            z, f = hit
            if star.key[z] is None:
                raise InternalInvariantViolation(f"dipath {p} dominated at a dummy vertex")
            witness[p] = (star.key[z], star.labels[f])
        if ops is not None:
            ops.steps += star.num_edges
    missing = [p.id for p in index.paths if p.id not in chosen and p.id not in witness]
    if missing:
        raise InternalInvariantViolation(f"dipaths {missing} are neither chosen nor dominated")
    result = KernelResult(frozenset(chosen), witness)
    if check:
        _check_kernel(index, rel, result)
    return result


def _check_kernel(index: PathIndex, rel: PriorityRelation, result: KernelResult) -> None:
    owner: dict[int, int] = {}
    for p in result.kernel:
        for a in index.paths[p].arcs:
            if a in owner:
                raise InternalInvariantViolation(f"kernel dipaths {owner[a]} and {p} share arc {a}")
            owner[a] = p
    for q, (a, p) in result.witness.items():
        if p not in result.kernel or a not in index.paths[q].arcs or owner.get(a) != p:
            raise InternalInvariantViolation(f"bad witness for dipath {q}")
        if not rel.prefers(a, p, q):
            raise InternalInvariantViolation(f"witness of dipath {q} is lower on arc {a}")
