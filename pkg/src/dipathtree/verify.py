"""Certificate checks for solutions, independent of how they were produced.

Each checker returns a list of human-readable problems; an empty list means
the solution is valid.  Coloring and multicut certificates also prove
optimality: a proper colouring with ``max arc load`` colours cannot be beaten,
and neither can a packing and a cut of equal size.
"""

from __future__ import annotations

from typing import Sequence

from .formats import Solution
from .kernel import PriorityRelation
from .tree import DirectedTree, Dipath


def _load(tree: DirectedTree, paths: Sequence[Dipath]) -> list[list[int]]:
    by_arc: list[list[int]] = [[] for _ in tree.arcs]
    for p in paths:
        for a in p.arcs:
            by_arc[a].append(p.id)
    return by_arc


def _unknown(ids, limit: int, what: str) -> list[str]:
    return [f"unknown {what} {x}" for x in sorted(ids) if not 0 <= x < limit]


def check_coloring(tree: DirectedTree, paths: Sequence[Dipath], sol: Solution) -> list[str]:
    problems = _unknown(sol.color, len(paths), "dipath")
    problems += [f"dipath {p.id} has no colour" for p in paths if p.id not in sol.color]
    if problems:
        return problems
    by_arc = _load(tree, paths)
    omega = max((len(s) for s in by_arc), default=0)
    for a, users in enumerate(by_arc):
        owner: dict[int, int] = {}
        for p in users:
            c = sol.color[p]
            if c in owner:
                t, h = tree.arcs[a]
                problems.append(f"dipaths {owner[c]} and {p} share arc {a} ({t}->{h}) and colour {c}")
            else:
                owner[c] = p
    used = len(set(sol.color.values()))
    if sol.num_colors is not None and used != sol.num_colors:
        problems.append(f"{used} colours used but {sol.num_colors} declared")
    if sol.omega is not None and sol.omega != omega:
        problems.append(f"declared max arc load {sol.omega}, actual {omega}")
    if used > omega:
        problems.append(f"{used} colours used, max arc load is only {omega}")
    return problems


def check_multicut(tree: DirectedTree, paths: Sequence[Dipath], sol: Solution) -> list[str]:
    problems = _unknown(sol.packed, len(paths), "dipath") + _unknown(sol.cut, len(tree.arcs), "arc")
    if problems:
        return problems
    owner: dict[int, int] = {}
    for p in sorted(sol.packed):
        for a in paths[p].arcs:
            if a in owner:
                t, h = tree.arcs[a]
                problems.append(f"packed dipaths {owner[a]} and {p} share arc {a} ({t}->{h})")
            owner[a] = p
    for p in paths:
        if sol.cut.isdisjoint(p.arcs):
            problems.append(f"dipath {p.id} ({p.source}->{p.sink}) avoids the cut")
    if len(sol.packed) != len(sol.cut):
        problems.append(f"packing has {len(sol.packed)} dipaths but cut has {len(sol.cut)} arcs")
    return problems


def check_kernel(
    tree: DirectedTree, paths: Sequence[Dipath], rel: PriorityRelation, sol: Solution
) -> list[str]:
    """``rel`` must be validated against ``paths``."""
    problems = _unknown(sol.kernel, len(paths), "dipath")
    if problems:
        return problems
    owner: dict[int, int] = {}
    for p in sorted(sol.kernel):
        for a in paths[p].arcs:
            if a in owner:
                t, h = tree.arcs[a]
                problems.append(f"kernel dipaths {owner[a]} and {p} share arc {a} ({t}->{h})")
            owner[a] = p
    for q in paths:
        if q.id in sol.kernel:
            continue
        if not any(a in owner and rel.prefers(a, owner[a], q.id) for a in q.arcs):
            problems.append(f"dipath {q.id} is not dominated by any kernel dipath")
    for q, (a, p) in sorted(sol.witness.items()):
        if not 0 <= q < len(paths) or q in sol.kernel:
            problems.append(f"witness for dipath {q}, which is not an excluded dipath")
        elif a not in paths[q].arcs or owner.get(a) != p:
            problems.append(f"witness for dipath {q}: kernel dipath {p} does not hold arc {a} of it")
        elif not rel.prefers(a, p, q):
            problems.append(f"witness for dipath {q}: dipath {p} is below it on arc {a}")
    return problems
