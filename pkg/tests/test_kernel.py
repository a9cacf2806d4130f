from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dipathtree import oracle
from dipathtree.errors import IncompleteOrder, InconsistentOrder
from dipathtree.generate import random_per_arc_orders
from dipathtree.instrument import count_steps
from dipathtree.kernel import (
    PriorityRelation,
    compute_uninteresting_sets,
    kernel,
    validate_priorities,
)
from dipathtree.tree import Dipath, build_tree, index_paths, make_paths, root_tree, work_bound

from helpers import STEP_CONSTANT, cases, seeded_case, subtree


def _solve(tree, paths, rel, root=0):
    rooted = root_tree(tree, root)
    idx = index_paths(rooted, paths)
    return kernel(rooted, idx, validate_priorities(paths, idx, rel))


def test_ranking_becomes_per_arc_orders():
    t = build_tree(3, [(0, 1), (1, 2)])
    paths = make_paths(t, [[0, 1, 2], [0, 1]])
    idx = index_paths(root_tree(t), paths)
    rel = validate_priorities(paths, idx, PriorityRelation.ranking([1, 0]))
    assert rel.per_arc_order[0] == (1, 0)
    assert rel.per_arc_order[1] == (0,)


def test_inconsistent_orders_are_rejected():
    t = build_tree(3, [(0, 1), (1, 2)])
    paths = make_paths(t, [[0, 1, 2], [0, 1, 2]])
    idx = index_paths(root_tree(t), paths)
    with pytest.raises(InconsistentOrder):
        validate_priorities(paths, idx, PriorityRelation.per_arc({0: [0, 1], 1: [1, 0]}))
    with pytest.raises(IncompleteOrder):
        validate_priorities(paths, idx, PriorityRelation.per_arc({0: [0, 1], 1: [1]}))
    with pytest.raises(IncompleteOrder):
        validate_priorities(paths, idx, PriorityRelation.ranking([0]))


def test_lone_dipath_on_a_chain():
    t = build_tree(3, [(0, 1), (1, 2)])
    paths = make_paths(t, [[0, 1, 2]])
    rooted = root_tree(t)
    idx = index_paths(rooted, paths)
    rel = validate_priorities(paths, idx, PriorityRelation.ranking([0]))
    assert all(not s for s in compute_uninteresting_sets(rooted, idx, rel).sets)
    assert kernel(rooted, idx, rel).kernel == {0}


def test_higher_dipath_on_the_shared_arc_wins():
    t = build_tree(3, [(0, 1), (1, 2)])
    paths = make_paths(t, [[0, 1], [0, 1, 2]])
    res = _solve(t, paths, PriorityRelation.per_arc({0: [0, 1], 1: [1]}))
    assert res.kernel == {0}
    assert res.witness == {1: (0, 0)}


def test_disjoint_dipaths_form_the_kernel():
    t = build_tree(4, [(0, 1), (1, 2), (2, 3)])
    paths = make_paths(t, [[0, 1], [1, 2], [2, 3]])
    assert _solve(t, paths, PriorityRelation.ranking([2, 0, 1])).kernel == {0, 1, 2}


def _check(case, adversarial: bool) -> None:
    idx = case.index()
    rel = case.relation(adversarial)
    checked = validate_priorities(case.paths, idx, rel)
    res = kernel(idx.rooted, idx, checked)
    assert oracle.verify_kernel(case.tree, case.paths, rel, res.kernel)
    assert res.kernel in oracle.enumerate_kernels(case.tree, case.paths, rel)
    for q, (a, p) in res.witness.items():
        assert p in res.kernel and a in case.paths[q].arcs and a in case.paths[p].arcs
        assert checked.prefers(a, p, q)
    assert set(res.witness) | res.kernel == {p.id for p in case.paths}


@settings(max_examples=200, deadline=None)
@given(cases(max_n=10, max_p=10), st.booleans())
def test_kernel_against_enumeration(case, adversarial):
    _check(case, adversarial)


def uninteresting_sets_match_kernel_definition(case, adversarial: bool) -> bool:
    """P is uninteresting at v iff no kernel of the subtree instance plus P contains P."""
    idx = case.index()
    rooted = idx.rooted
    rel = validate_priorities(case.paths, idx, case.relation(adversarial))
    unint = compute_uninteresting_sets(rooted, idx, rel)
    for v in range(case.tree.n):
        if v == rooted.root:
            continue
        below = subtree(rooted, v)
        inside = [q.id for q in case.paths if set(q.vertices) <= below]
        for p in idx.q_sets[v]:
            ids = inside + [p]
            sub = [Dipath(i, case.paths[q].vertices, case.paths[q].arcs) for i, q in enumerate(ids)]
            orders = {
                a: tuple(ids.index(q) for q in order if q in ids)
                for a, order in rel.per_arc_order.items()
            }
            kernels = oracle.enumerate_kernels(case.tree, sub, PriorityRelation.per_arc(orders))
            possible = any(len(ids) - 1 in K for K in kernels)
            if possible == (p in unint[v]):
                return False
    return True


@settings(max_examples=150, deadline=None)
@given(cases(max_n=10, max_p=10), st.booleans())
def test_uninteresting_sets_match_kernel_definition(case, adversarial):
    assert uninteresting_sets_match_kernel_definition(case, adversarial)


def _pairwise_consistent(orders) -> bool:
    above = {}
    for a, order in orders.items():
        for i, p in enumerate(order):
            for q in order[i + 1 :]:
                if (q, p) in above:
                    return False
                above[(p, q)] = a
    return True


@settings(max_examples=300, deadline=None)
@given(cases(max_n=10, max_p=10), st.randoms(use_true_random=False))
def test_consistency_check_matches_pairwise_definition(case, rng):
    idx = case.index()
    orders = {}
    for a, users in enumerate(idx.by_arc):
        order = sorted(users)
        rng.shuffle(order)
        orders[a] = tuple(order)
    try:
        validate_priorities(case.paths, idx, PriorityRelation.per_arc(orders))
        accepted = True
    except InconsistentOrder:
        accepted = False
    assert accepted == _pairwise_consistent(orders)


def _has_cycle(rel: PriorityRelation) -> bool:
    above: dict[int, set[int]] = {}
    for order in rel.per_arc_order.values():
        for i, p in enumerate(order):
            above.setdefault(p, set()).update(order[i + 1 :])
    state: dict[int, int] = {}

    def visit(x: int) -> bool:
        state[x] = 1
        for y in above.get(x, ()):
            if state.get(y) == 1 or (y not in state and visit(y)):
                return True
        state[x] = 2
        return False

    return any(x not in state and visit(x) for x in list(above))


def test_adversarial_orders_reach_beyond_rankings():
    """Four dipaths crossing a star form a 4-cycle; some generated orders orient it cyclically."""
    t = build_tree(5, [(1, 0), (2, 0), (0, 3), (0, 4)])
    paths = make_paths(t, [[1, 0, 3], [1, 0, 4], [2, 0, 4], [2, 0, 3]])
    idx = index_paths(root_tree(t), paths)
    cyclic = 0
    for seed in range(200):
        rel = random_per_arc_orders(random.Random(seed), t, paths)
        cyclic += _has_cycle(rel)
        res = kernel(idx.rooted, idx, validate_priorities(paths, idx, rel))
        assert res.kernel in oracle.enumerate_kernels(t, paths, rel)
    assert cyclic > 0


def test_step_count_within_quadratic_budget():
    for seed in range(40):
        case = seeded_case(seed, max_n=40, max_p=60)
        idx = case.index()
        rel = validate_priorities(case.paths, idx, case.relation(seed % 2 == 0))
        with count_steps() as ops:
            kernel(idx.rooted, idx, rel, check=False)
        assert ops.steps <= STEP_CONSTANT * work_bound(idx, 2)
