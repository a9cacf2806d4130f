from __future__ import annotations

import pytest
from hypothesis import given, settings

from dipathtree.errors import (
    BadVertexId,
    DuplicateArc,
    EmptyDipath,
    NotADipath,
    NotATree,
    PathTreeMismatch,
    SelfLoop,
)
from dipathtree.tree import (
    Dipath,
    build_tree,
    index_paths,
    make_dipath,
    make_paths,
    resolve_dipath,
    root_tree,
    work_bound,
)

from helpers import cases


def test_smallest_tree():
    t = build_tree(2, [(0, 1)])
    assert list(t.arcs) == [(0, 1)]
    assert t.arc_between(1, 0) == 0
    assert t.out_neighbours(0) == [1] and t.out_neighbours(1) == []


def test_single_vertex_tree():
    t = build_tree(1, [])
    assert t.n == 1 and t.degree(0) == 0


@pytest.mark.parametrize(
    "n, arcs, error",
    [
        (3, [(0, 1), (1, 0)], DuplicateArc),
        (4, [(0, 1), (1, 2), (2, 0)], NotATree),
        (3, [(0, 1)], NotATree),
        (2, [(0, 0)], SelfLoop),
        (2, [(0, 5)], BadVertexId),
        (0, [], NotATree),
    ],
)
def test_build_tree_rejects(n, arcs, error):
    with pytest.raises(error):
        build_tree(n, arcs)


def test_resolve_forward_chain():
    t = build_tree(3, [(0, 1), (1, 2)])
    assert resolve_dipath(t, 0, 2).vertices == (0, 1, 2)
    with pytest.raises(NotADipath):
        resolve_dipath(t, 2, 0)


def test_resolve_through_centre():
    t = build_tree(3, [(0, 1), (2, 0)])
    p = resolve_dipath(t, 2, 1)
    assert p.vertices == (2, 0, 1)
    assert p.arcs == (1, 0)
    assert (p.source, p.sink, len(p)) == (2, 1, 2)


def test_zero_arc_paths_are_rejected():
    t = build_tree(3, [(0, 1), (1, 2)])
    with pytest.raises(EmptyDipath):
        make_dipath(t, [1])
    with pytest.raises(EmptyDipath):
        resolve_dipath(t, 1, 1)


def test_make_dipath_checks_walk():
    t = build_tree(4, [(0, 1), (1, 2), (1, 3)])
    with pytest.raises(NotADipath):
        make_dipath(t, [0, 2])
    with pytest.raises(NotADipath):
        make_dipath(t, [2, 1, 0])
    with pytest.raises(NotADipath):
        make_dipath(t, [0, 1, 0])


def test_make_paths_reads_pairs_and_sequences():
    t = build_tree(4, [(0, 1), (1, 2), (2, 3)])
    ps = make_paths(t, [(0, 3), [1, 2], [0, 1, 2]])
    assert [p.vertices for p in ps] == [(0, 1, 2, 3), (1, 2), (0, 1, 2)]
    assert [p.id for p in ps] == [0, 1, 2]


def test_root_chain():
    t = build_tree(3, [(0, 1), (1, 2)])
    r = root_tree(t, 0)
    assert list(r.father) == [None, 0, 1]
    assert list(r.order) == [2, 1, 0]
    r1 = root_tree(t, 1)
    assert list(r1.father) == [1, None, 1]
    with pytest.raises(BadVertexId):
        root_tree(t, 3)


def test_q_sets_on_chain():
    t = build_tree(3, [(0, 1), (1, 2)])
    [p] = make_paths(t, [[0, 1, 2]])
    idx = index_paths(root_tree(t, 0), [p])
    assert idx.q_sets[1] == {0} and idx.q_sets[2] == {0}
    assert not idx.q_sets[0]


def test_index_rejects_misnumbered_paths():
    t = build_tree(2, [(0, 1)])
    with pytest.raises(PathTreeMismatch):
        index_paths(root_tree(t), [Dipath(3, (0, 1), (0,))])


def test_disjoint_paths_have_unit_load():
    t = build_tree(4, [(0, 1), (1, 2), (2, 3)])
    idx = index_paths(root_tree(t), make_paths(t, [[0, 1], [2, 3]]))
    assert max(len(s) for s in idx.by_arc) <= 1


@settings(max_examples=200, deadline=None)
@given(cases(max_n=12, max_p=15))
def test_index_consistency(case):
    idx = case.index()
    rooted = idx.rooted
    for p in case.paths:
        for a in range(len(case.tree.arcs)):
            assert (p.id in idx.by_arc[a]) == (a in p.arcs)
        for v in range(case.tree.n):
            assert (p.id in idx.by_vertex[v]) == (v in p.vertices)
    assert sum(len(s) for s in idx.by_arc) == sum(len(p.arcs) for p in case.paths)
    assert sum(len(s) for s in idx.by_vertex) <= sum(len(p.arcs) + 1 for p in case.paths)
    for v in range(case.tree.n):
        if v == rooted.root:
            assert not idx.q_sets[v]
            continue
        assert idx.q_sets[v] <= idx.by_vertex[v] & idx.by_vertex[rooted.father[v]]
        assert idx.q_sets[v] == idx.by_arc[rooted.father_arc[v]]


@settings(max_examples=100, deadline=None)
@given(cases(max_n=12, max_p=10))
def test_rooting_is_consistent(case):
    r = case.rooted
    seen = set()
    for v in r.order:
        assert all(w in seen for w in r.children[v])
        seen.add(v)
    assert seen == set(range(case.tree.n))
    for v in range(case.tree.n):
        if v != r.root:
            assert v in r.children[r.father[v]]
            assert r.depth[v] == r.depth[r.father[v]] + 1
    other = index_paths(root_tree(case.tree, (case.root + 1) % case.tree.n), case.paths)
    idx = case.index()
    assert other.by_arc == idx.by_arc and other.by_vertex == idx.by_vertex


def test_work_bound_counts_degree_times_load():
    t = build_tree(3, [(0, 1), (1, 2)])
    idx = index_paths(root_tree(t), make_paths(t, [[0, 1, 2], [1, 2]]))
    # loads: vertex 0 -> 1, vertex 1 -> 2, vertex 2 -> 2; degrees 1, 2, 1
    assert work_bound(idx) == 1 * 1 + 2 * 2 + 1 * 2
    assert work_bound(idx, 2) == 1 * 1 + 2 * 4 + 1 * 4
