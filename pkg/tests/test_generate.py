from __future__ import annotations

import random

import pytest

from dipathtree.generate import SHAPES, random_dipaths, random_per_arc_orders, random_ranking, random_tree
from dipathtree.kernel import validate_priorities
from dipathtree.tree import index_paths, root_tree


@pytest.mark.parametrize("shape", SHAPES)
def test_same_seed_same_instance(shape):
    def make(seed):
        rng = random.Random(seed)
        tree = random_tree(rng, 15, shape)
        paths = random_dipaths(rng, tree, 12, shape)
        return tree.arcs, [p.vertices for p in paths]

    assert make(7) == make(7)


@pytest.mark.parametrize("shape", SHAPES)
def test_dipaths_follow_arcs(shape):
    for seed in range(30):
        rng = random.Random(seed)
        tree = random_tree(rng, rng.randint(2, 20), shape)
        assert len(tree.arcs) == tree.n - 1
        paths = random_dipaths(rng, tree, 10, shape, rng.choice([None, 2]))
        assert [p.id for p in paths] == list(range(len(paths)))
        for p in paths:
            assert len(set(p.vertices)) == len(p.vertices) >= 2
            for (x, y), a in zip(zip(p.vertices, p.vertices[1:]), p.arcs):
                assert tree.arcs[a] == (x, y)


def test_chain_and_star_shapes():
    rng = random.Random(1)
    chain = random_tree(rng, 6, "chain")
    assert {frozenset(a) for a in chain.arcs} == {frozenset((i, i + 1)) for i in range(5)}
    star = random_tree(rng, 6, "star")
    assert all(0 in a for a in star.arcs)
    with pytest.raises(ValueError):
        random_tree(rng, 4, "spiral")


def test_max_len_bounds_walks():
    rng = random.Random(3)
    tree = random_tree(rng, 30, "random")
    assert all(len(p.arcs) <= 2 for p in random_dipaths(rng, tree, 40, "random", 2))


def test_generated_priorities_are_consistent():
    for seed in range(100):
        rng = random.Random(seed)
        shape = SHAPES[seed % len(SHAPES)]
        tree = random_tree(rng, rng.randint(1, 15), shape)
        paths = random_dipaths(rng, tree, rng.randint(0, 20), shape) if tree.n > 1 else []
        idx = index_paths(root_tree(tree), paths)
        for rel in (random_ranking(rng, len(paths)), random_per_arc_orders(rng, tree, paths)):
            checked = validate_priorities(paths, idx, rel)
            for a, order in checked.per_arc_order.items():
                assert sorted(order) == sorted(p.id for p in paths if a in p.arcs)
