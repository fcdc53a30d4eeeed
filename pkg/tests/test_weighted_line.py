"""Weighted sites on a line: split points, star spanners, grouped variant."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from geospanner.errors import InvalidOrderError
from geospanner.weighted_line import (
    GroupTree,
    Spanner1D,
    WeightedSite1D,
    build_2spanner,
    build_grouped_spanner,
    d_w,
    split_point,
)


def make_sites(positions, weights=None):
    if weights is None:
        weights = [0.0] * len(positions)
    return [
        WeightedSite1D(float(p), float(w), i)
        for i, (p, w) in enumerate(zip(positions, weights))
    ]


def graph_distances(sites: list[WeightedSite1D], sp: Spanner1D) -> np.ndarray:
    idx = {s.origin: i for i, s in enumerate(sites)}
    n = len(sites)
    rows, cols, vals = [], [], []
    for a, b in sp.edges:
        w = d_w(sites[idx[a]], sites[idx[b]])
        rows += [idx[a], idx[b]]
        cols += [idx[b], idx[a]]
        vals += [w, w]
    mat = csr_matrix((vals, (rows, cols)), shape=(n, n))
    return dijkstra(mat, directed=False)


def max_stretch(sites: list[WeightedSite1D], sp: Spanner1D) -> float:
    dg = graph_distances(sites, sp)
    idx = {s.origin: i for i, s in enumerate(sites)}
    worst = 1.0
    for i, a in enumerate(sites):
        for b in sites[i + 1 :]:
            base = d_w(a, b)
            if base == 0.0:
                continue
            worst = max(worst, dg[idx[a.origin], idx[b.origin]] / base)
    return worst


def test_split_three_unit_spaced():
    o, left, right, on_line = split_point(make_sites([0, 1, 2]))
    assert o == 1.0
    assert left == [0] and right == [2] and on_line == [1]


def test_split_two_sites_midpoint():
    o, left, right, on_line = split_point(make_sites([3, 7]))
    assert o == 5.0
    assert left == [0] and right == [1] and on_line == []


def test_split_balances_odd_random():
    rng = random.Random(11)
    positions = rng.sample(range(10_000), 101)
    o, left, right, on_line = split_point(make_sites(positions))
    assert len(left) == 50 and len(right) == 50 and len(on_line) == 1
    assert all(positions[i] < o for i in left)
    assert all(positions[i] > o for i in right)


def test_2spanner_three_unit_spaced():
    sites = make_sites([0, 1, 2])
    sp = build_2spanner(sites)
    assert sorted(sp.edges) == [(0, 1), (1, 2)]
    dg = graph_distances(sites, sp)
    assert dg[0, 2] == 2.0


def test_2spanner_frozen_weighted_case():
    sites = make_sites([0, 3, 4, 9], [2, 1, 0, 3])
    sp = build_2spanner(sites)
    assert sorted(sp.edges) == [(0, 1), (0, 2), (1, 2), (2, 3)]


def test_2spanner_single_site_empty():
    sp = build_2spanner(make_sites([4.0]))
    assert sp.edges == []


def test_2spanner_duplicate_origins_rejected():
    sites = [WeightedSite1D(0.0, 0.0, 3), WeightedSite1D(1.0, 0.0, 3)]
    with pytest.raises(InvalidOrderError):
        build_2spanner(sites)


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        WeightedSite1D(0.0, -0.5, 0)


def test_d_w_same_origin_is_zero():
    a = WeightedSite1D(1.0, 5.0, 7)
    assert d_w(a, a) == 0.0
    b = WeightedSite1D(4.0, 2.0, 8)
    assert d_w(a, b) == 5.0 + 3.0 + 2.0


def test_2spanner_stretch_and_size_random():
    rng = random.Random(303)
    for trial in range(20):
        n = rng.choice([2, 5, 8, 16, 33, 64])
        sites = make_sites(
            [rng.uniform(0, 100) for _ in range(n)],
            [rng.uniform(0, 10) for _ in range(n)],
        )
        sp = build_2spanner(sites)
        assert max_stretch(sites, sp) <= 2.0 + 1e-12
        assert len(sp.edges) <= n * math.ceil(math.log2(n))


def test_grouped_k1_matches_plain_top_star():
    rng = random.Random(7)
    sites = make_sites(
        [rng.uniform(0, 50) for _ in range(20)],
        [rng.uniform(0, 5) for _ in range(20)],
    )
    order = list(range(20))
    plain = build_2spanner(sites)
    grouped, _ = build_grouped_spanner(sites, order, k=1)
    top_plain = {e for e, lv in zip(plain.edges, plain.levels) if lv == 0}
    top_grouped = {e for e, lv in zip(grouped.edges, grouped.levels) if lv == 0}
    assert top_plain == top_grouped
    assert max_stretch(sites, grouped) <= 2.0 + 1e-12


@pytest.mark.parametrize("k,n", [(2, 16), (3, 27)])
def test_grouped_stretch_bound(k, n):
    rng = random.Random(100 * k + n)
    sites = make_sites(
        [rng.uniform(0, 100) for _ in range(n)],
        [rng.uniform(0, 8) for _ in range(n)],
    )
    order = list(range(n))
    rng.shuffle(order)
    sp, tree = build_grouped_spanner(sites, order, k)
    assert max_stretch(sites, sp) <= 2.0 * k + 1e-12
    assert tree.root.level == k


def test_grouped_tree_height_three():
    sites = make_sites(range(27))
    sp, tree = build_grouped_spanner(sites, list(range(27)), k=3)
    assert tree.root.level == 3
    depth = 0
    node = tree.root
    while node.children:
        node = node.children[0]
        depth += 1
    assert depth == 3


def test_group_tree_partitions_order():
    rng = random.Random(91)
    sites = make_sites(
        [rng.uniform(0, 30) for _ in range(19)],
        [rng.uniform(0, 3) for _ in range(19)],
    )
    order = list(range(19))
    rng.shuffle(order)
    _, tree = build_grouped_spanner(sites, order, k=2)
    assert tree.root.lo == 0 and tree.root.hi == len(tree.order)
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.children:
            assert node.children[0].lo == node.lo
            assert node.children[-1].hi == node.hi
            for a, b in zip(node.children, node.children[1:]):
                assert a.hi == b.lo
            stack.extend(node.children)
    leaves = tree.root.leaves()
    assert [tree.members(lf)[0] for lf in leaves] == list(tree.order)


def test_group_centers_dominate():
    # each node's center is its cheapest member measured from the split point
    rng = random.Random(55)
    sites = make_sites(
        [rng.uniform(0, 40) for _ in range(23)],
        [rng.uniform(0, 6) for _ in range(23)],
    )
    by_origin = {s.origin: s for s in sites}
    sp, _ = build_grouped_spanner(sites, list(range(23)), k=2)
    for tree in sp.group_trees:
        o = tree.split_position
        stack = [tree.root]
        while stack:
            node = stack.pop()
            members = tree.members(node)
            assert node.center in members
            best = min(
                by_origin[m].weight + abs(by_origin[m].position - o)
                for m in members
            )
            c = by_origin[node.center]
            assert c.weight + abs(c.position - o) <= best + 1e-12
            stack.extend(node.children)


def test_grouped_rejects_bad_order():
    sites = make_sites([0, 1, 2])
    with pytest.raises(InvalidOrderError):
        build_grouped_spanner(sites, [0, 1, 1], k=1)
    with pytest.raises(InvalidOrderError):
        build_grouped_spanner(sites, [0, 1], k=1)
