"""Recursive chord spanner in a simple polygon: balance, stretch, structure."""

from __future__ import annotations

import math

from conftest import convex_gon, interior_points, square, u_polygon
from geospanner.chords import ChordSPT, pi_lambda_path
from geospanner.geodesic import geodesic_distance
from geospanner.generators import random_simple_polygon
from geospanner.metrics import all_pairs_geodesic, measure
from geospanner.simple_spanner import balanced_vertical_chord, build_simple_spanner
from geospanner.trapezoids import decompose

PLAIN_BOUND = 2 * math.sqrt(2)


def stretch(poly, sites, **kw) -> float:
    graph = build_simple_spanner(poly, sites, **kw)
    report = measure(graph, all_pairs_geodesic(poly, sites))
    assert report.connected
    return report.max_ratio


def test_balance_three_sites_square():
    poly = square()
    sites = [(2.0, 2.0), (5.0, 7.0), (8.0, 3.0)]
    split = balanced_vertical_chord(poly, decompose(poly), sites)
    assert 1 <= len(split.left) <= 2
    assert 1 <= len(split.right) <= 2


def test_balance_single_cell_exact_third():
    poly = square()
    sites = [(0.1 + 9.8 * i / 98.0, 5.0 + (i % 7) * 0.3) for i in range(99)]
    split = balanced_vertical_chord(poly, decompose(poly), sites)
    assert len(split.left) == 33
    assert len(split.right) == 66


def test_balance_random_corpus():
    for seed in range(25):
        poly = random_simple_polygon(20 + (seed % 5) * 8, seed=seed + 4000)
        sites = interior_points(poly, 6 + (seed % 9) * 5, seed=seed)
        n = len(sites)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        cap = -(-2 * n // 3)
        assert 0 < len(split.left) <= cap
        assert 0 < len(split.right) <= cap
        assert len(split.left) + len(split.right) == n


def test_two_sites_single_geodesic_edge():
    poly = u_polygon()
    sites = [(1.0, 9.0), (9.0, 9.0)]
    graph = build_simple_spanner(poly, sites)
    assert graph.edge_count == 1
    path = graph.edges[(0, 1)]
    d = geodesic_distance(poly, *sites)
    assert abs(path.length - d) <= 1e-9 * d


def test_convex_edges_are_segments():
    poly = convex_gon(10)
    sites = interior_points(poly, 16, seed=5)
    graph = build_simple_spanner(poly, sites)
    for (i, j), path in graph.edges.items():
        assert path.complexity == 1
        assert path.vertices == (sites[i], sites[j])
    report = measure(graph, all_pairs_geodesic(poly, sites))
    assert report.max_ratio <= PLAIN_BOUND + 1e-9


def test_plain_stretch_random():
    for seed in range(6):
        poly = random_simple_polygon(24, seed=seed + 60)
        sites = interior_points(poly, 20, seed=seed)
        assert stretch(poly, sites) <= PLAIN_BOUND + 1e-9


def test_plain_size_bound():
    for seed in range(4):
        poly = random_simple_polygon(22, seed=seed + 160)
        n = 40 + 13 * seed
        sites = interior_points(poly, n, seed=seed)
        graph = build_simple_spanner(poly, sites)
        budget = 2 * n * (math.ceil(math.log2(n)) + 1) ** 2
        assert graph.edge_count <= budget


def test_grouped_u_polygon_k2():
    poly = u_polygon()
    sites = interior_points(poly, 40, seed=9)
    assert stretch(poly, sites, variant="grouped", k=2) <= 4 * math.sqrt(2) + 1e-9


def test_grouped_stretch_by_k():
    poly = random_simple_polygon(26, seed=71)
    sites = interior_points(poly, 24, seed=8)
    for k in (1, 2, 3):
        bound = PLAIN_BOUND * k
        assert stretch(poly, sites, variant="grouped", k=k) <= bound + 1e-9


def test_alternate_axes_still_spans():
    poly = random_simple_polygon(24, seed=510)
    sites = interior_points(poly, 22, seed=11)
    graph = build_simple_spanner(poly, sites, alternate_axes=True)
    report = measure(graph, all_pairs_geodesic(poly, sites))
    assert report.connected
    assert report.max_ratio <= PLAIN_BOUND + 1e-9
    for (i, j), path in graph.edges.items():
        assert path.vertices[0] == sites[i]
        assert path.vertices[-1] == sites[j]


def test_trace_records_balance():
    poly = random_simple_polygon(28, seed=88)
    sites = interior_points(poly, 30, seed=3)
    graph = build_simple_spanner(poly, sites, collect_trace=True)
    trace = graph.meta["trace"]
    assert trace
    for rec in trace:
        if "sides" not in rec:
            assert len(rec["ids"]) == 2
            continue
        n = len(rec["ids"])
        nl = sum(1 for s in rec["sides"] if s <= 0)
        nr = n - nl
        cap = -(-2 * n // 3)
        assert 0 < nl <= cap and 0 < nr <= cap


def _steiner(spt: ChordSPT, nodes: list[int]) -> tuple[int, set[int]]:
    root = nodes[0]
    for nd in nodes[1:]:
        root = spt.lca(root, nd)
    members = {root}
    for nd in nodes:
        cur = nd
        while cur != root:
            members.add(cur)
            cur = spt.parent[cur]
    return root, members


def test_grouped_two_tree_property():
    # at each group level, a polygon vertex sits strictly inside at most two
    # of the groups' minimal subtrees
    for seed in (14, 47):
        poly = random_simple_polygon(30, seed=seed)
        sites = interior_points(poly, 27, seed=seed + 1)
        graph = build_simple_spanner(
            poly, sites, variant="grouped", k=2, collect_trace=True
        )
        for rec in graph.meta["trace"]:
            tree = rec.get("group_tree")
            if tree is None:
                continue
            spt = rec["spt"]
            by_level: dict[int, list] = {}
            stack = [tree.root]
            while stack:
                node = stack.pop()
                by_level.setdefault(node.level, []).append(node)
                stack.extend(node.children)
            for level, groups in by_level.items():
                if level == 0:
                    continue
                subtrees = []
                for g in groups:
                    nodes = [spt.site_node[s] for s in tree.members(g)]
                    subtrees.append(_steiner(spt, nodes))
                for v in range(len(spt.points)):
                    if spt.kind[v] != ChordSPT.VERTEX:
                        continue
                    hits = sum(
                        1 for root, members in subtrees if v in members and v != root
                    )
                    assert hits <= 2


def test_grouped_edges_bend_inside_their_group():
    poly = random_simple_polygon(30, seed=240)
    sites = interior_points(poly, 25, seed=6)
    graph = build_simple_spanner(
        poly, sites, variant="grouped", k=2, collect_trace=True
    )
    for rec in graph.meta["trace"]:
        if rec.get("group_tree") is None:
            continue
        spt = rec["spt"]
        ids = rec["ids"]
        projs = rec["projections"]
        for a, b in rec["edges_local"]:
            path, _ = pi_lambda_path(
                sites[ids[a]], sites[ids[b]], projs[a], projs[b], spt
            )
            allowed = set(spt.path_to_foot(spt.site_node[a]))
            allowed |= set(spt.path_to_foot(spt.site_node[b]))
            for v in path.vertices[1:-1]:
                assert v in allowed or v[0] == rec["chord"].x


def test_grouped_complexity_recurrence():
    poly = random_simple_polygon(34, seed=321)
    m = len(poly)
    sites = interior_points(poly, 36, seed=4)
    graph = build_simple_spanner(
        poly, sites, variant="grouped", k=1, collect_trace=True
    )
    for rec in graph.meta["trace"]:
        tree = rec.get("group_tree")
        if tree is None:
            continue
        groups = tree.root.children or [tree.root]
        ids = rec["ids"]
        total = 0
        for g in groups:
            members = set(tree.members(g))
            worst = 0
            for a, b in rec["edges_local"]:
                if a in members and b in members:
                    key = (min(ids[a], ids[b]), max(ids[a], ids[b]))
                    path = graph.edges.get(key)
                    if path is not None:
                        worst = max(worst, path.complexity)
            total += worst
        assert total <= 2 * m + 6 * len(groups)
