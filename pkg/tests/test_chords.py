"""Chord projections, the chord shortest path tree, and detour paths."""

from __future__ import annotations

import math
import random

import pytest

from conftest import interior_points, square, u_polygon
from geospanner.chords import (
    Chord,
    ChordSPT,
    cut_polygon,
    group_order,
    pi_lambda_path,
    project_all,
)
from geospanner.errors import InvalidChordError
from geospanner.geodesic import geodesic_distance
from geospanner.generators import random_simple_polygon
from geospanner.simple_spanner import balanced_vertical_chord
from geospanner.trapezoids import decompose


def square_chord(x: float = 5.0) -> Chord:
    # edges of square(): 0 bottom, 1 right, 2 top, 3 left
    return Chord((x, 0.0), (x, 10.0), 0, 2)


def test_chord_basic_properties():
    ch = square_chord()
    assert ch.x == 5.0
    assert ch.length == 10.0
    assert ch.parameter((5.0, 3.0)) == 3.0


def test_chord_rejects_non_vertical():
    with pytest.raises(InvalidChordError):
        Chord((4.0, 0.0), (5.0, 10.0), 0, 2)
    with pytest.raises(InvalidChordError):
        Chord((5.0, 10.0), (5.0, 0.0), 2, 0)


def test_cut_square_in_half():
    poly = square()
    left, right, le, re_ = cut_polygon(poly, square_chord())
    assert abs(left.area() - 50.0) < 1e-9
    assert abs(right.area() - 50.0) < 1e-9
    # the chord is the last edge of both pieces
    assert {left.vertices[le], left.vertices[(le + 1) % len(left)]} == {
        (5.0, 0.0),
        (5.0, 10.0),
    }
    assert {right.vertices[re_], right.vertices[(re_ + 1) % len(right)]} == {
        (5.0, 0.0),
        (5.0, 10.0),
    }


def test_cut_conserves_area_on_random_polygons():
    for seed in range(6):
        poly = random_simple_polygon(26, seed=seed + 1200)
        sites = interior_points(poly, 12, seed=seed)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        left, right, _, _ = cut_polygon(poly, split.chord)
        total = left.area() + right.area()
        assert abs(total - poly.area()) <= 1e-9 * poly.area()


def test_direct_projection_in_square():
    poly = square()
    projs, spt = project_all(poly, square_chord(), [(2.0, 3.0)])
    (pr,) = projs
    assert pr.foot == (5.0, 3.0)
    assert pr.weight == 3.0
    assert pr.parameter == 3.0
    assert pr.side == -1
    assert spt.dist[spt.site_node[0]] == 3.0


def test_site_on_chord_projects_to_itself():
    poly = square()
    projs, _ = project_all(poly, square_chord(), [(5.0, 7.0)])
    (pr,) = projs
    assert pr.foot == (5.0, 7.0)
    assert pr.weight == 0.0
    assert pr.side == 0


def test_projection_around_reflex_corner():
    # site hidden in the left arm of the U; its shortest route to the chord
    # wraps the reflex corner at (3, 3)
    poly = u_polygon()
    ch = Chord((5.0, 0.0), (5.0, 3.0), 0, 4)
    projs, spt = project_all(poly, ch, [(1.0, 8.0)])
    (pr,) = projs
    node = spt.site_node[0]
    leg = spt.path_to_foot(node)
    assert (3.0, 3.0) in leg
    direct = geodesic_distance(poly, (1.0, 8.0), pr.foot)
    assert abs(pr.weight - direct) <= 1e-9 * direct


def test_projection_optimality_sampled():
    # the projection weight is the min geodesic distance to the chord
    poly = u_polygon()
    ch = Chord((5.0, 0.0), (5.0, 3.0), 0, 4)
    sites = [(0.5, 9.0), (2.0, 5.0), (8.0, 7.0), (4.0, 1.0), (9.5, 0.5)]
    projs, _ = project_all(poly, ch, sites)
    for pr in projs:
        best = min(
            geodesic_distance(poly, sites[pr.site], (5.0, 3.0 * t / 300))
            for t in range(301)
        )
        assert pr.weight <= best + 1e-6


def test_spt_site_distances_equal_weights():
    for seed in range(5):
        poly = random_simple_polygon(24, seed=seed + 90)
        sites = interior_points(poly, 14, seed=seed + 7)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        projs, spt = project_all(poly, split.chord, sites, list(split.sides))
        for pr in projs:
            node = spt.site_node[pr.site]
            assert math.isclose(spt.dist[node], pr.weight, rel_tol=1e-12, abs_tol=1e-12)
            assert spt.kind[node] == ChordSPT.SITE


def test_group_order_is_permutation():
    for seed in range(6):
        poly = random_simple_polygon(22, seed=seed + 50)
        sites = interior_points(poly, 17, seed=seed + 3)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        _, spt = project_all(poly, split.chord, sites, list(split.sides))
        order = group_order(spt)
        assert sorted(order) == list(range(len(sites)))


def test_group_order_feet_monotone_per_side():
    poly = square()
    rng = random.Random(4)
    sites = [(rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5)) for _ in range(30)]
    projs, spt = project_all(poly, square_chord(), sites)
    by_site = {pr.site: pr for pr in projs}
    order = group_order(spt)
    left = [by_site[s].parameter for s in order if by_site[s].side < 0]
    right = [by_site[s].parameter for s in order if by_site[s].side > 0]
    assert left == sorted(left)
    assert right == sorted(right, reverse=True)


def test_group_order_keeps_subtrees_contiguous():
    # all sites reaching the chord through one reflex corner stay adjacent
    for seed in range(6):
        poly = random_simple_polygon(26, seed=seed + 500)
        sites = interior_points(poly, 20, seed=seed)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        _, spt = project_all(poly, split.chord, sites, list(split.sides))
        order = group_order(spt)
        pos = {sid: k for k, sid in enumerate(order)}
        node_of = spt.site_node
        for v in range(len(spt.points)):
            if spt.kind[v] != ChordSPT.VERTEX:
                continue
            members = [
                sid for sid, nd in node_of.items() if _has_ancestor(spt, nd, v)
            ]
            if len(members) < 2:
                continue
            ranks = sorted(pos[s] for s in members)
            assert ranks == list(range(ranks[0], ranks[0] + len(ranks)))


def test_group_order_splits_with_the_tree():
    # restricting the order to one side's sites matches the order obtained by
    # projecting that side alone
    for seed in range(4):
        poly = random_simple_polygon(24, seed=seed + 2100)
        sites = interior_points(poly, 16, seed=seed)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        _, spt = project_all(poly, split.chord, sites, list(split.sides))
        full = group_order(spt)
        for side in (-1, 1):
            members = [i for i in range(len(sites)) if split.sides[i] == side]
            if len(members) < 2:
                continue
            sub_sites = [sites[i] for i in members]
            _, sub_spt = project_all(
                poly, split.chord, sub_sites, [side] * len(members)
            )
            sub_order = [members[i] for i in group_order(sub_spt)]
            restricted = [s for s in full if split.sides[s] == side]
            assert restricted == sub_order


def _has_ancestor(spt: ChordSPT, node: int, anc: int) -> bool:
    while node != -1:
        if node == anc:
            return True
        node = spt.parent[node]
    return False


def test_pi_lambda_disjoint_feet():
    poly = square()
    sites = [(2.0, 2.0), (8.0, 8.0)]
    projs, spt = project_all(poly, square_chord(), sites)
    path, via = pi_lambda_path(sites[0], sites[1], projs[0], projs[1], spt)
    assert via == ((5.0, 2.0), (5.0, 8.0))
    assert path.vertices == ((2.0, 2.0), (5.0, 2.0), (5.0, 8.0), (8.0, 8.0))
    assert math.isclose(path.length, 3.0 + 6.0 + 3.0, rel_tol=1e-12)


def test_pi_lambda_shared_foot_collapses():
    poly = square()
    sites = [(2.0, 3.0), (8.0, 3.0)]
    projs, spt = project_all(poly, square_chord(), sites)
    path, via = pi_lambda_path(sites[0], sites[1], projs[0], projs[1], spt)
    assert via == ((5.0, 3.0),)
    assert path.vertices == ((2.0, 3.0), (8.0, 3.0))
    assert math.isclose(path.length, 6.0, rel_tol=1e-12)


def test_pi_lambda_length_sandwich():
    for seed in range(5):
        poly = random_simple_polygon(24, seed=seed + 777)
        sites = interior_points(poly, 10, seed=seed + 1)
        split = balanced_vertical_chord(poly, decompose(poly), sites)
        projs, spt = project_all(poly, split.chord, sites, list(split.sides))
        by_site = {pr.site: pr for pr in projs}
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                path, _ = pi_lambda_path(
                    sites[i], sites[j], by_site[i], by_site[j], spt
                )
                pi, pj = by_site[i], by_site[j]
                if pi.foot != pj.foot:
                    want = pi.weight + abs(pi.parameter - pj.parameter) + pj.weight
                    assert math.isclose(path.length, want, rel_tol=1e-12)
                d = geodesic_distance(poly, sites[i], sites[j])
                assert path.length >= d - 1e-9 * max(1.0, d)
                assert math.isclose(
                    path.length,
                    sum(
                        math.dist(a, b)
                        for a, b in zip(path.vertices, path.vertices[1:])
                    ),
                    rel_tol=1e-9,
                    abs_tol=1e-12,
                )
