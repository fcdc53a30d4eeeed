"""Visibility graphs and Dijkstra-based geodesics in domains with holes."""

from __future__ import annotations

import math

import pytest

from conftest import convex_gon, interior_points, square, three_hole_domain
from geospanner.errors import OutsidePolygonError
from geospanner.polygon import PolygonalDomain, SimplePolygon
from geospanner.visibility import (
    domain_geodesic,
    engine_for,
    visibility_graph,
)


def one_hole_domain() -> PolygonalDomain:
    outer = square(10)
    hole = SimplePolygon(((4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0)))
    return PolygonalDomain(outer, (hole,))


def test_convex_graph_is_complete():
    poly = convex_gon(7)
    extras = [(0.1, 0.2), (-0.4, 0.3)]
    g = visibility_graph(poly, extras)
    assert g.n == 9
    dense = g.matrix.toarray()
    for i in range(g.n):
        assert dense[i, i] == 0.0
        for j in range(g.n):
            assert dense[i, j] == dense[j, i]
            if i != j:
                assert math.isclose(
                    dense[i, j], math.dist(g.points[i], g.points[j]), rel_tol=1e-12
                )


def test_hole_blocks_lines_of_sight():
    dom = one_hole_domain()
    g = visibility_graph(dom, [(2.0, 5.0), (8.0, 5.0)])
    pts = list(g.points)
    a, b = pts.index((2.0, 5.0)), pts.index((8.0, 5.0))
    dense = g.matrix.toarray()
    assert dense[a, b] == 0.0
    # both extras still see the hole corners on their own side
    assert dense[a, pts.index((4.0, 4.0))] > 0.0
    assert dense[b, pts.index((6.0, 6.0))] > 0.0


def test_convex_geodesic_is_segment():
    poly = convex_gon(9)
    p, q = (-2.0, 1.0), (3.0, -4.0)
    path = domain_geodesic(poly, p, q)
    assert path.vertices == (p, q)
    assert math.isclose(path.length, math.dist(p, q), rel_tol=1e-12)


def test_hole_detour_exceeds_straight_line():
    dom = one_hole_domain()
    p, q = (2.0, 5.0), (8.0, 5.0)
    path = domain_geodesic(dom, p, q)
    assert path.length > math.dist(p, q) + 0.1
    # path bends at hole corners only
    for v in path.vertices[1:-1]:
        assert v in ((4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0))


def test_geodesic_rejects_outside_points():
    dom = one_hole_domain()
    with pytest.raises(OutsidePolygonError):
        domain_geodesic(dom, (5.0, 5.0), (1.0, 1.0))
    with pytest.raises(OutsidePolygonError):
        domain_geodesic(dom, (1.0, 1.0), (20.0, 1.0))


def test_ring_rotation_invariance():
    outer = square(10)
    hole_pts = ((4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0))
    p, q = (1.0, 1.0), (9.0, 9.0)
    lengths = []
    for shift in range(4):
        rolled = hole_pts[shift:] + hole_pts[:shift]
        dom = PolygonalDomain(outer, (SimplePolygon(rolled),))
        lengths.append(domain_geodesic(dom, p, q).length)
    for v in lengths[1:]:
        assert abs(v - lengths[0]) <= 1e-9 * lengths[0]


def test_three_hole_domain_pairwise_consistency():
    dom = three_hole_domain()
    pts = interior_points(dom, 8, seed=2)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a = domain_geodesic(dom, pts[i], pts[j])
            b = domain_geodesic(dom, pts[j], pts[i])
            assert abs(a.length - b.length) <= 1e-9 * max(1.0, a.length)
            assert a.length >= math.dist(pts[i], pts[j]) - 1e-12


def test_coinciding_extras_share_nodes():
    dom = one_hole_domain()
    eng = engine_for(dom)
    extras = [(2.0, 5.0), (2.0, 5.0), (8.0, 5.0)]
    pts, _, extra_idx = eng.graph_with(extras)
    assert extra_idx[0] == extra_idx[1]
    assert extra_idx[2] != extra_idx[0]
    assert pts[extra_idx[0]] == (2.0, 5.0)


def test_engine_cache_returns_same_object():
    dom = one_hole_domain()
    assert engine_for(dom) is engine_for(dom)
