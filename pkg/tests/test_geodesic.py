"""Funnel shortest paths and shortest path trees in simple polygons."""

from __future__ import annotations

import math
import random

import pytest

from conftest import convex_gon, interior_points, square, u_polygon
from geospanner.errors import OutsidePolygonError
from geospanner.geodesic import (
    GeodesicPath,
    geodesic_distance,
    is_taut,
    shortest_path,
    shortest_path_tree,
)
from geospanner.generators import random_simple_polygon
from geospanner.triangulation import triangulate
from geospanner.visibility import domain_geodesic


def test_convex_single_segment():
    poly = convex_gon(8)
    p, q = (-3.0, 1.0), (4.0, -2.0)
    path = shortest_path(poly, None, p, q)
    assert path.vertices == (p, q)
    assert math.isclose(path.length, math.dist(p, q), rel_tol=1e-12)
    assert path.complexity == 1


def test_degenerate_same_point():
    poly = square()
    path = shortest_path(poly, None, (4.0, 4.0), (4.0, 4.0))
    assert path.vertices == ((4.0, 4.0),)
    assert path.length == 0.0
    assert path.complexity == 0


def test_u_polygon_bends_at_reflex_corners():
    poly = u_polygon()
    p, q = (1.5, 9.0), (8.5, 9.0)
    path = shortest_path(poly, triangulate(poly), p, q)
    assert (3.0, 3.0) in path.vertices and (7.0, 3.0) in path.vertices
    oracle = domain_geodesic(poly, p, q)
    assert abs(path.length - oracle.length) <= 1e-9 * oracle.length
    assert is_taut(poly, list(path.vertices))


def test_symmetry_up_to_reversal():
    poly = u_polygon()
    p, q = (0.5, 8.0), (9.5, 7.0)
    a = shortest_path(poly, None, p, q)
    b = shortest_path(poly, None, q, p)
    assert a.vertices == tuple(reversed(b.vertices))
    assert math.isclose(a.length, b.length, rel_tol=1e-12)


def test_outside_raises():
    with pytest.raises(OutsidePolygonError):
        shortest_path(square(), None, (5.0, 5.0), (20.0, 5.0))


def test_random_polygons_match_visibility_oracle():
    for seed in range(8):
        poly = random_simple_polygon(28 + 4 * seed, seed=seed + 400)
        pts = interior_points(poly, 10, seed=seed)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                fast = shortest_path(poly, None, pts[i], pts[j])
                slow = domain_geodesic(poly, pts[i], pts[j])
                assert abs(fast.length - slow.length) <= 1e-9 * max(1.0, slow.length)
                assert is_taut(poly, list(fast.vertices))


def test_triangle_inequality_random():
    rng = random.Random(17)
    for seed in range(4):
        poly = random_simple_polygon(30, seed=seed + 800)
        pts = interior_points(poly, 12, seed=seed + 3)
        for _ in range(60):
            p, r, q = rng.sample(pts, 3)
            dpq = geodesic_distance(poly, p, q)
            dpr = geodesic_distance(poly, p, r)
            drq = geodesic_distance(poly, r, q)
            assert dpq <= dpr + drq + 1e-9 * max(1.0, dpq)


def test_spt_convex_is_star():
    poly = convex_gon(9)
    src = (0.5, 0.25)
    spt = shortest_path_tree(poly, src)
    assert spt.points[0] == src
    for node in range(1, len(poly) + 1):
        assert spt.parent[node] == 0


def test_spt_distances_match_pairwise_paths():
    poly = u_polygon()
    src = (1.0, 8.5)
    spt = shortest_path_tree(poly, src)
    for node in range(1, len(poly) + 1):
        v = spt.points[node]
        want = shortest_path(poly, None, src, v).length
        assert abs(spt.distance[node] - want) <= 1e-9 * max(1.0, want)
    # parent visibility: the parent chain realizes the distance
    for node in range(1, len(spt.points)):
        par = spt.parent[node]
        gap = spt.distance[node] - spt.distance[par]
        assert math.isclose(
            gap, math.dist(spt.points[node], spt.points[par]), rel_tol=1e-9
        )


def test_spt_from_polygon_vertex():
    poly = u_polygon()
    src = poly.vertices[0]
    spt = shortest_path_tree(poly, src)
    # the source coincides with a polygon vertex and is merged with it
    assert len(spt.points) == len(poly)
    assert spt.distance[0] == 0.0
    assert set(poly.vertices) <= set(spt.points)


def test_spt_sites_attached_as_leaves():
    poly = u_polygon()
    sites = ((1.0, 6.0), (8.8, 8.0), (5.0, 1.5))
    spt = shortest_path_tree(poly, (1.5, 9.5), sites=sites)
    site_nodes = list(range(len(spt.points) - len(sites), len(spt.points)))
    for node, s in zip(site_nodes, sites):
        assert spt.points[node] == s
        assert all(spt.parent[o] != node for o in range(len(spt.points)))


def test_geodesic_path_from_points():
    gp = GeodesicPath.from_points([(0.0, 0.0), (3.0, 4.0)])
    assert gp.length == 5.0
    assert gp.complexity == 1
