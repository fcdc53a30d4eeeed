"""Ear-clipping triangulation: counts, area conservation, dual tree."""

from __future__ import annotations

from conftest import convex_gon, square, u_polygon
from geospanner.generators import random_simple_polygon
from geospanner.polygon import SimplePolygon
from geospanner.triangulation import triangulate


def tri_area(poly: SimplePolygon, t: tuple[int, int, int]) -> float:
    (ax, ay), (bx, by), (cx, cy) = (poly.vertices[i] for i in t)
    return 0.5 * abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def dual_edges(tri) -> set[tuple[int, int]]:
    out = set()
    for i, nbrs in enumerate(tri.adjacency):
        for j, _shared in nbrs:
            out.add((min(i, j), max(i, j)))
    return out


def test_square_two_triangles():
    tri = triangulate(square())
    assert len(tri.triangles) == 2
    assert len(dual_edges(tri)) == 1


def test_convex_hexagon():
    tri = triangulate(convex_gon(6))
    assert len(tri.triangles) == 4


def test_u_polygon_counts():
    poly = u_polygon()
    tri = triangulate(poly)
    assert len(tri.triangles) == len(poly) - 2
    assert len(dual_edges(tri)) == len(poly) - 3


def test_random_polygons_area_and_dual_tree():
    for seed in range(12):
        m = 18 + 4 * seed
        poly = random_simple_polygon(m, seed=seed)
        tri = triangulate(poly)
        assert len(tri.triangles) == m - 2
        total = sum(tri_area(poly, t) for t in tri.triangles)
        assert abs(total - poly.area()) <= 1e-9 * poly.area()
        # connected + |E| = |V|-1 makes the dual a tree
        edges = dual_edges(tri)
        assert len(edges) == m - 3
        adj: dict[int, list[int]] = {i: [] for i in range(m - 2)}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert len(seen) == m - 2


def test_fifty_gon():
    poly = random_simple_polygon(50, seed=99)
    tri = triangulate(poly)
    assert len(tri.triangles) == 48
    total = sum(tri_area(poly, t) for t in tri.triangles)
    assert abs(total - poly.area()) <= 1e-9 * poly.area()
