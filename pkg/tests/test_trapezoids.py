"""Trapezoidal decomposition: counts, partition, dual degree, location."""

from __future__ import annotations

import pytest

from conftest import comb_polygon, interior_points, l_polygon, square
from geospanner.errors import OutsidePolygonError
from geospanner.generators import random_simple_polygon
from geospanner.trapezoids import decompose


def point_in_cell(dec, cell: int, p) -> bool:
    c = dec.cells[cell]
    u, v = dec.to_sweep(p)
    if not (c.left_u <= u <= c.right_u):
        return False
    return (
        dec.edge_value_at(c.lo_edge, u) - 1e-12
        <= v
        <= dec.edge_value_at(c.hi_edge, u) + 1e-12
    )


def test_square_single_trapezoid():
    dec = decompose(square(), "vertical")
    assert len(dec.cells) == 1
    assert dec.locate((5.0, 5.0)) == 0


def test_l_polygon_two_trapezoids():
    dec = decompose(l_polygon(), "vertical")
    assert len(dec.cells) == 2


def test_comb_event_count():
    for teeth in (3, 6, 10):
        poly = comb_polygon(teeth)
        dec = decompose(poly, "vertical")
        # one cell per corridor strip plus the bar: linear in teeth
        assert teeth <= len(dec.cells) <= 6 * teeth + 4


def test_locate_random_containment():
    for seed in range(6):
        poly = random_simple_polygon(24 + 6 * seed, seed=seed + 40)
        dec = decompose(poly, "vertical")
        for p in interior_points(poly, 160, seed=seed):
            cell = dec.locate(p)
            assert point_in_cell(dec, cell, p)


def test_locate_outside_raises():
    dec = decompose(square(), "vertical")
    with pytest.raises(OutsidePolygonError):
        dec.locate((20.0, 5.0))


def test_locate_on_internal_wall_deterministic():
    poly = l_polygon()
    dec = decompose(poly, "vertical")
    wall_x = 5.0  # reflex vertex event
    hits = {dec.locate((wall_x, 2.0)) for _ in range(5)}
    assert len(hits) == 1


def test_dual_degree_bound_and_tree():
    for seed in range(10):
        poly = random_simple_polygon(30 + 4 * seed, seed=seed + 7)
        dec = decompose(poly, "vertical")
        ncells = len(dec.cells)
        edges = set()
        for i, c in enumerate(dec.cells):
            assert len(c.neighbors) <= 4
            for j in c.neighbors:
                edges.add((min(i, j), max(i, j)))
        assert len(edges) == ncells - 1  # dual is a tree on a simple polygon


def test_horizontal_axis():
    dec = decompose(l_polygon(), "horizontal")
    assert dec.axis == "horizontal"
    assert len(dec.cells) == 2
    assert point_in_cell(dec, dec.locate((1.0, 8.0)), (1.0, 8.0))


def test_cell_areas_partition_polygon():
    for seed in range(6):
        poly = random_simple_polygon(26, seed=seed + 70)
        dec = decompose(poly, "vertical")
        total = sum(dec.cell_area(i) for i in range(len(dec.cells)))
        assert abs(total - poly.area()) <= 1e-9 * poly.area()
