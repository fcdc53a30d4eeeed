"""Polygon and domain validation, containment, and reflex counting."""

from __future__ import annotations

import random

import pytest

from conftest import l_polygon, square
from geospanner.errors import InvalidPolygonError
from geospanner.polygon import PolygonalDomain, SimplePolygon, signed_area


def test_valid_square():
    sq = square()
    assert len(sq) == 4
    assert sq.area() == 100.0


def test_rejects_clockwise():
    with pytest.raises(InvalidPolygonError):
        SimplePolygon(((0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)))


def test_rejects_collinear_consecutive():
    with pytest.raises(InvalidPolygonError):
        SimplePolygon(((0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)))


def test_rejects_self_intersection():
    with pytest.raises(InvalidPolygonError):
        SimplePolygon(((0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)))


def test_rejects_repeated_vertices():
    with pytest.raises(InvalidPolygonError):
        SimplePolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)))


def test_rejects_too_few_vertices():
    with pytest.raises(InvalidPolygonError):
        SimplePolygon(((0.0, 0.0), (1.0, 0.0)))


def test_signed_area_orientation():
    ccw = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
    assert signed_area(ccw) == 0.5 * 2
    assert signed_area(tuple(reversed(ccw))) == -1.0


def test_contains_interior_boundary_exterior():
    sq = square()
    assert sq.contains((5.0, 5.0))
    assert sq.contains((5.0, 5.0), strict=True)
    assert sq.contains((0.0, 5.0))
    assert not sq.contains((0.0, 5.0), strict=True)
    assert not sq.contains((-1.0, 5.0))
    assert not sq.contains((10.000001, 5.0))


def test_contains_random_cross_check():
    poly = l_polygon()
    rng = random.Random(3)
    for _ in range(500):
        p = (rng.uniform(-2, 12), rng.uniform(-2, 12))
        # the L occupies the union of two axis-aligned boxes
        want = (0 <= p[0] <= 10 and 0 <= p[1] <= 4) or (
            0 <= p[0] <= 5 and 0 <= p[1] <= 10
        )
        assert poly.contains(p) == want


def test_reflex_vertices():
    assert square().reflex_vertex_indices() == []
    lp = l_polygon()
    refl = lp.reflex_vertex_indices()
    assert len(refl) == 1
    assert lp.vertices[refl[0]] == (5.0, 4.0)


def test_domain_hole_containment_checks():
    outer = square()
    hole = SimplePolygon(((4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0)))
    dom = PolygonalDomain(outer, (hole,))
    assert dom.num_holes == 1
    assert dom.contains((1.0, 1.0))
    assert not dom.contains((5.0, 5.0))  # inside the hole
    assert dom.contains((4.0, 5.0))  # on the hole boundary, closed free space
    assert not dom.contains((4.0, 5.0), strict=True)

    outside_hole = SimplePolygon(((9.0, 9.0), (12.0, 9.0), (12.0, 12.0), (9.0, 12.0)))
    with pytest.raises(InvalidPolygonError):
        PolygonalDomain(outer, (outside_hole,))


def test_domain_rejects_overlapping_holes():
    outer = square()
    h1 = SimplePolygon(((2.0, 2.0), (5.0, 2.0), (5.0, 5.0), (2.0, 5.0)))
    h2 = SimplePolygon(((4.0, 4.0), (7.0, 4.0), (7.0, 7.0), (4.0, 7.0)))
    with pytest.raises(InvalidPolygonError):
        PolygonalDomain(outer, (h1, h2))


def test_domain_reflex_count():
    outer = square()
    hole = SimplePolygon(((4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0)))
    dom = PolygonalDomain(outer, (hole,))
    # square outer contributes 0; every convex hole corner is reflex
    # for the free space
    assert dom.reflex_count() == 4
    assert PolygonalDomain(l_polygon()).reflex_count() == 1
    assert dom.total_vertex_count() == 8
