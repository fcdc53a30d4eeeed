"""Shared geometry fixtures for the test suite."""

from __future__ import annotations

import random

import pytest

from geospanner.polygon import PolygonalDomain, SimplePolygon
from geospanner.primitives import Point


def square(side: float = 10.0) -> SimplePolygon:
    return SimplePolygon(((0.0, 0.0), (side, 0.0), (side, side), (0.0, side)))


def l_polygon() -> SimplePolygon:
    return SimplePolygon(
        ((0.0, 0.0), (10.0, 0.0), (10.0, 4.0), (5.0, 4.0), (5.0, 10.0), (0.0, 10.0))
    )


def u_polygon() -> SimplePolygon:
    """Two vertical arms joined by a bottom corridor."""
    return SimplePolygon(
        (
            (0.0, 0.0),
            (10.0, 0.0),
            (10.0, 10.0),
            (7.0, 10.0),
            (7.0, 3.0),
            (3.0, 3.0),
            (3.0, 10.0),
            (0.0, 10.0),
        )
    )


def comb_polygon(teeth: int, depth: float = 6.0) -> SimplePolygon:
    """Downward teeth hanging from a wide bar; corridors between teeth."""
    pts: list[Point] = [(0.0, 0.0)]
    for t in range(teeth):
        x = 2.0 * t + 1.0
        pts.append((x, 0.0))
        pts.append((x + 0.25, -depth))
        pts.append((x + 0.5, 0.0))
    pts.append((2.0 * teeth + 1.0, 0.0))
    pts.append((2.0 * teeth + 1.0, 3.0))
    pts.append((0.0, 3.0))
    return SimplePolygon(tuple(pts))


def convex_gon(m: int, radius: float = 10.0) -> SimplePolygon:
    import math

    pts = tuple(
        (
            radius * math.cos(2 * math.pi * i / m),
            radius * math.sin(2 * math.pi * i / m),
        )
        for i in range(m)
    )
    return SimplePolygon(pts)


def interior_points(
    poly: SimplePolygon | PolygonalDomain, n: int, seed: int
) -> list[Point]:
    dom = poly if isinstance(poly, PolygonalDomain) else PolygonalDomain(poly)
    xlo, ylo, xhi, yhi = dom.outer.bounding_box()
    rng = random.Random(seed)
    out: list[Point] = []
    seen: set[Point] = set()
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 20000 * (n + 1):
            raise RuntimeError("rejection sampling stalled")
        p = (rng.uniform(xlo, xhi), rng.uniform(ylo, yhi))
        if p not in seen and dom.contains(p, strict=True):
            seen.add(p)
            out.append(p)
    return out


def three_hole_domain() -> PolygonalDomain:
    """Two chambers joined above and below a middle bar of holes, so no
    single boundary-to-boundary chord can separate the chamber sites."""
    outer = SimplePolygon(
        ((0.0, 0.0), (30.0, 0.0), (30.0, 20.0), (0.0, 20.0))
    )
    holes = (
        SimplePolygon(((13.0, 3.0), (17.0, 3.0), (17.0, 8.0), (13.0, 8.0))),
        SimplePolygon(((13.0, 9.0), (17.0, 9.0), (17.0, 11.0), (13.0, 11.0))),
        SimplePolygon(((13.0, 12.0), (17.0, 12.0), (17.0, 17.0), (13.0, 17.0))),
    )
    return PolygonalDomain(outer, holes)


@pytest.fixture
def unit_square() -> SimplePolygon:
    return SimplePolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
