"""Exactness and basic behavior of the planar primitives."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from geospanner.primitives import (
    dist,
    on_segment,
    orient,
    polyline_length,
    segments_properly_cross,
    strip_collinear,
)


def exact_orient(a, b, c) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def test_orient_canonical_cases():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 0), (2, 0)) == 0
    assert orient((0, 0), (0, 1), (1, 1)) == -1


def test_orient_antisymmetry_random():
    rng = random.Random(7)
    for _ in range(500):
        a, b, c = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(3)]
        assert orient(a, b, c) == -orient(b, a, c)


def test_orient_matches_exact_rational_arithmetic():
    rng = random.Random(11)
    for _ in range(400):
        a, b, c = [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
        assert orient(a, b, c) == exact_orient(a, b, c)


def test_orient_exact_on_nearly_collinear_inputs():
    # doubled-double cases where the naive determinant loses the sign
    base = (0.5, 0.5)
    d = (12.0, 12.0)
    for k in range(1, 60):
        c = (0.5 + k * 1e-17, 0.5)
        assert orient(base, d, c) == exact_orient(base, d, c)
    a = (0.0, 0.0)
    b = (1e17, 1e17)
    for off in (-2.0, -1.0, 0.0, 1.0, 2.0):
        c = (3.0, 3.0 + off)
        assert orient(a, b, c) == exact_orient(a, b, c)


def test_on_segment_endpoints_interior_and_misses():
    a, b = (0.0, 0.0), (4.0, 2.0)
    assert on_segment(a, b, a)
    assert on_segment(a, b, b)
    assert on_segment(a, b, (2.0, 1.0))
    assert not on_segment(a, b, (2.0, 1.0000001))
    assert not on_segment(a, b, (5.0, 2.5))  # collinear but past the end


def test_segments_properly_cross():
    assert segments_properly_cross((0, 0), (2, 2), (0, 2), (2, 0))
    # shared endpoint is not a proper crossing
    assert not segments_properly_cross((0, 0), (2, 2), (2, 2), (3, 0))
    # touching at an interior point of one segment only
    assert not segments_properly_cross((0, 0), (4, 0), (2, 0), (2, 3))
    assert not segments_properly_cross((0, 0), (1, 0), (2, 1), (3, 1))


def test_dist_and_polyline_length():
    assert dist((0, 0), (3, 4)) == 5.0
    pts = [(0.0, 0.0), (3.0, 4.0), (3.0, 8.0)]
    assert math.isclose(polyline_length(pts), 9.0, rel_tol=1e-15)
    assert polyline_length([(1.0, 1.0)]) == 0.0


def test_strip_collinear():
    pts = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 1.0)]
    assert strip_collinear(pts) == [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0)]
    two = [(0.0, 0.0), (5.0, 5.0)]
    assert strip_collinear(two) == two
