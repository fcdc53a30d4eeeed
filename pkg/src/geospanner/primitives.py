"""Exact planar predicates and small segment helpers.

Points are plain ``(x, y)`` float tuples throughout the package: immutable,
hashable, and ordered lexicographically, which is exactly the tie-break order
the sweep algorithms rely on.
"""

from __future__ import annotations

import math
from fractions import Fraction

Point = tuple[float, float]

# Relative rounding error of the 2x2 determinant filter, about 3 ulp.
_ORIENT_FILTER = 3.3306690738754716e-16


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle (a, b, c).

    Returns +1 if the triangle winds counter-clockwise, -1 if clockwise and 0
    if the three points are exactly collinear. A floating point filter decides
    the generic case; near-degenerate inputs fall back to exact rational
    arithmetic, so the result is always the true sign.
    """
    detleft = (b[0] - a[0]) * (c[1] - a[1])
    detright = (b[1] - a[1]) * (c[0] - a[0])
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if abs(det) > _ORIENT_FILTER * detsum:
        return 1 if det > 0.0 else -1
    if det == 0.0 and detsum == 0.0:
        return 0
    return _orient_exact(a, b, c)


def _orient_exact(a: Point, b: Point, c: Point) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def dist(a: Point, b: Point) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """True if p lies on the closed segment ab (exact)."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if open segments ab and cd cross in a single interior point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if closed segments ab and cd share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(a, b, c):
        return True
    if o2 == 0 and on_segment(a, b, d):
        return True
    if o3 == 0 and on_segment(c, d, a):
        return True
    if o4 == 0 and on_segment(c, d, b):
        return True
    return False


def seg_y_at(a: Point, b: Point, x: float) -> float:
    """Height of the non-vertical segment ab at abscissa x."""
    if a[0] == b[0]:
        raise ZeroDivisionError("vertical segment has no unique height")
    t = (x - a[0]) / (b[0] - a[0])
    return a[1] + t * (b[1] - a[1])


def seg_point_at(a: Point, b: Point, t: float) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def closest_param_on_segment(a: Point, b: Point, p: Point) -> float:
    """Parameter in [0, 1] of the point of segment ab closest to p."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    if den == 0.0:
        return 0.0
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / den
    return min(1.0, max(0.0, t))


def polyline_length(pts: list[Point]) -> float:
    return sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def strip_collinear(pts: list[Point]) -> list[Point]:
    """Drop duplicate and zero-turn interior points of a polyline."""
    out: list[Point] = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    i = 1
    while i < len(out) - 1:
        if orient(out[i - 1], out[i], out[i + 1]) == 0 and _between(
            out[i - 1], out[i + 1], out[i]
        ):
            del out[i]
            if i > 1:
                i -= 1
        else:
            i += 1
    return out


def _between(a: Point, b: Point, p: Point) -> bool:
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )
