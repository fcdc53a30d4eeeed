"""Simple polygons and polygonal domains (outer boundary plus holes)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidPolygonError
from .primitives import (
    Point,
    on_segment,
    orient,
    segments_properly_cross,
)


def signed_area(vertices: tuple[Point, ...]) -> float:
    s = 0.0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return 0.5 * s


@dataclass(frozen=True)
class SimplePolygon:
    """A simple polygon with counter-clockwise vertex order.

    Vertices must be pairwise distinct, edges may only meet at shared
    endpoints, and consecutive edges may not be collinear. Construction
    validates unless ``validate=False`` is passed (used internally for
    boundaries already known to be sound).
    """

    vertices: tuple[Point, ...]
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(map(tuple, self.vertices)))
        if self.validate:
            self._check()

    def _check(self) -> None:
        v = self.vertices
        n = len(v)
        if n < 3:
            raise InvalidPolygonError("polygon needs at least 3 vertices")
        if len(set(v)) != n:
            raise InvalidPolygonError("polygon has repeated vertices")
        for i in range(n):
            a, b, c = v[i - 1], v[i], v[(i + 1) % n]
            if orient(a, b, c) == 0:
                raise InvalidPolygonError(
                    f"collinear consecutive vertices around index {i}"
                )
        if signed_area(v) <= 0.0:
            raise InvalidPolygonError("polygon must be counter-clockwise")
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                c, d = v[j], v[(j + 1) % n]
                if segments_properly_cross(a, b, c, d):
                    raise InvalidPolygonError(
                        f"edges {i} and {j} properly intersect"
                    )
                # non-adjacent edges may not touch at all
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if not adjacent:
                    for p in (c, d):
                        if on_segment(a, b, p):
                            raise InvalidPolygonError(
                                f"vertex touches edge {i} (edge {j})"
                            )
                    for p in (a, b):
                        if on_segment(c, d, p):
                            raise InvalidPolygonError(
                                f"vertex touches edge {j} (edge {i})"
                            )

    def __len__(self) -> int:
        return len(self.vertices)

    def __hash__(self) -> int:
        return hash(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def area(self) -> float:
        return signed_area(self.vertices)

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: Point, strict: bool = False) -> bool:
        """Point-in-polygon, boundary counts as inside unless strict."""
        v = self.vertices
        n = len(v)
        for i in range(n):
            if on_segment(v[i], v[(i + 1) % n], p):
                return not strict
        # ray casting toward +x with exact crossing tests
        inside = False
        px, py = p
        for i in range(n):
            (x1, y1), (x2, y2) = v[i], v[(i + 1) % n]
            if (y1 > py) != (y2 > py):
                xc = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
                if xc > px:
                    inside = not inside
        return inside

    def reflex_vertex_indices(self) -> list[int]:
        v = self.vertices
        n = len(v)
        return [
            i for i in range(n) if orient(v[i - 1], v[i], v[(i + 1) % n]) < 0
        ]


@dataclass(frozen=True)
class PolygonalDomain:
    """Free space of an outer simple polygon minus open polygonal holes."""

    outer: SimplePolygon
    holes: tuple[SimplePolygon, ...] = ()
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "holes", tuple(self.holes))
        if self.validate:
            self._check()

    def _check(self) -> None:
        for h, hole in enumerate(self.holes):
            for p in hole.vertices:
                if not self.outer.contains(p, strict=True):
                    raise InvalidPolygonError(f"hole {h} not inside the outer boundary")
        for h1 in range(len(self.holes)):
            for h2 in range(h1 + 1, len(self.holes)):
                a = self.holes[h1]
                b = self.holes[h2]
                for ea in a.edges():
                    for eb in b.edges():
                        if segments_properly_cross(*ea, *eb):
                            raise InvalidPolygonError(f"holes {h1} and {h2} intersect")
                if b.contains(a.vertices[0]) or a.contains(b.vertices[0]):
                    raise InvalidPolygonError(f"holes {h1} and {h2} nest or touch")
        for h, hole in enumerate(self.holes):
            for ea in hole.edges():
                for eb in self.outer.edges():
                    if segments_properly_cross(*ea, *eb):
                        raise InvalidPolygonError(f"hole {h} crosses the outer boundary")

    def __hash__(self) -> int:
        return hash((self.outer, self.holes))

    @property
    def num_holes(self) -> int:
        return len(self.holes)

    def all_vertices(self) -> list[Point]:
        pts = list(self.outer.vertices)
        for hole in self.holes:
            pts.extend(hole.vertices)
        return pts

    def boundary_edges(self) -> list[tuple[Point, Point]]:
        out = self.outer.edges()
        for hole in self.holes:
            out.extend(hole.edges())
        return out

    def contains(self, p: Point, strict: bool = False) -> bool:
        """True if p is in the closed free space (strict: open free space)."""
        if not self.outer.contains(p, strict=strict):
            return False
        for hole in self.holes:
            if hole.contains(p, strict=not strict):
                return False
        return True

    def reflex_count(self) -> int:
        """Vertices at which the free space has an interior angle above pi.

        Every hole vertex that is convex for the hole is reflex for the free
        space, so holes contribute all of their non-reflex corners.
        """
        count = len(self.outer.reflex_vertex_indices())
        for hole in self.holes:
            count += len(hole) - len(hole.reflex_vertex_indices())
        return count

    def total_vertex_count(self) -> int:
        return len(self.outer) + sum(len(h) for h in self.holes)
