"""Geodesic shortest paths inside a simple polygon.

Paths are computed by walking the dual tree of a cell complex (trapezoidal
decomposition or triangulation) between two cells, collecting the shared
walls as portals, and pulling the string tight through the portal sequence.
The funnel works on any ordered portal sequence, so both complexes share it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OutsidePolygonError
from .polygon import SimplePolygon
from .primitives import Point, dist, orient, polyline_length, strip_collinear
from .trapezoids import TrapezoidalDecomposition, decompose
from .triangulation import Triangulation, triangulate


@dataclass(frozen=True)
class GeodesicPath:
    """A taut polyline inside the free space."""

    vertices: tuple[Point, ...]
    length: float

    @property
    def complexity(self) -> int:
        """Number of line segments."""
        return max(0, len(self.vertices) - 1)

    @staticmethod
    def from_points(pts: list[Point]) -> "GeodesicPath":
        return GeodesicPath(tuple(pts), polyline_length(pts))


def string_pull(
    start: Point, goal: Point, portals: list[tuple[Point, Point]]
) -> list[Point]:
    """Tighten a path from start to goal through oriented (left, right) portals."""
    seq = [(start, start)] + portals + [(goal, goal)]
    apex = left = right = start
    apex_i = left_i = right_i = 0
    path = [start]
    i = 1
    while i < len(seq):
        pl, pr = seq[i]
        if orient(apex, right, pr) >= 0:
            if apex == right or orient(apex, left, pr) < 0:
                right, right_i = pr, i
            else:
                path.append(left)
                apex, apex_i = left, left_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        if orient(apex, left, pl) <= 0:
            if apex == left or orient(apex, right, pl) > 0:
                left, left_i = pl, i
            else:
                path.append(right)
                apex, apex_i = right, right_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    if path[-1] != goal:
        path.append(goal)
    return strip_collinear(path)


class _TrapezoidComplex:
    def __init__(self, decomp: TrapezoidalDecomposition) -> None:
        self.decomp = decomp

    def cell_count(self) -> int:
        return len(self.decomp.cells)

    def neighbors(self, c: int) -> list[int]:
        return self.decomp.cells[c].neighbors

    def corners(self, c: int) -> list[Point]:
        return self.decomp.cell_corners(c)

    def wall(self, ca: int, cb: int) -> tuple[Point, Point]:
        u, lo, hi = self.decomp.shared_wall(ca, cb)
        return self.decomp.from_sweep((u, lo)), self.decomp.from_sweep((u, hi))

    def locate(self, p: Point) -> int:
        return self.decomp.locate(p)


class _TriangleComplex:
    def __init__(self, tri: Triangulation) -> None:
        self.tri = tri
        self._walls = {}
        for a, neigh in enumerate(tri.adjacency):
            for b, (va, vb) in neigh:
                self._walls[(a, b)] = (tri.poly.vertices[va], tri.poly.vertices[vb])

    def cell_count(self) -> int:
        return len(self.tri.triangles)

    def neighbors(self, c: int) -> list[int]:
        return [b for b, _ in self.tri.adjacency[c]]

    def corners(self, c: int) -> list[Point]:
        return list(self.tri.triangle_points(c))

    def wall(self, ca: int, cb: int) -> tuple[Point, Point]:
        return self._walls[(ca, cb)]

    def locate(self, p: Point) -> int:
        return self.tri.locate(p)


class GeodesicEngine:
    """Shortest-path queries against one cell complex of a simple polygon."""

    def __init__(self, complex_) -> None:
        if isinstance(complex_, TrapezoidalDecomposition):
            complex_ = _TrapezoidComplex(complex_)
        elif isinstance(complex_, Triangulation):
            complex_ = _TriangleComplex(complex_)
        self.cells = complex_
        n = complex_.cell_count()
        self._parent = [-1] * n
        self._depth = [0] * n
        order = [0]
        seen = {0}
        for c in order:
            for nb in complex_.neighbors(c):
                if nb not in seen:
                    seen.add(nb)
                    self._parent[nb] = c
                    self._depth[nb] = self._depth[c] + 1
                    order.append(nb)
        if len(seen) != n:
            raise OutsidePolygonError("cell complex dual graph is disconnected")
        self._centroid: list[Point] = []
        for c in range(n):
            pts = complex_.corners(c)
            self._centroid.append(
                (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
            )

    def corridor(self, ca: int, cb: int) -> list[int]:
        """Cells on the dual tree path from ca to cb, inclusive."""
        up_a, up_b = [ca], [cb]
        a, b = ca, cb
        while self._depth[a] > self._depth[b]:
            a = self._parent[a]
            up_a.append(a)
        while self._depth[b] > self._depth[a]:
            b = self._parent[b]
            up_b.append(b)
        while a != b:
            a = self._parent[a]
            b = self._parent[b]
            up_a.append(a)
            up_b.append(b)
        return up_a + up_b[-2::-1]

    def portal(self, ca: int, cb: int) -> tuple[Point, Point]:
        """Shared wall between adjacent cells, oriented (left, right) for
        travel from ca into cb."""
        e1, e2 = self.cells.wall(ca, cb)
        axc, ayc = self._centroid[ca]
        bxc, byc = self._centroid[cb]
        dx, dy = bxc - axc, byc - ayc
        mx, my = (e1[0] + e2[0]) / 2, (e1[1] + e2[1]) / 2
        if dx * (e1[1] - my) - dy * (e1[0] - mx) > 0:
            return e1, e2
        return e2, e1

    def path(self, p: Point, q: Point) -> list[Point]:
        """Geodesic from p to q as a polyline (includes both endpoints)."""
        if p == q:
            return [p]
        ca = self.cells.locate(p)
        cb = self.cells.locate(q)
        if ca == cb:
            return [p, q]
        cells = self.corridor(ca, cb)
        portals = [self.portal(cells[i], cells[i + 1]) for i in range(len(cells) - 1)]
        return string_pull(p, q, portals)

    def length(self, p: Point, q: Point) -> float:
        return polyline_length(self.path(p, q))


_ENGINES: dict[int, GeodesicEngine] = {}


def engine_for(poly: SimplePolygon) -> GeodesicEngine:
    """Trapezoid-backed engine for poly, cached by object identity."""
    key = id(poly)
    eng = _ENGINES.get(key)
    if eng is None or eng.cells.decomp.poly is not poly:
        eng = GeodesicEngine(decompose(poly, "vertical"))
        _ENGINES[key] = eng
    return eng


def shortest_path(
    poly: SimplePolygon, tri: Triangulation | None, p: Point, q: Point
) -> GeodesicPath:
    """Geodesic shortest path between two points of a simple polygon.

    Runs over the triangle sleeve when tri is given, else over a cached
    trapezoidal decomposition; both give the same taut path.
    """
    if tri is not None:
        key = id(tri)
        eng = _ENGINES.get(key)
        if eng is None or not (
            isinstance(eng.cells, _TriangleComplex) and eng.cells.tri is tri
        ):
            eng = GeodesicEngine(tri)
            _ENGINES[key] = eng
    else:
        eng = engine_for(poly)
    return GeodesicPath.from_points(eng.path(p, q))


def geodesic_distance(poly: SimplePolygon, p: Point, q: Point) -> float:
    return engine_for(poly).length(p, q)


@dataclass(frozen=True)
class ShortestPathTree:
    """Union of geodesics from one source to all polygon vertices.

    Nodes: 0 = source, 1..m = polygon vertices, then one per extra site.
    """

    source: Point
    points: tuple[Point, ...]
    parent: tuple[int, ...]
    distance: tuple[float, ...]

    def path_to(self, node: int) -> list[Point]:
        out = [self.points[node]]
        while node != 0:
            node = self.parent[node]
            out.append(self.points[node])
        out.reverse()
        return out


def shortest_path_tree(
    poly: SimplePolygon, source: Point, sites: tuple[Point, ...] = ()
) -> ShortestPathTree:
    """Shortest path tree of source; optional sites are attached as leaves."""
    eng = engine_for(poly)
    points: list[Point] = [source]
    index = {source: 0}
    parent = [0]
    distance = [0.0]

    def add_chain(path: list[Point]) -> None:
        d = 0.0
        prev = 0
        for i in range(1, len(path)):
            d += dist(path[i - 1], path[i])
            node = index.get(path[i])
            if node is None:
                node = len(points)
                points.append(path[i])
                parent.append(prev)
                distance.append(d)
                index[path[i]] = node
            prev = node

    for v in poly.vertices:
        add_chain(eng.path(source, v))
    for s in sites:
        add_chain(eng.path(source, s))
    return ShortestPathTree(source, tuple(points), tuple(parent), tuple(distance))


def is_taut(poly: SimplePolygon, path: list[Point], rel_tol: float = 1e-9) -> bool:
    """True if path has geodesic length between its endpoints."""
    if len(path) < 2:
        return True
    best = geodesic_distance(poly, path[0], path[-1])
    return polyline_length(path) <= best * (1 + rel_tol) + 1e-12
