"""Polygon triangulation by ear clipping, with dual adjacency.

Quadratic time is fine here: triangulations are built once per polygon and
the geometry work that dominates the spanner constructions runs on the
trapezoidal decomposition instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPolygonError
from .polygon import SimplePolygon
from .primitives import Point, orient


def _point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """True if p lies in the closed triangle abc (abc counter-clockwise)."""
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


@dataclass(frozen=True)
class Triangulation:
    poly: SimplePolygon
    triangles: tuple[tuple[int, int, int], ...]
    # adjacency[i] lists (j, shared_edge) where shared_edge = (va, vb) is the
    # diagonal or polygon chord the two triangles share
    adjacency: tuple[tuple[tuple[int, tuple[int, int]], ...], ...]

    def triangle_points(self, t: int) -> tuple[Point, Point, Point]:
        i, j, k = self.triangles[t]
        v = self.poly.vertices
        return v[i], v[j], v[k]

    def locate(self, p: Point) -> int:
        """Index of a triangle whose closed region contains p."""
        for t in range(len(self.triangles)):
            a, b, c = self.triangle_points(t)
            if _point_in_triangle(p, a, b, c):
                return t
        raise InvalidPolygonError(f"point {p} is in no triangle")

    def dual_tree_edges(self) -> list[tuple[int, int]]:
        out = []
        for i, neigh in enumerate(self.adjacency):
            for j, _ in neigh:
                if i < j:
                    out.append((i, j))
        return out


def triangulate(poly: SimplePolygon) -> Triangulation:
    """Triangulate a simple polygon into len(poly) - 2 triangles."""
    n = len(poly)
    verts = poly.vertices
    ring = list(range(n))
    triangles: list[tuple[int, int, int]] = []
    guard = 0
    while len(ring) > 3:
        guard += 1
        if guard > 2 * n * n:
            raise InvalidPolygonError("ear clipping failed to converge")
        clipped = False
        m = len(ring)
        for pos in range(m):
            ia, ib, ic = ring[pos - 1], ring[pos], ring[(pos + 1) % m]
            a, b, c = verts[ia], verts[ib], verts[ic]
            if orient(a, b, c) <= 0:
                continue
            ok = True
            for other in ring:
                if other in (ia, ib, ic):
                    continue
                if _point_in_triangle(verts[other], a, b, c):
                    ok = False
                    break
            if ok:
                triangles.append((ia, ib, ic))
                del ring[pos]
                clipped = True
                break
        if not clipped:
            raise InvalidPolygonError("no ear found: polygon not simple?")
    triangles.append((ring[0], ring[1], ring[2]))

    edge_owner: dict[tuple[int, int], int] = {}
    adjacency: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in triangles]
    for t, (i, j, k) in enumerate(triangles):
        for va, vb in ((i, j), (j, k), (k, i)):
            key = (min(va, vb), max(va, vb))
            if key in edge_owner:
                s = edge_owner.pop(key)
                adjacency[s].append((t, key))
                adjacency[t].append((s, key))
            else:
                edge_owner[key] = t
    return Triangulation(
        poly=poly,
        triangles=tuple(triangles),
        adjacency=tuple(tuple(x) for x in adjacency),
    )
