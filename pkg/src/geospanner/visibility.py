"""Visibility graphs and geodesics in polygonal domains.

Two points see each other when the open segment between them crosses no
boundary edge, passes through no boundary vertex, and runs through free
space (checked at the midpoint by crossing parity). Sight through a vertex
is deliberately not counted as visibility: the vertex is itself a graph
node, so collinear paths route through it at no extra length, and the
predicates stay sign-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import OutsidePolygonError
from .geodesic import GeodesicPath
from .polygon import PolygonalDomain, SimplePolygon
from .primitives import Point, strip_collinear


def as_domain(domain: PolygonalDomain | SimplePolygon) -> PolygonalDomain:
    if isinstance(domain, SimplePolygon):
        return PolygonalDomain(domain, (), validate=False)
    return domain


@dataclass(frozen=True)
class VisibilityGraph:
    """Mutual-visibility graph over boundary vertices plus extra points."""

    points: tuple[Point, ...]
    matrix: csr_matrix  # symmetric euclidean weights

    @property
    def n(self) -> int:
        return len(self.points)


class DomainEngine:
    """Shared visibility and shortest-path machinery for one domain."""

    def __init__(self, domain: PolygonalDomain | SimplePolygon) -> None:
        self.domain = as_domain(domain)
        pts: list[Point] = []
        ring_pairs: list[tuple[int, int]] = []
        rings = [self.domain.outer.vertices] + [
            h.vertices for h in self.domain.holes
        ]
        for ring in rings:
            base = len(pts)
            k = len(ring)
            pts.extend(ring)
            ring_pairs.extend((base + i, base + (i + 1) % k) for i in range(k))
        self.base_points: tuple[Point, ...] = tuple(pts)
        self.ring_pairs: tuple[tuple[int, int], ...] = tuple(ring_pairs)
        P = np.asarray(pts, dtype=float)
        self._V = P
        self._EA = P[[a for a, b in ring_pairs]]
        self._EB = P[[b for a, b in ring_pairs]]
        self._base_vis: np.ndarray | None = None

    # -- predicates ----------------------------------------------------------

    def points_inside(self, M: np.ndarray) -> np.ndarray:
        """Crossing-parity free-space test for an array of points (k, 2)."""
        ax, ay = self._EA[:, 0], self._EA[:, 1]
        bx, by = self._EB[:, 0], self._EB[:, 1]
        mx = M[:, 0][:, None]
        my = M[:, 1][:, None]
        straddle = (ay > my) != (by > my)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_int = ax + (my - ay) * (bx - ax) / (by - ay)
        crossing = straddle & (mx < x_int)
        return (crossing.sum(axis=1) % 2).astype(bool)

    def visible_from(self, a: Point, B: np.ndarray) -> np.ndarray:
        """Visibility of one point against an array of points (k, 2)."""
        a_arr = np.asarray(a, dtype=float)
        ax, ay = self._EA[:, 0], self._EA[:, 1]
        bx, by = self._EB[:, 0], self._EB[:, 1]
        ex, ey = bx - ax, by - ay
        d1 = ex * (a_arr[1] - ay) - ey * (a_arr[0] - ax)
        d2 = ex * (B[:, 1][:, None] - ay) - ey * (B[:, 0][:, None] - ax)
        abx = B[:, 0] - a_arr[0]
        aby = B[:, 1] - a_arr[1]
        d3 = abx[:, None] * (ay - a_arr[1]) - aby[:, None] * (ax - a_arr[0])
        d4 = abx[:, None] * (by - a_arr[1]) - aby[:, None] * (bx - a_arr[0])
        blocked = ((d1 * d2 < 0) & (d3 * d4 < 0)).any(axis=1)

        vx, vy = self._V[:, 0], self._V[:, 1]
        cr = abx[:, None] * (vy - a_arr[1]) - aby[:, None] * (vx - a_arr[0])
        t = abx[:, None] * (vx - a_arr[0]) + aby[:, None] * (vy - a_arr[1])
        L2 = (abx * abx + aby * aby)[:, None]
        blocked |= ((cr == 0.0) & (t > 0) & (t < L2)).any(axis=1)

        mid = (a_arr[None, :] + B) / 2.0
        return ~blocked & self.points_inside(mid) & (L2[:, 0] > 0)

    def visible_pairs(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Row-wise visibility between point arrays A and B, both (k, 2)."""
        ax, ay = self._EA[:, 0], self._EA[:, 1]
        bx, by = self._EB[:, 0], self._EB[:, 1]
        ex, ey = bx - ax, by - ay
        d1 = ex * (A[:, 1][:, None] - ay) - ey * (A[:, 0][:, None] - ax)
        d2 = ex * (B[:, 1][:, None] - ay) - ey * (B[:, 0][:, None] - ax)
        abx = B[:, 0] - A[:, 0]
        aby = B[:, 1] - A[:, 1]
        d3 = abx[:, None] * (ay - A[:, 1][:, None]) - aby[:, None] * (
            ax - A[:, 0][:, None]
        )
        d4 = abx[:, None] * (by - A[:, 1][:, None]) - aby[:, None] * (
            bx - A[:, 0][:, None]
        )
        blocked = ((d1 * d2 < 0) & (d3 * d4 < 0)).any(axis=1)

        vx, vy = self._V[:, 0], self._V[:, 1]
        cr = abx[:, None] * (vy - A[:, 1][:, None]) - aby[:, None] * (
            vx - A[:, 0][:, None]
        )
        t = abx[:, None] * (vx - A[:, 0][:, None]) + aby[:, None] * (
            vy - A[:, 1][:, None]
        )
        L2 = (abx * abx + aby * aby)[:, None]
        blocked |= ((cr == 0.0) & (t > 0) & (t < L2)).any(axis=1)

        mid = (A + B) / 2.0
        return ~blocked & self.points_inside(mid) & (L2[:, 0] > 0)

    def segment_free(self, a: Point, b: Point) -> bool:
        return bool(self.visible_from(a, np.asarray([b], dtype=float))[0])

    # -- graphs --------------------------------------------------------------

    def base_visibility(self) -> np.ndarray:
        if self._base_vis is None:
            V = self._V
            n = len(V)
            vis = np.zeros((n, n), dtype=bool)
            for i in range(n):
                vis[i] = self.visible_from(self.base_points[i], V)
            vis &= vis.T  # guard float asymmetry in blocked tests
            for i, j in self.ring_pairs:
                vis[i, j] = vis[j, i] = True
            np.fill_diagonal(vis, False)
            self._base_vis = vis
        return self._base_vis

    def graph_with(
        self, extra: list[Point]
    ) -> tuple[tuple[Point, ...], csr_matrix, list[int]]:
        """Visibility graph over base vertices plus extra points.

        Returns (points, weights, indices of the extra points). Extra points
        that exactly coincide with an earlier point share its node.
        """
        base = self.base_points
        index: dict[Point, int] = {}
        for i, p in enumerate(base):
            index.setdefault(p, i)
        pts = list(base)
        extra_idx: list[int] = []
        fresh: list[int] = []
        for p in extra:
            p = (float(p[0]), float(p[1]))
            node = index.get(p)
            if node is None:
                node = len(pts)
                pts.append(p)
                index[p] = node
                fresh.append(node)
            extra_idx.append(node)
        P = np.asarray(pts, dtype=float)
        n = len(pts)
        nb = len(base)
        vis = np.zeros((n, n), dtype=bool)
        vis[:nb, :nb] = self.base_visibility()
        for node in fresh:
            row = self.visible_from(pts[node], P)
            vis[node, :] = row
            vis[:, node] = row
        vis[np.arange(n), np.arange(n)] = False
        rows, cols = np.nonzero(vis)
        w = np.hypot(P[rows, 0] - P[cols, 0], P[rows, 1] - P[cols, 1])
        mat = csr_matrix((w, (rows, cols)), shape=(n, n))
        return tuple(pts), mat, extra_idx


_ENGINES: dict[PolygonalDomain, DomainEngine] = {}


def engine_for(domain: PolygonalDomain | SimplePolygon) -> DomainEngine:
    dom = as_domain(domain)
    eng = _ENGINES.get(dom)
    if eng is None:
        eng = DomainEngine(dom)
        if len(_ENGINES) > 64:
            _ENGINES.clear()
        _ENGINES[dom] = eng
    return eng


def visibility_graph(
    domain: PolygonalDomain | SimplePolygon, extra: list[Point] = ()
) -> VisibilityGraph:
    """Visibility graph of the domain's vertices plus optional extra points."""
    pts, mat, _ = engine_for(domain).graph_with(list(extra))
    return VisibilityGraph(pts, mat)


def domain_geodesic(
    domain: PolygonalDomain | SimplePolygon, p: Point, q: Point
) -> GeodesicPath:
    """Shortest path between two points of a polygonal domain."""
    dom = as_domain(domain)
    for name, pt in (("p", p), ("q", q)):
        if not dom.contains(pt):
            raise OutsidePolygonError(f"{name} is outside the domain")
    if p == q:
        return GeodesicPath((tuple(p),), 0.0)
    eng = engine_for(dom)
    pts, mat, (ip, iq) = eng.graph_with([p, q])
    if ip == iq:
        return GeodesicPath((tuple(p),), 0.0)
    dist, pred = dijkstra(
        mat, directed=False, indices=ip, return_predecessors=True
    )
    if not np.isfinite(dist[iq]):
        raise OutsidePolygonError("no path between p and q in the domain")
    chain = [iq]
    while chain[-1] != ip:
        chain.append(int(pred[chain[-1]]))
    polyline = strip_collinear([pts[i] for i in reversed(chain)])
    return GeodesicPath(tuple(polyline), float(dist[iq]))
