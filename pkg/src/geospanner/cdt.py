"""Triangulation of a point set with forced (constrained) edges.

Starts from a Delaunay triangulation and inserts each required edge by
iterated diagonal flips: while some triangulation edge properly crosses
the required segment, flip a crossing edge whose two triangles form a
strictly convex quadrilateral. Edges that cross the segment cannot be
flipped into existence again, so the loop terminates. Triangle quality
does not matter downstream, only that the result is a valid triangulation
containing every forced edge.

Preconditions on the forced edges: both endpoints are input points, no
other input point lies in the open segment, and no two forced edges cross
properly. The domain-separator construction satisfies all three: its
forced edges are boundary edges plus shortest-path-tree edges, which are
mutually non-crossing visibility segments.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .errors import DegenerateInputError
from .primitives import Point, orient


@dataclass(frozen=True)
class ConstrainedTriangulation:
    points: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]  # counter-clockwise
    forced: frozenset[tuple[int, int]]  # sorted index pairs

    def edge_map(self) -> dict[tuple[int, int], list[int]]:
        """Sorted vertex pair -> ids of the one or two incident triangles."""
        out: dict[tuple[int, int], list[int]] = {}
        for t, (i, j, k) in enumerate(self.triangles):
            for a, b in ((i, j), (j, k), (k, i)):
                out.setdefault((min(a, b), max(a, b)), []).append(t)
        return out

    def centroid(self, t: int) -> Point:
        i, j, k = self.triangles[t]
        p, q, r = self.points[i], self.points[j], self.points[k]
        return ((p[0] + q[0] + r[0]) / 3.0, (p[1] + q[1] + r[1]) / 3.0)


# the flip loop breaks on a single mis-signed test, so crossing checks go
# through the exact `orient` predicate rather than raw float arithmetic
def _proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    return d1 * d2 < 0 and d3 * d4 < 0


def constrained_triangulation(
    points: list[Point], constraints: list[tuple[int, int]]
) -> ConstrainedTriangulation:
    pts = [(float(x), float(y)) for (x, y) in points]
    if len(set(pts)) != len(pts):
        raise DegenerateInputError("duplicate points in triangulation input")
    arr = np.asarray(pts, dtype=float)
    dt = Delaunay(arr)

    tris: list[tuple[int, int, int] | None] = []
    edge2tris: dict[tuple[int, int], set[int]] = {}

    def key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def add_tri(tri: tuple[int, int, int]) -> int:
        t = len(tris)
        tris.append(tri)
        i, j, k = tri
        for u, v in ((i, j), (j, k), (k, i)):
            edge2tris.setdefault(key(u, v), set()).add(t)
        return t

    def drop_tri(t: int) -> None:
        tri = tris[t]
        assert tri is not None
        i, j, k = tri
        for u, v in ((i, j), (j, k), (k, i)):
            edge2tris[key(u, v)].discard(t)
        tris[t] = None

    for simplex in dt.simplices:
        i, j, k = (int(v) for v in simplex)
        s = orient(pts[i], pts[j], pts[k])
        if s == 0:
            continue
        add_tri((i, j, k) if s > 0 else (i, k, j))

    forced: set[tuple[int, int]] = set()
    wanted = sorted({key(a, b) for a, b in constraints if a != b})
    for a, b in wanted:
        pa, pb = pts[a], pts[b]
        # reject segments passing through a third input point; numpy
        # prefilter, exact confirmation for the near-collinear candidates
        abx, aby = pb[0] - pa[0], pb[1] - pa[1]
        cr = abx * (arr[:, 1] - pa[1]) - aby * (arr[:, 0] - pa[0])
        dot = abx * (arr[:, 0] - pa[0]) + aby * (arr[:, 1] - pa[1])
        l2 = abx * abx + aby * aby
        near = (np.abs(cr) <= 1e-12 * l2) & (dot > 0) & (dot < l2)
        near[a] = near[b] = False
        for v in np.nonzero(near)[0]:
            if orient(pa, pb, pts[int(v)]) == 0:
                raise DegenerateInputError(
                    "forced edge passes through another input point"
                )
        forced.add((a, b))

        pending = deque(
            e
            for e, ts in edge2tris.items()
            if ts and _proper_cross(pa, pb, pts[e[0]], pts[e[1]])
        )
        if any(e in forced and e != (a, b) for e in pending):
            raise DegenerateInputError("forced edges cross")
        guard = 0
        limit = 20 * (len(tris) + len(pending) + 8) ** 2
        while pending:
            guard += 1
            if guard > limit:
                raise DegenerateInputError("edge insertion did not converge")
            u, v = pending.popleft()
            owners = edge2tris.get((u, v), ())
            if len(owners) != 2:
                continue  # flipped away earlier, or (impossibly) on hull
            if not _proper_cross(pa, pb, pts[u], pts[v]):
                continue
            t1, t2 = sorted(owners)
            x = next(w for w in tris[t1] if w not in (u, v))
            y = next(w for w in tris[t2] if w not in (u, v))
            # flippable iff the quad is strictly convex, i.e. the new
            # diagonal properly crosses the old one; else retry later
            if not _proper_cross(pts[x], pts[y], pts[u], pts[v]):
                pending.append((u, v))
                continue
            drop_tri(t1)
            drop_tri(t2)
            # orient the two new triangles explicitly
            for tri in ((x, y, u), (x, y, v)):
                p0, p1_, p2_ = (pts[w] for w in tri)
                s = orient(p0, p1_, p2_)
                if s == 0:
                    raise DegenerateInputError("flip produced a flat triangle")
                add_tri(tri if s > 0 else (tri[0], tri[2], tri[1]))
            if _proper_cross(pa, pb, pts[x], pts[y]):
                if key(x, y) in forced:
                    raise DegenerateInputError("forced edges cross")
                pending.append(key(x, y))

        if not edge2tris.get((a, b)):
            raise DegenerateInputError("forced edge could not be inserted")

    final = tuple(t for t in tris if t is not None)
    return ConstrainedTriangulation(tuple(pts), final, frozenset(forced))
