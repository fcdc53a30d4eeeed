"""Balanced shortest-path separators and the recursive spanner for domains.

A domain with holes admits no vertical-chord recursion, so the free space is
split along at most three geodesic paths instead.  The separator is found
combinatorially: the domain vertices are triangulated together with a padded
bounding box, every boundary edge and every shortest-path-tree edge is forced
into the triangulation, and a walk over the dual moves a fundamental cycle
until the enclosed site weight is balanced.  Sites are then projected onto
each bounding path and the grouped one-dimensional spanner supplies the
crossing edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra
from shapely import errors as shapely_errors
from shapely import union_all
from shapely.geometry import GeometryCollection, MultiPolygon
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry.polygon import orient as shapely_ccw
from shapely.validation import make_valid

from .cdt import constrained_triangulation
from .chords import ChordProjection, ChordSPT, group_order, pi_lambda_path
from .errors import DegenerateInputError, InvalidPolygonError, OutsidePolygonError
from .geodesic import GeodesicPath
from .polygon import PolygonalDomain, SimplePolygon
from .primitives import Point, dist, on_segment, orient, polyline_length
from .spanner_graph import SpannerGraph
from .visibility import DomainEngine, as_domain, domain_geodesic, engine_for
from .weighted_line import WeightedSite1D, build_grouped_spanner


@dataclass(frozen=True)
class Separator:
    """Partition of a domain's sites by one, two, or three geodesic paths.

    ``kind`` is "one" (a single path between two outer-boundary points),
    "two" (two paths from a common corner to the same boundary ring),
    "three" (three paths closing a triangle-like region), or "degenerate"
    (collinear sites carved off along a single segment).  ``corners`` holds
    the path endpoints; ``paths`` the bounding geodesics; ``left_sites`` the
    site ids inside the closed region.  ``arc_ring`` names the boundary ring
    (0 = outer, i = hole i-1) that closes kinds "one" and "two", and -1
    otherwise.  ``left_area`` is the free-space area of the region, used to
    orient the geometric split.
    """

    kind: str
    corners: tuple[Point, ...]
    paths: tuple[GeodesicPath, ...]
    left_sites: frozenset[int]
    arc_ring: int = -1
    left_area: float = field(default=0.0, compare=False)
    trace: dict[str, Any] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SubInstance:
    """One recursion piece: either a sub-domain or a straight chain of sites."""

    domain: PolygonalDomain | None
    chain: GeodesicPath | None
    site_ids: tuple[int, ...]


def _spair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _tri_area(a: Point, b: Point, c: Point) -> float:
    return abs(
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    ) / 2.0


def _vertex_tree(
    eng: DomainEngine, remap: list[int], nb: int
) -> tuple[int, list[tuple[int, int]]]:
    """Shortest-path tree over the deduplicated domain vertices.

    A piece boundary may touch one of its holes at a shared coordinate;
    ``remap`` folds such copies onto one vertex.  Coincident copies sit at
    equal distance from the root, so rerooting each deduplicated vertex on
    its first copy's predecessor keeps every tree path a geodesic.
    """
    pts, mat, _ = eng.graph_with([])
    root_orig = min(range(len(pts)), key=lambda i: (pts[i][1], pts[i][0]))
    dist_, pred = dijkstra(
        mat, directed=False, indices=root_orig, return_predecessors=True
    )
    if not np.isfinite(dist_).all():
        raise DegenerateInputError("domain vertices are not mutually reachable")
    first_copy = [-1] * nb
    for orig, uid in enumerate(remap):
        if first_copy[uid] < 0:
            first_copy[uid] = orig
    root = remap[root_orig]
    edges = []
    for uid in range(nb):
        if uid == root:
            continue
        edges.append(_spair(remap[int(pred[first_copy[uid]])], uid))
    return root, edges


class _FaceComplex:
    """Triangulation of the padded domain, closed at infinity.

    Four box corners and one virtual vertex turn the triangulation into a
    sphere: every edge borders exactly two faces, so the separator walk can
    never fall off the hull.  The spanning tree is the vertex shortest-path
    tree plus the corner chain, one corner-to-domain attachment, and the
    virtual leaf.
    """

    def __init__(self, eng: DomainEngine) -> None:
        base = eng.base_points
        # a piece's outer ring may touch one of its holes at a shared
        # coordinate; fold coincident copies onto one triangulation vertex
        uniq: dict[Point, int] = {}
        remap: list[int] = []
        upts: list[Point] = []
        for p in base:
            if p not in uniq:
                uniq[p] = len(upts)
                upts.append(p)
            remap.append(uniq[p])
        nb = len(upts)
        ring_sets: list[set[int]] = [set() for _ in range(nb)]
        offset = 0
        rings = [eng.domain.outer] + list(eng.domain.holes)
        for rid, ring in enumerate(rings):
            for j in range(len(ring.vertices)):
                ring_sets[remap[offset + j]].add(rid)
            offset += len(ring.vertices)
        self.ring_sets = [frozenset(s) for s in ring_sets]
        ring_pairs = sorted(
            {_spair(remap[u], remap[v]) for u, v in eng.ring_pairs}
        )
        xs = [p[0] for p in base]
        ys = [p[1] for p in base]
        px = 0.05 * (max(xs) - min(xs))
        py = 0.05 * (max(ys) - min(ys))
        corners = (
            (min(xs) - px, min(ys) - py),
            (max(xs) + px, min(ys) - py),
            (max(xs) + px, max(ys) + py),
            (min(xs) - px, max(ys) + py),
        )
        self.nb = nb
        self.inf_id = nb + 4
        self.pts: list[Point] = upts + list(corners)
        root, tree_edges = _vertex_tree(eng, remap, nb)
        self.root = root
        cdt = constrained_triangulation(self.pts, ring_pairs + tree_edges)
        self.triangles = cdt.triangles
        self.n_real = len(cdt.triangles)

        emap = cdt.edge_map()
        face_edges: list[tuple[tuple[int, int], ...]] = []
        face_area: list[float] = []
        for a, b, c in cdt.triangles:
            face_edges.append((_spair(a, b), _spair(b, c), _spair(a, c)))
            face_area.append(_tri_area(self.pts[a], self.pts[b], self.pts[c]))
        edge2faces: dict[tuple[int, int], list[int]] = {
            e: list(ts) for e, ts in emap.items()
        }
        box_sides = [(nb, nb + 1), (nb + 1, nb + 2), (nb + 2, nb + 3), (nb, nb + 3)]
        for side in box_sides:
            if len(edge2faces.get(side, ())) != 1:
                raise DegenerateInputError("padded box is not the outer hull")
        for idx, (u, v) in enumerate(box_sides):
            fid = self.n_real + idx
            es = (_spair(u, v), _spair(u, self.inf_id), _spair(v, self.inf_id))
            face_edges.append(es)
            face_area.append(0.0)
            for e in es:
                edge2faces.setdefault(e, []).append(fid)
        for e, fs in edge2faces.items():
            if len(fs) != 2:
                raise DegenerateInputError("triangulation closure failed")
        self.face_edges = face_edges
        self.face_area = face_area
        self.edge2faces = edge2faces
        self.nfaces = len(face_edges)

        cents = np.array(
            [
                (
                    (self.pts[a][0] + self.pts[b][0] + self.pts[c][0]) / 3.0,
                    (self.pts[a][1] + self.pts[b][1] + self.pts[c][1]) / 3.0,
                )
                for a, b, c in cdt.triangles
            ]
        )
        self.free = list(eng.points_inside(cents)) + [False] * 4

        tree = set(tree_edges)
        tree.update(((nb, nb + 1), (nb + 1, nb + 2), (nb + 2, nb + 3)))
        attach = [
            e for e in emap if e[0] < nb <= e[1] < self.inf_id
        ]
        if not attach:
            raise DegenerateInputError("no corner touches the domain")
        tree.add(min(attach, key=lambda e: (e[1], e[0])))
        tree.add((nb, self.inf_id))
        self.tree = tree

        adj: dict[int, list[int]] = {}
        for u, v in tree:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        nverts = nb + 5
        parent = [-1] * nverts
        depth = [0] * nverts
        seen = [False] * nverts
        seen[root] = True
        queue = [root]
        for u in queue:
            for v in adj.get(u, ()):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
        if not all(seen):
            raise DegenerateInputError("separator tree does not span")
        self.parent = parent
        self.depth = depth

        self.face_w: list[int] = [0] * self.nfaces
        self.site_tri: list[int] = []

    def climb(self, u: int, v: int) -> tuple[list[int], list[int]]:
        """Vertex chains from u and from v up to their common ancestor."""
        pu, pv = [u], [v]
        while self.depth[pu[-1]] > self.depth[pv[-1]]:
            pu.append(self.parent[pu[-1]])
        while self.depth[pv[-1]] > self.depth[pu[-1]]:
            pv.append(self.parent[pv[-1]])
        while pu[-1] != pv[-1]:
            pu.append(self.parent[pu[-1]])
            pv.append(self.parent[pv[-1]])
        return pu, pv

    def cycle_blocked(self, e: tuple[int, int]) -> set[tuple[int, int]]:
        pu, pv = self.climb(e[0], e[1])
        path = pu + pv[-2::-1]
        blocked = {e}
        blocked.update(_spair(a, b) for a, b in zip(path, path[1:]))
        return blocked

    def sides_of(
        self, e: tuple[int, int]
    ) -> tuple[frozenset[int], frozenset[int]]:
        """The two face sets separated by the fundamental cycle of edge e."""
        blocked = self.cycle_blocked(e)
        f1, f2 = self.edge2faces[e]
        seen = {f1}
        stack = [f1]
        while stack:
            f = stack.pop()
            for edge in self.face_edges[f]:
                if edge in blocked:
                    continue
                for g in self.edge2faces[edge]:
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
        if f2 in seen:
            raise DegenerateInputError("fundamental cycle is not simple")
        side1 = frozenset(seen)
        side2 = frozenset(range(self.nfaces)) - side1
        return side1, side2

    def side_within(
        self, e: tuple[int, int], fset: frozenset[int]
    ) -> frozenset[int] | None:
        s1, s2 = self.sides_of(e)
        if s1 <= fset:
            return s1
        if s2 <= fset:
            return s2
        return None

    def weight_of(self, faces: frozenset[int]) -> int:
        return sum(self.face_w[f] for f in faces)


def _assign_sites(fc: _FaceComplex, sites: list[Point]) -> None:
    """Map every site to the lowest-id free triangle that contains it."""
    free_ids = [t for t in range(fc.n_real) if fc.free[t]]
    if not free_ids:
        raise DegenerateInputError("no free triangles cover the domain")
    S = np.asarray(sites, dtype=float)
    corners = np.array(
        [[fc.pts[i] for i in fc.triangles[t]] for t in free_ids]
    )  # (F, 3, 2)
    A, B, C = corners[:, 0], corners[:, 1], corners[:, 2]
    # cross products grow with the square of the coordinate magnitude
    span = max(abs(float(c)) for p in fc.pts for c in p)
    scale2 = max(span * span, 1.0)

    def edge_sign(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
        return (Q[None, :, 0] - P[None, :, 0]) * (
            S[:, None, 1] - P[None, :, 1]
        ) - (Q[None, :, 1] - P[None, :, 1]) * (S[:, None, 0] - P[None, :, 0])

    tol = 1e-9 * scale2
    inside = (
        (edge_sign(A, B) >= -tol)
        & (edge_sign(B, C) >= -tol)
        & (edge_sign(C, A) >= -tol)
    )
    fc.site_tri = []
    for i, p in enumerate(sites):
        home = -1
        for j in np.nonzero(inside[i])[0]:
            t = free_ids[int(j)]
            a, b, c = (fc.pts[v] for v in fc.triangles[t])
            if orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0:
                home = t
                break
        if home < 0:
            raise DegenerateInputError(f"site {p} is outside every free triangle")
        fc.site_tri.append(home)
    for t in fc.site_tri:
        fc.face_w[t] += 1


def _walk(
    fc: _FaceComplex, n: int
) -> tuple[tuple[int, int], frozenset[int], int, list[tuple[int, int]]]:
    """Move a fundamental cycle until its side holds at most 2n/3 sites.

    Precondition: no single face holds more than 2n/9 sites, which keeps the
    final weight above 2n/9 in both step cases.
    """
    nontree = sorted(
        e
        for e in fc.edge2faces
        if e not in fc.tree and fc.inf_id not in e
    )
    o = nontree[0]
    s1, s2 = fc.sides_of(o)
    w1, w2 = fc.weight_of(s1), fc.weight_of(s2)
    if w1 != w2:
        fset, w = (s1, w1) if w1 > w2 else (s2, w2)
    else:
        fset, w = (s1, w1) if min(s1) < min(s2) else (s2, w2)
    steps = [(len(fset), w)]
    while 3 * w > 2 * n:
        inside = [f for f in fc.edge2faces[o] if f in fset]
        assert len(inside) == 1, "closing edge must border the region once"
        t = inside[0]
        e1, e2 = (e for e in fc.face_edges[t] if e != o)
        t1, t2 = e1 in fc.tree, e2 in fc.tree
        assert not (t1 and t2), "a tree-enclosed face cannot exceed the bound"
        if t1 or t2:
            o = e2 if t1 else e1
            fset = fset - {t}
            w -= fc.face_w[t]
        else:
            x = fc.side_within(e1, fset)
            y = fc.side_within(e2, fset)
            assert x is not None and y is not None, "sub-cycle escaped the region"
            assert not (x & y) and len(x) + len(y) == len(fset) - 1
            wx, wy = fc.weight_of(x), fc.weight_of(y)
            if wx > wy or (wx == wy and e1 < e2):
                o, fset, w = e1, x, wx
            else:
                o, fset, w = e2, y, wy
        assert len(fset) < steps[-1][0], "walk must shrink the region"
        assert 9 * w > 2 * n, "walk lost too much weight in one step"
        steps.append((len(fset), w))
    return o, fset, w, steps


def _adopt_on_paths(
    sites: list[Point], left: set[int], paths: list[GeodesicPath]
) -> None:
    # sites sitting exactly on a bounding path belong to the closed region
    segs = [
        (va, vb)
        for path in paths
        for va, vb in zip(path.vertices, path.vertices[1:])
    ]
    for i, p in enumerate(sites):
        if i in left:
            continue
        if any(on_segment(a, b, p) for a, b in segs):
            left.add(i)


def _common_ring(fc: _FaceComplex, a_end: int, b_end: int) -> int:
    """Ring id shared by both trimmed path endpoints.

    A vertex where the outer ring touches a hole belongs to two rings; the
    closure arc is only well defined when exactly one ring fits both ends.
    """
    common = fc.ring_sets[a_end] & fc.ring_sets[b_end]
    if not common:
        raise DegenerateInputError("separator endpoints landed on different rings")
    if len(common) > 1:
        raise DegenerateInputError("separator closure ring is ambiguous")
    return next(iter(common))


def _emit_walk_separator(
    fc: _FaceComplex,
    dom: PolygonalDomain,
    sites: list[Point],
    o: tuple[int, int],
    fset: frozenset[int],
    steps: list[tuple[int, int]],
    collect_trace: bool,
) -> Separator:
    u, v = o
    assert u < fc.inf_id and v < fc.inf_id
    assert not (u >= fc.nb and v >= fc.nb), "closing edge cannot join two corners"
    pu, pv = fc.climb(u, v)
    p1 = pu[::-1]
    p2 = pv[::-1]
    while p1 and p1[-1] >= fc.nb:
        p1.pop()
    while p2 and p2[-1] >= fc.nb:
        p2.pop()
    assert p1 and p2 and p1[0] == p2[0] and p1[0] < fc.nb
    a_end, b_end = p1[-1], p2[-1]
    assert a_end != b_end, "balanced cycle cannot collapse to one path"

    pts1 = [fc.pts[i] for i in p1]
    pts2 = [fc.pts[i] for i in p2]
    left = {i for i, t in enumerate(fc.site_tri) if t in fset}
    left_area = sum(fc.face_area[f] for f in fset if fc.free[f])
    trace = {"walk": steps, "initial": o, "heavy": False} if collect_trace else None

    mid = ((fc.pts[u][0] + fc.pts[v][0]) / 2.0, (fc.pts[u][1] + fc.pts[v][1]) / 2.0)
    if dom.contains(mid, strict=True):
        # the closing edge is an interior chord: three bounding paths
        paths = [
            GeodesicPath.from_points(pts1),
            GeodesicPath.from_points(pts2),
            GeodesicPath.from_points([fc.pts[u], fc.pts[v]]),
        ]
        _adopt_on_paths(sites, left, paths)
        return Separator(
            kind="three",
            corners=(pts1[0], pts1[-1], pts2[-1]),
            paths=tuple(paths),
            left_sites=frozenset(left),
            arc_ring=-1,
            left_area=left_area,
            trace=trace,
        )
    ring_a = _common_ring(fc, a_end, b_end)
    paths = [GeodesicPath.from_points(pts1), GeodesicPath.from_points(pts2)]
    _adopt_on_paths(sites, left, paths)
    kind = "one" if ring_a == 0 and (len(p1) == 1 or len(p2) == 1) else "two"
    return Separator(
        kind=kind,
        corners=(pts1[0], pts1[-1], pts2[-1]),
        paths=tuple(paths),
        left_sites=frozenset(left),
        arc_ring=ring_a,
        left_area=left_area,
        trace=trace,
    )


def _heavy_separator(
    fc: _FaceComplex,
    sites: list[Point],
    heavy: int,
    n: int,
    collect_trace: bool,
) -> Separator:
    """Split one overloaded free triangle by an angular sweep from a corner."""
    lo = -((-2 * n) // 9)
    hi = (2 * n) // 3
    if lo > hi:
        raise DegenerateInputError("too few sites to balance")
    member = [i for i, t in enumerate(fc.site_tri) if t == heavy]
    tri = [fc.pts[i] for i in fc.triangles[heavy]]
    assert all(i < fc.nb for i in fc.triangles[heavy])
    trace = {"walk": [], "initial": None, "heavy": True} if collect_trace else None

    for rot in range(3):
        origin, second, third = tri[rot], tri[(rot + 1) % 3], tri[(rot + 2) % 3]
        ux, uy = second[0] - origin[0], second[1] - origin[1]

        def angle_key(i: int) -> tuple[float, float, int]:
            dx = sites[i][0] - origin[0]
            dy = sites[i][1] - origin[1]
            ang = math.atan2(ux * dy - uy * dx, ux * dx + uy * dy)
            return (ang, dx * dx + dy * dy, i)

        order = sorted(member, key=angle_key)
        top = min(hi, len(order))
        for s in sorted(range(max(lo, 1), top + 1), key=lambda s: (abs(2 * s - n), s)):
            if s < len(order):
                if orient(origin, sites[order[s - 1]], sites[order[s]]) <= 0:
                    continue
                da = sites[order[s - 1]]
                db = sites[order[s]]
                d1 = (da[0] - origin[0], da[1] - origin[1])
                d2 = (db[0] - origin[0], db[1] - origin[1])
                l1 = math.hypot(*d1)
                l2 = math.hypot(*d2)
                ray = (d1[0] / l1 + d2[0] / l2, d1[1] / l1 + d2[1] / l2)
                ex = third[0] - second[0]
                ey = third[1] - second[1]
                denom = ray[0] * ey - ray[1] * ex
                if denom == 0.0:
                    continue
                frac = (
                    (second[0] - origin[0]) * ey - (second[1] - origin[1]) * ex
                ) / denom
                hit_u = (
                    (second[0] - origin[0]) * ray[1]
                    - (second[1] - origin[1]) * ray[0]
                ) / denom
                if frac <= 0.0:
                    continue
                hit_u = min(max(hit_u, 0.0), 1.0)
                mpt = (second[0] + hit_u * ex, second[1] + hit_u * ey)
            else:
                mpt = third
            left = set(order[:s])
            paths = [
                GeodesicPath.from_points([origin, second]),
                GeodesicPath.from_points([origin, mpt]),
                GeodesicPath.from_points([second, mpt]),
            ]
            _adopt_on_paths(sites, left, paths)
            return Separator(
                kind="three",
                corners=(origin, second, mpt),
                paths=tuple(paths),
                left_sites=frozenset(left),
                arc_ring=-1,
                left_area=_tri_area(origin, second, mpt),
                trace=trace,
            )

    # no corner admits a clean angular split: carve a collinear run instead
    run = _collinear_run(fc, sites, member, tri, lo, hi, n)
    if run is None:
        raise DegenerateInputError("heavy triangle admits no balanced split")
    left = set(run)
    chain = GeodesicPath.from_points([sites[run[0]], sites[run[-1]]])
    _adopt_on_paths(sites, left, [chain])
    return Separator(
        kind="degenerate",
        corners=(chain.vertices[0], chain.vertices[-1]),
        paths=(chain,),
        left_sites=frozenset(left),
        arc_ring=-1,
        left_area=0.0,
        trace=trace,
    )


def _collinear_run(
    fc: _FaceComplex,
    sites: list[Point],
    member: list[int],
    tri: list[Point],
    lo: int,
    hi: int,
    n: int,
) -> list[int] | None:
    """A balanced prefix of sites lying on one line, or None."""
    size = min(max(n // 2, lo), hi)
    first = sites[member[0]]
    if len(member) >= 2 and all(
        orient(first, sites[member[1]], sites[j]) == 0 for j in member[2:]
    ):
        axis = sites[member[1]]
        dx, dy = axis[0] - first[0], axis[1] - first[1]
        order = sorted(
            member,
            key=lambda i: (
                (sites[i][0] - first[0]) * dx + (sites[i][1] - first[1]) * dy,
                i,
            ),
        )
        run = order[: min(size, len(order))]
        if len(run) >= lo:
            return run
    for origin in tri:
        classes: dict[tuple[float, float], list[int]] = {}
        for i in member:
            dx, dy = sites[i][0] - origin[0], sites[i][1] - origin[1]
            r = math.hypot(dx, dy)
            key = (0.0, 0.0) if r == 0.0 else (round(dx / r, 12), round(dy / r, 12))
            classes.setdefault(key, []).append(i)
        best = max(classes.values(), key=len)
        if len(best) >= lo:
            order = sorted(
                best,
                key=lambda i: (sites[i][0] - origin[0]) ** 2
                + (sites[i][1] - origin[1]) ** 2,
            )
            run = order[: min(size, len(order))]
            if all(
                orient(sites[run[0]], sites[run[-1]], sites[j]) == 0 for j in run
            ):
                return run
    return None


def balanced_sp_separator(
    domain: PolygonalDomain | SimplePolygon,
    sites: list[Point],
    collect_trace: bool = False,
) -> Separator:
    """Find a separator whose region holds between 2n/9 and 2n/3 sites."""
    dom = as_domain(domain)
    pts = [(float(p[0]), float(p[1])) for p in sites]
    n = len(pts)
    if n < 2:
        raise DegenerateInputError("need at least two sites to balance")
    for p in pts:
        if not dom.contains(p):
            raise OutsidePolygonError(f"site {p} lies outside the domain")
    eng = engine_for(dom)
    fc = _FaceComplex(eng)
    _assign_sites(fc, pts)
    heavy = max(range(fc.n_real), key=lambda t: fc.face_w[t])
    if 9 * fc.face_w[heavy] > 2 * n:
        return _heavy_separator(fc, pts, heavy, n, collect_trace)
    o, fset, _w, steps = _walk(fc, n)
    return _emit_walk_separator(fc, dom, pts, o, fset, steps, collect_trace)


# -- geometric split ----------------------------------------------------------


def _polygon_parts(geom: Any) -> list[ShapelyPolygon]:
    if isinstance(geom, ShapelyPolygon):
        return [] if geom.is_empty else [geom]
    if isinstance(geom, (MultiPolygon, GeometryCollection)):
        out: list[ShapelyPolygon] = []
        for g in geom.geoms:
            out.extend(_polygon_parts(g))
        return out
    return []


def _region_geom(ring: list[Point]) -> Any:
    parts = _polygon_parts(make_valid(ShapelyPolygon(ring)))
    if not parts:
        return ShapelyPolygon()
    return union_all(parts)


def _clean_ring(coords: list[tuple[float, float]]) -> list[Point] | None:
    pts = [(float(x), float(y)) for x, y in coords]
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a = pts[i - 1]
            b = pts[i]
            if a == b or orient(a, b, pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    return pts if len(pts) >= 3 else None


def _domain_from_shapely(geom: ShapelyPolygon) -> PolygonalDomain:
    geom = shapely_ccw(geom, 1.0)
    shell = _clean_ring(list(geom.exterior.coords)[:-1])
    if shell is None:
        raise DegenerateInputError("separator piece collapsed to a sliver")
    holes = []
    for ring in geom.interiors:
        cleaned = _clean_ring(list(ring.coords)[:-1][::-1])
        if cleaned is not None:
            holes.append(cleaned)
    try:
        return PolygonalDomain(
            SimplePolygon(shell),
            tuple(SimplePolygon(h) for h in holes),
            validate=False,
        )
    except InvalidPolygonError as exc:
        raise DegenerateInputError(f"split produced an invalid piece: {exc}") from exc


def split_domain(
    domain: PolygonalDomain | SimplePolygon,
    sep: Separator,
    sites: list[Point],
) -> list[SubInstance]:
    """Cut the domain along the separator and hand each site to its piece.

    Pieces without sites are dropped.  A "degenerate" separator yields the
    collinear chain itself plus the untouched remainder of the domain.
    """
    dom = as_domain(domain)
    n = len(sites)
    left_ids = sorted(sep.left_sites)
    right_ids = [i for i in range(n) if i not in sep.left_sites]

    if sep.kind == "degenerate":
        chain = sep.paths[0]
        a, b = chain.vertices[0], chain.vertices[-1]
        dx, dy = b[0] - a[0], b[1] - a[1]
        ordered = sorted(
            left_ids,
            key=lambda i: ((sites[i][0] - a[0]) * dx + (sites[i][1] - a[1]) * dy, i),
        )
        out = [SubInstance(None, chain, tuple(ordered))]
        if right_ids:
            out.append(SubInstance(dom, None, tuple(right_ids)))
        return out

    try:
        return _split_by_region(dom, sep, sites, left_ids, right_ids)
    except shapely_errors.GEOSException as exc:
        raise DegenerateInputError(f"region boolean failed: {exc}") from exc


def _split_by_region(
    dom: PolygonalDomain,
    sep: Separator,
    sites: list[Point],
    left_ids: list[int],
    right_ids: list[int],
) -> list[SubInstance]:
    whole = ShapelyPolygon(
        list(dom.outer.vertices), [list(h.vertices) for h in dom.holes]
    )
    bx0, by0, bx1, by1 = whole.bounds
    scale = math.hypot(bx1 - bx0, by1 - by0)
    p1, p2 = sep.paths[0], sep.paths[1]

    candidates = []
    if sep.kind == "three":
        ring = (
            list(p1.vertices)
            + list(sep.paths[2].vertices)[1:]
            + list(p2.vertices)[::-1][1:]
        )
        region = _region_geom(ring)
        candidates = [region.intersection(whole), whole.difference(region)]
    else:
        ring_poly = dom.outer if sep.arc_ring == 0 else dom.holes[sep.arc_ring - 1]
        verts = ring_poly.vertices
        ia = verts.index(p1.vertices[-1])
        ib = verts.index(p2.vertices[-1])
        count = len(verts)
        fwd = [verts[(ia + s) % count] for s in range((ib - ia) % count + 1)]
        bwd = [verts[(ia - s) % count] for s in range((ia - ib) % count + 1)]
        for arc in (fwd, bwd):
            ring = list(p1.vertices) + arc[1:] + list(p2.vertices)[::-1][1:]
            candidates.append(_region_geom(ring).intersection(whole))

    left_geom = min(candidates, key=lambda g: abs(g.area - sep.left_area))
    if abs(left_geom.area - sep.left_area) > 1e-6 * whole.area + 1e-12:
        raise DegenerateInputError("separator region does not match its weight")
    right_geom = whole.difference(left_geom)

    area_floor = 1e-12 * max(whole.area, 1.0)
    out: list[SubInstance] = []
    reflex_total = 0
    for ids, geom in ((left_ids, left_geom), (right_ids, right_geom)):
        parts = [g for g in _polygon_parts(geom) if g.area > area_floor]
        if ids and not parts:
            raise DegenerateInputError("a populated separator side has no region")
        assigned: list[list[int]] = [[] for _ in parts]
        for sid in ids:
            pt = ShapelyPoint(sites[sid])
            home = -1
            for j, g in enumerate(parts):
                if g.covers(pt):
                    home = j
                    break
            if home < 0:
                gaps = [g.distance(pt) for g in parts]
                home = gaps.index(min(gaps))
                if gaps[home] > 1e-7 * scale:
                    raise DegenerateInputError("site drifted away from its side")
            assigned[home].append(sid)
        for g, ids_here in zip(parts, assigned):
            piece = _domain_from_shapely(g)
            reflex_total += piece.reflex_count()
            if ids_here:
                out.append(SubInstance(piece, None, tuple(ids_here)))
    if sum(len(s.site_ids) for s in out) != len(sites):
        raise DegenerateInputError("site assignment lost a site")
    if reflex_total > dom.reflex_count() + 3:
        raise DegenerateInputError("split added more than three reflex corners")
    return out


# -- projections onto a separator path ----------------------------------------


def _tangent_at(line: list[Point], cum: list[float], param: float) -> Point:
    """Unit tangent of the polyline at arclength param; bisector at vertices."""
    dirs = []
    for j, c in enumerate(cum):
        if c == param:
            if j > 0:
                a, b = line[j - 1], line[j]
                dirs.append((b[0] - a[0], b[1] - a[1]))
            if j + 1 < len(line):
                a, b = line[j], line[j + 1]
                dirs.append((b[0] - a[0], b[1] - a[1]))
            break
    else:
        for j in range(1, len(line)):
            if cum[j - 1] < param < cum[j]:
                a, b = line[j - 1], line[j]
                dirs.append((b[0] - a[0], b[1] - a[1]))
                break
    tx = ty = 0.0
    for dx, dy in dirs:
        norm = math.hypot(dx, dy)
        if norm > 0:
            tx += dx / norm
            ty += dy / norm
    norm = math.hypot(tx, ty)
    return (tx / norm, ty / norm) if norm > 0 else (0.0, 0.0)


def _project_onto_path(
    eng: DomainEngine, line: list[Point], site_pts: list[Point]
) -> tuple[list[ChordProjection], ChordSPT]:
    """Geodesic projections of all sites onto one bounding path.

    One Dijkstra run from a virtual source wired to every candidate
    attachment keeps all projection legs inside a single consistent
    shortest-path tree.
    """
    cum = [0.0]
    for a, b in zip(line, line[1:]):
        cum.append(cum[-1] + dist(a, b))
    pts, mat, extra_idx = eng.graph_with(list(site_pts))
    nnode = len(pts)
    P = np.asarray(pts, dtype=float)
    scale = max(
        P[:, 0].max() - P[:, 0].min(), P[:, 1].max() - P[:, 1].min(), 1.0
    )
    best_cost = np.full(nnode, np.inf)
    best_param = np.zeros(nnode)
    best_foot: list[Point | None] = [None] * nnode
    node_of = {p: i for i, p in enumerate(pts)}

    for j, q in enumerate(line):
        g = node_of.get(q)
        if g is not None:
            if best_cost[g] > 0.0:
                best_cost[g] = 0.0
                best_param[g] = cum[j]
                best_foot[g] = q
        else:
            vis = eng.visible_from(q, P)
            d = np.hypot(P[:, 0] - q[0], P[:, 1] - q[1])
            upd = vis & (d < best_cost)
            for g2 in np.nonzero(upd)[0]:
                best_cost[g2] = d[g2]
                best_param[g2] = cum[j]
                best_foot[g2] = q

    for j in range(1, len(line)):
        a, b = line[j - 1], line[j]
        dx, dy = b[0] - a[0], b[1] - a[1]
        seg2 = dx * dx + dy * dy
        if seg2 == 0.0:
            continue
        t = ((P[:, 0] - a[0]) * dx + (P[:, 1] - a[1]) * dy) / seg2
        inside = (t > 0.0) & (t < 1.0)
        if not inside.any():
            continue
        fx = a[0] + t * dx
        fy = a[1] + t * dy
        cost = np.hypot(P[:, 0] - fx, P[:, 1] - fy)
        cand = inside & (cost < best_cost)
        ids = np.nonzero(cand)[0]
        if len(ids) == 0:
            continue
        near = cost[ids] <= 1e-12 * scale
        far = ids[~near]
        ok = np.zeros(len(ids), dtype=bool)
        ok[near] = True
        if len(far):
            feet = np.column_stack((fx[far], fy[far]))
            ok[~near] = eng.visible_pairs(P[far], feet)
        for g2 in ids[ok]:
            best_cost[g2] = cost[g2]
            best_param[g2] = cum[j - 1] + t[g2] * math.sqrt(seg2)
            best_foot[g2] = (float(fx[g2]), float(fy[g2]))

    coo = mat.tocoo()
    rows = list(coo.row)
    cols = list(coo.col)
    vals = list(coo.data)
    attached = np.nonzero(np.isfinite(best_cost))[0]
    for g in attached:
        rows.append(nnode)
        cols.append(int(g))
        # subnormal floor keeps zero-cost attachments stored in the matrix
        vals.append(max(float(best_cost[g]), 5e-324))
    full = csr_matrix((vals, (rows, cols)), shape=(nnode + 1, nnode + 1))
    dist_, pred = dijkstra(
        full, directed=False, indices=nnode, return_predecessors=True
    )

    spt = ChordSPT(root_point=line[0])
    projections: list[ChordProjection] = []
    for local, g in enumerate(extra_idx):
        w = float(dist_[g])
        if not math.isfinite(w):
            raise DegenerateInputError("a site cannot be linked to a bounding path")
        leg = [g]
        while pred[leg[-1]] != nnode:
            nxt = int(pred[leg[-1]])
            assert nxt >= 0
            leg.append(nxt)
        anchor = leg[-1]
        foot = best_foot[anchor]
        assert foot is not None
        fparam = float(best_param[anchor])
        leg_pts = [pts[x] for x in leg]
        if leg_pts[-1] != foot:
            leg_pts.append(foot)
        if len(leg_pts) >= 2:
            away = (leg_pts[-2][0] - foot[0], leg_pts[-2][1] - foot[1])
        else:
            away = (0.0, 0.0)
        tangent = _tangent_at(line, cum, fparam)
        cr = tangent[0] * away[1] - tangent[1] * away[0]
        thr = 1e-12 * math.hypot(*away)
        side = -1 if cr > thr else (1 if cr < -thr else 0)
        projections.append(
            ChordProjection(
                site=local, foot=foot, weight=w, parameter=fparam, side=side
            )
        )
        spt.add_site(local, leg_pts, side, fparam)
    spt.finish()
    return projections, spt


# -- recursive construction ----------------------------------------------------


def build_domain_spanner(
    domain: PolygonalDomain | SimplePolygon,
    sites: list[Point],
    k: int = 1,
    collect_trace: bool = False,
) -> SpannerGraph:
    """Relaxed geodesic spanner for sites in a domain with holes.

    Each recursion level finds a balanced separator, projects every site onto
    each bounding path, and spans the projections with the grouped
    one-dimensional construction; pieces recurse independently.  Degenerate
    geometry falls back to a complete graph on the affected piece, which
    preserves the stretch bound at the cost of extra edges.
    """
    dom = as_domain(domain)
    if k < 1:
        raise ValueError("k must be at least 1")
    pts0 = [(float(p[0]), float(p[1])) for p in sites]
    for p in pts0:
        if not dom.contains(p):
            raise OutsidePolygonError(f"site {p} lies outside the domain")
    graph = SpannerGraph(tuple(pts0), meta={"variant": "domain", "k": k})
    trace: list[dict[str, Any]] = []
    edge_tally: list[tuple[int, int]] = []

    def add_clique(d: PolygonalDomain, ids: list[int], pts: list[Point]) -> None:
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                if pts[a] == pts[b]:
                    continue
                graph.add(ids[a], ids[b], domain_geodesic(d, pts[a], pts[b]))

    def recurse(
        d: PolygonalDomain, ids: list[int], pts: list[Point], depth: int
    ) -> None:
        nloc = len(ids)
        if nloc <= 1:
            return
        if nloc <= 4 or depth > 64:
            add_clique(d, ids, pts)
            return
        try:
            sep = balanced_sp_separator(d, pts, collect_trace=collect_trace)
            eng = engine_for(d)
            for path in sep.paths:
                line = list(path.vertices)
                if len(line) < 2 or polyline_length(line) <= 0.0:
                    continue
                projections, spt = _project_onto_path(eng, line, pts)
                weighted = [
                    WeightedSite1D(pr.parameter, pr.weight, pr.site)
                    for pr in projections
                ]
                order = group_order(spt)
                spanner1d, _groups = build_grouped_spanner(weighted, order, k)
                for a, b in spanner1d.edges:
                    piece, via = pi_lambda_path(
                        pts[a], pts[b], projections[a], projections[b], spt, line=line
                    )
                    graph.add(ids[a], ids[b], piece, via)
                if collect_trace:
                    edge_tally.append((depth, len(spanner1d.edges)))
            pieces = split_domain(d, sep, pts)
        except DegenerateInputError:
            add_clique(d, ids, pts)
            return
        if collect_trace:
            entry = {
                "depth": depth,
                "n": nloc,
                "kind": sep.kind,
                "left": len(sep.left_sites),
                "reflex_parent": d.reflex_count(),
                "reflex_pieces": sum(
                    s.domain.reflex_count() for s in pieces if s.domain is not None
                ),
                "pieces": [len(s.site_ids) for s in pieces],
                "walk": sep.trace["walk"] if sep.trace else [],
            }
            trace.append(entry)
        for piece in pieces:
            sub_ids = [ids[i] for i in piece.site_ids]
            sub_pts = [pts[i] for i in piece.site_ids]
            if len(sub_ids) >= nloc:
                add_clique(d, sub_ids, sub_pts)
                continue
            if piece.chain is not None:
                for j in range(len(sub_ids) - 1):
                    if sub_pts[j] == sub_pts[j + 1]:
                        continue
                    graph.add(
                        sub_ids[j],
                        sub_ids[j + 1],
                        GeodesicPath.from_points([sub_pts[j], sub_pts[j + 1]]),
                    )
            else:
                assert piece.domain is not None
                recurse(piece.domain, sub_ids, sub_pts, depth + 1)

    recurse(dom, list(range(len(pts0))), pts0, 0)
    if collect_trace:
        graph.meta["trace"] = trace
        graph.meta["edge_tally"] = edge_tally
    return graph
