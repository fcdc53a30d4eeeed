"""Vertical chords of a simple polygon: cutting, site projection, and the
chord-rooted shortest path tree.

Projection works per side. After cutting, the chord is a boundary edge of
the side polygon, so in the side's horizontal decomposition the cells
bounded by that edge see the chord across their whole slab ("direct"
cells): a site there projects horizontally. Every other cell hangs off the
direct chain through exactly one wall (the dual is a tree), and all its
sites share the foot at the point where that wall meets the chord; their
weights are funnel distances. This reproduces the optimal feet: any path
to the chord must cross the entry wall, and from the wall the horizontal
run to the chord is the cheapest finish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidChordError, OutsidePolygonError
from .geodesic import GeodesicEngine, GeodesicPath
from .polygon import SimplePolygon
from .primitives import Point, dist, polyline_length, strip_collinear
from .trapezoids import decompose


@dataclass(frozen=True)
class Chord:
    """A maximal vertical segment interior to a polygon, splitting it."""

    bottom: Point
    top: Point
    bottom_edge: int
    top_edge: int

    def __post_init__(self) -> None:
        if self.bottom[0] != self.top[0] or self.bottom[1] >= self.top[1]:
            raise InvalidChordError("chord must be vertical with bottom below top")

    @property
    def x(self) -> float:
        return self.bottom[0]

    @property
    def length(self) -> float:
        return self.top[1] - self.bottom[1]

    def parameter(self, p: Point) -> float:
        """Arclength of a chord point from the bottom endpoint."""
        return p[1] - self.bottom[1]


@dataclass(frozen=True)
class ChordProjection:
    site: int
    foot: Point
    weight: float
    parameter: float
    side: int  # -1 left of the chord, 0 on it, +1 right


def cut_polygon(
    poly: SimplePolygon, chord: Chord
) -> tuple[SimplePolygon, SimplePolygon, int, int]:
    """Split poly along a vertical chord.

    Returns (left polygon, right polygon, left chord edge index, right chord
    edge index); the chord is the last edge of both pieces.
    """
    verts = poly.vertices
    m = len(verts)
    t, b = chord.top, chord.bottom

    def walk(start_pt: Point, start_edge: int, stop_pt: Point, stop_edge: int):
        pts = [start_pt]
        i = (start_edge + 1) % m
        while True:
            cur_edge = (i - 1) % m
            if cur_edge == stop_edge:
                break
            pts.append(verts[i])
            i = (i + 1) % m
            if len(pts) > m + 2:
                raise InvalidChordError("chord endpoints not on the stated edges")
        pts.append(stop_pt)
        out = []
        for p in pts:
            if not out or p != out[-1]:
                out.append(p)
        return out

    left_pts = walk(t, chord.top_edge, b, chord.bottom_edge)
    right_pts = walk(b, chord.bottom_edge, t, chord.top_edge)
    left = SimplePolygon(tuple(left_pts), validate=False)
    right = SimplePolygon(tuple(right_pts), validate=False)
    return left, right, len(left_pts) - 1, len(right_pts) - 1


def _project_side(
    side_poly: SimplePolygon,
    chord_edge: int,
    chord: Chord,
    sites: list[tuple[int, Point]],
) -> list[tuple[int, Point, float, list[Point]]]:
    """Feet, weights, and site-to-foot paths for sites of one side polygon.

    Returns per site (id, foot, weight, path) with path[0] = site point and
    path[-1] = foot.
    """
    if not sites:
        return []
    hd = decompose(side_poly, "horizontal")
    cells = hd.cells
    direct = [
        c.index for c in cells if c.lo_edge == chord_edge or c.hi_edge == chord_edge
    ]
    if not direct:
        raise InvalidChordError("chord edge bounds no cell of its side polygon")
    cx = chord.x
    foot_of: dict[int, Point | None] = {c: None for c in direct}
    queue = list(direct)
    for c in queue:
        for nb in cells[c].neighbors:
            if nb in foot_of:
                continue
            if foot_of[c] is None:
                w, _, _ = hd.shared_wall(c, nb)  # wall height in sweep u = y
                foot_of[nb] = (cx, w)
            else:
                foot_of[nb] = foot_of[c]
            queue.append(nb)
    engine: GeodesicEngine | None = None
    out = []
    for sid, p in sites:
        cell = hd.locate(p)
        foot = foot_of[cell]
        if foot is None:  # direct cell: horizontal projection
            foot = (cx, p[1])
            if p == foot:
                out.append((sid, foot, 0.0, [p]))
            else:
                out.append((sid, foot, abs(cx - p[0]), [p, foot]))
        else:
            if engine is None:
                engine = GeodesicEngine(hd)
            path = engine.path(p, foot)
            out.append((sid, foot, polyline_length(path), path))
    return out


class ChordSPT:
    """Shortest path tree rooted on a splitting curve.

    The curve (a vertical chord, or a separator path in a domain) carries
    one node per distinct projection point, chained by curve parameter from
    a root at parameter 0. Site-to-foot geodesics hang off their feet, with
    polygon vertices as internal nodes and sites as leaves. Node distances
    are measured to the curve.
    """

    ROOT, FOOT, VERTEX, SITE = 0, 1, 2, 3

    def __init__(self, root_point: Point) -> None:
        self.root_point = root_point
        self.points: list[Point] = [root_point]
        self.kind: list[int] = [self.ROOT]
        self.parent: list[int] = [-1]
        self.dist: list[float] = [0.0]
        self.side: list[int] = [0]
        self.children: list[list[int]] = [[]]
        self.depth: list[int] = [0]
        self.site_node: dict[int, int] = {}
        self.foot_param: dict[int, float] = {0: 0.0}
        self._foot_node: dict[Point, int] = {root_point: 0}
        self._vertex_node: dict[tuple[int, Point], int] = {}

    def _new_node(self, p: Point, kind: int, parent: int, d: float, side: int) -> int:
        i = len(self.points)
        self.points.append(p)
        self.kind.append(kind)
        self.parent.append(parent)
        self.dist.append(d)
        self.side.append(side)
        self.children.append([])
        self.depth.append(self.depth[parent] + 1 if parent >= 0 else 0)
        if parent >= 0:
            self.children[parent].append(i)
        return i

    def _foot(self, p: Point, param: float) -> int:
        node = self._foot_node.get(p)
        if node is None:
            node = self._new_node(p, self.FOOT, -1, 0.0, 0)
            self._foot_node[p] = node
            self.foot_param[node] = param
        return node

    def add_site(self, sid: int, path: list[Point], side: int, param: float) -> None:
        """Attach a site via its foot path (path[-1] is the foot, at the
        given curve parameter)."""
        foot = self._foot(path[-1], param)
        cur = foot
        d = 0.0
        for i in range(len(path) - 2, 0, -1):
            p = path[i]
            d += dist(self.points[cur], p)
            key = (side, p)
            node = self._vertex_node.get(key)
            if node is None:
                node = self._new_node(p, self.VERTEX, cur, d, side)
                self._vertex_node[key] = node
            cur = node
        d += dist(self.points[cur], path[0])
        self.site_node[sid] = self._new_node(path[0], self.SITE, cur, d, side)

    def finish(self) -> None:
        """Chain the foot nodes by curve parameter and fix depths."""
        feet = sorted(
            (n for n in self._foot_node.values() if n != 0),
            key=lambda n: (self.foot_param[n], self.points[n]),
        )
        self.feet = [0] + feet
        prev = 0
        for n in feet:
            self.parent[n] = prev
            self.children[prev].append(n)
            prev = n
        # recompute depths after wiring the chord chain
        order = [0]
        for u in order:
            for v in self.children[u]:
                self.depth[v] = self.depth[u] + 1
                order.append(v)

    def lca(self, a: int, b: int) -> int:
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
        return a

    def path_to_foot(self, node: int) -> list[Point]:
        """Points from a node down to its foot on the chord."""
        out = [self.points[node]]
        while self.kind[node] not in (self.ROOT, self.FOOT):
            node = self.parent[node]
            out.append(self.points[node])
        return out


def project_all(
    poly: SimplePolygon,
    chord: Chord,
    sites: list[Point],
    sides: list[int] | None = None,
) -> tuple[list[ChordProjection], ChordSPT]:
    """Closest chord point, weight, and foot path for every site.

    sides may carry a precomputed -1/0/+1 side per site; otherwise sites are
    assigned by membership in the closed left piece.
    """
    mid = (chord.x, (chord.bottom[1] + chord.top[1]) / 2)
    if not poly.contains(mid):
        raise InvalidChordError("chord is not interior to the polygon")
    left_poly, right_poly, le, re_ = cut_polygon(poly, chord)
    if sides is None:
        sides = []
        left_dec = decompose(left_poly, "horizontal")
        for p in sites:
            if p[0] == chord.x:
                sides.append(0)
                continue
            try:
                left_dec.locate(p)
                sides.append(-1)
            except OutsidePolygonError:
                sides.append(1)
    left_sites = [(i, p) for i, (p, s) in enumerate(zip(sites, sides)) if s < 0]
    right_sites = [(i, p) for i, (p, s) in enumerate(zip(sites, sides)) if s > 0]
    on_sites = [(i, p) for i, (p, s) in enumerate(zip(sites, sides)) if s == 0]

    spt = ChordSPT(chord.bottom)
    projections: list[ChordProjection | None] = [None] * len(sites)

    for side_tag, results in (
        (-1, _project_side(left_poly, le, chord, left_sites)),
        (1, _project_side(right_poly, re_, chord, right_sites)),
    ):
        for sid, foot, weight, path in results:
            param = chord.parameter(foot)
            projections[sid] = ChordProjection(sid, foot, weight, param, side_tag)
            spt.add_site(sid, path, side_tag, param)
    for sid, p in on_sites:
        param = chord.parameter(p)
        projections[sid] = ChordProjection(sid, p, 0.0, param, 0)
        spt.add_site(sid, [p], 0, param)
    spt.finish()
    return [pr for pr in projections if pr is not None], spt


def _subtree_sites(spt: ChordSPT, start: int) -> list[int]:
    """Site ids in one side subtree, in a deterministic planar-ish DFS."""
    out = []
    stack = [start]
    while stack:
        u = stack.pop()
        if spt.kind[u] == ChordSPT.SITE:
            out.append(u)
        kids = sorted(spt.children[u], key=lambda v: _angle_key(spt, u, v))
        stack.extend(reversed(kids))
    return out


def _angle_key(spt: ChordSPT, u: int, v: int):
    pu, pv = spt.points[u], spt.points[v]
    ang = math.atan2(pv[1] - pu[1], pv[0] - pu[0])
    return (ang, spt.kind[v], pv, spt.dist[v])


def group_order(spt: ChordSPT) -> list[int]:
    """In-order traversal of the chord tree as a site-id sequence.

    Left-side sites come out bottom-to-top along the chord, right-side sites
    top-to-bottom, and each side subtree stays contiguous, which is what the
    grouped constructions need from the order.
    """
    node_to_site = {node: sid for sid, node in spt.site_node.items()}
    order: list[int] = []
    rights: list[list[int]] = []
    for f in spt.feet:
        lefts, ons, rs = [], [], []
        for ch in sorted(spt.children[f], key=lambda v: _angle_key(spt, f, v)):
            if spt.kind[ch] == ChordSPT.FOOT:
                continue
            sub = _subtree_sites(spt, ch)
            if spt.side[ch] < 0:
                lefts.extend(sub)
            elif spt.side[ch] > 0:
                rs.extend(sub)
            else:
                ons.extend(sub)
        order.extend(lefts)
        order.extend(ons)
        rights.append(rs)
    for rs in reversed(rights):
        order.extend(rs)
    return [node_to_site[n] for n in order]


def pi_lambda_path(
    p: Point,
    q: Point,
    proj_p: ChordProjection,
    proj_q: ChordProjection,
    spt: ChordSPT,
    line: list[Point] | None = None,
) -> tuple[GeodesicPath, tuple[Point, ...]]:
    """Path from p to q through the splitting curve, shortcut where the two
    legs overlap.

    `line` is the curve polyline for non-straight curves (separator paths);
    omitted, the two feet are joined by a straight segment. Returns (path,
    via points): via is (p_foot, q_foot) when the legs are disjoint and (r,)
    when they overlap at r.
    """
    np_, nq = spt.site_node[proj_p.site], spt.site_node[proj_q.site]
    if proj_p.foot == proj_q.foot:
        r = spt.lca(np_, nq)
        leg_p = _points_up_to(spt, np_, r)
        leg_q = _points_up_to(spt, nq, r)
        pts = strip_collinear(leg_p + leg_q[-2::-1])
        length = spt.dist[np_] + spt.dist[nq] - 2 * spt.dist[r]
        return GeodesicPath(tuple(pts), length), (spt.points[r],)
    leg_p = spt.path_to_foot(np_)
    leg_q = spt.path_to_foot(nq)
    if line is None:
        middle: list[Point] = []
    else:
        lo, hi = sorted((proj_p.parameter, proj_q.parameter))
        middle = _polyline_between(line, lo, hi)
        if proj_p.parameter > proj_q.parameter:
            middle.reverse()
    pts = strip_collinear(leg_p + middle + leg_q[::-1])
    length = (
        proj_p.weight + abs(proj_p.parameter - proj_q.parameter) + proj_q.weight
    )
    return GeodesicPath(tuple(pts), length), (proj_p.foot, proj_q.foot)


def _polyline_between(line: list[Point], lo: float, hi: float) -> list[Point]:
    """Interior vertices of a polyline strictly between two arclengths."""
    out = []
    acc = 0.0
    for i in range(1, len(line) - 1):
        acc += dist(line[i - 1], line[i])
        if lo < acc < hi:
            out.append(line[i])
    return out


def _points_up_to(spt: ChordSPT, node: int, stop: int) -> list[Point]:
    out = [spt.points[node]]
    while node != stop:
        node = spt.parent[node]
        out.append(spt.points[node])
    return out
