"""Geodesic spanners for point sites in a simple polygon.

Each recursion node picks a balanced vertical chord, projects all sites
onto it, runs a weighted 1-d construction on the projections, realizes
every 1-d edge as a polygon path, and recurses on the two closed pieces.
Pairs separated by some chord are covered at that node; pairs never
separated end up together in a size <= 2 base case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .chords import (
    Chord,
    cut_polygon,
    group_order,
    pi_lambda_path,
    project_all,
)
from .errors import DegenerateInputError
from .geodesic import GeodesicEngine, GeodesicPath
from .polygon import SimplePolygon
from .primitives import Point
from .spanner_graph import SpannerGraph
from .trapezoids import TrapezoidalDecomposition, decompose
from .weighted_line import WeightedSite1D, build_2spanner, build_grouped_spanner


@dataclass(frozen=True)
class ChordSplit:
    """A balanced vertical chord with the induced site partition.

    Sites on the chord itself count toward the left (closed) side; `sides`
    is aligned with the input sites, -1 left, 0 on the chord, +1 right.
    """

    chord: Chord
    left: tuple[int, ...]
    right: tuple[int, ...]
    sides: tuple[int, ...]


def _subtree_cells(children: dict[int, list[int]], root: int) -> set[int]:
    out = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in children[u]:
            out.add(w)
            stack.append(w)
    return out


def _wall_chord(dec: TrapezoidalDecomposition, a: int, b: int) -> Chord:
    u, lo, hi = dec.shared_wall(a, b)
    ca, cb = dec.cells[a], dec.cells[b]
    lo_edge = ca.lo_edge
    if dec.edge_value_at(cb.lo_edge, u) > dec.edge_value_at(ca.lo_edge, u):
        lo_edge = cb.lo_edge
    hi_edge = ca.hi_edge
    if dec.edge_value_at(cb.hi_edge, u) < dec.edge_value_at(ca.hi_edge, u):
        hi_edge = cb.hi_edge
    return Chord((u, lo), (u, hi), lo_edge, hi_edge)


def balanced_vertical_chord(
    poly: SimplePolygon,
    dec: TrapezoidalDecomposition,
    sites: list[Point],
) -> ChordSplit:
    """A vertical chord leaving at most ceil(2n/3) sites on either side.

    Walks the decomposition's dual tree to the last cell whose subtree holds
    more than 2n/3 sites; either a wall below that cell is already balanced,
    or every hanging component is light and a cut through the cell's own
    sites balances by counting.
    """
    n = len(sites)
    if n < 2:
        raise DegenerateInputError("need at least two sites to split")
    if dec.axis != "vertical":
        raise DegenerateInputError("chord selection needs a vertical decomposition")
    cells = dec.cells
    cell_of = [dec.locate(p) for p in sites]
    count: dict[int, int] = {}
    for c in cell_of:
        count[c] = count.get(c, 0) + 1

    parent = {0: -1}
    order = [0]
    children: dict[int, list[int]] = {c: [] for c in range(len(cells))}
    for u in order:
        for w in cells[u].neighbors:
            if w not in parent:
                parent[w] = u
                children[u].append(w)
                order.append(w)
    sub = {c: count.get(c, 0) for c in range(len(cells))}
    for u in reversed(order[1:]):
        sub[parent[u]] += sub[u]

    v = 0
    while True:
        heavy = [w for w in children[v] if 3 * sub[w] > 2 * n]
        if not heavy:
            break
        v = heavy[0]

    kids = sorted(children[v], key=lambda w: (-sub[w], w))
    chord: Chord
    if kids and 3 * sub[kids[0]] >= n:
        w_star = kids[0]
        chord = _wall_chord(dec, v, w_star)
        w_cells = _subtree_cells(children, w_star)
        w_is_left = w_star in cells[v].left_neighbors
        sides = []
        for p, c in zip(sites, cell_of):
            if p[0] == chord.x and chord.bottom[1] <= p[1] <= chord.top[1]:
                sides.append(0)
            elif (c in w_cells) == w_is_left:
                sides.append(-1)
            else:
                sides.append(1)
    else:
        left_count = 0
        neighbors_left = set(cells[v].left_neighbors)
        for w in children[v]:
            if w in neighbors_left:
                left_count += sub[w]
        comp_side: dict[int, int] = {}
        for w in children[v]:
            tag = -1 if w in neighbors_left else 1
            for c in _subtree_cells(children, w):
                comp_side[c] = tag
        if parent[v] != -1:
            tag = -1 if parent[v] in neighbors_left else 1
            if tag < 0:
                left_count += n - sub[v]
            for c in range(len(cells)):
                if c not in comp_side and c != v:
                    comp_side[c] = tag
        own = sorted(
            (i for i, c in enumerate(cell_of) if c == v),
            key=lambda i: (sites[i][0], sites[i][1], i),
        )
        target = (n + 2) // 3
        s = min(max(target - left_count, 0), len(own))
        cell = cells[v]

        def cut_at(j: int) -> float | None:
            lo_x = cell.left_u if j == 0 else sites[own[j - 1]][0]
            hi_x = cell.right_u if j == len(own) else sites[own[j]][0]
            if not lo_x < hi_x:
                return None
            xi = (lo_x + hi_x) / 2
            if not (lo_x < xi < hi_x and cell.left_u < xi < cell.right_u):
                return None
            return xi

        xi = None
        for step in range(0, max(s, len(own) - s) + 1):
            for j in ((s + step, s - step) if step else (s,)):
                if 0 <= j <= len(own):
                    xi = cut_at(j)
                    if xi is not None:
                        break
            if xi is not None:
                break
        if xi is None:
            raise DegenerateInputError("no vertical cut separates the cell's sites")
        chord = Chord(
            (xi, dec.edge_value_at(cell.lo_edge, xi)),
            (xi, dec.edge_value_at(cell.hi_edge, xi)),
            cell.lo_edge,
            cell.hi_edge,
        )
        sides = []
        for p, c in zip(sites, cell_of):
            if c == v:
                if p[0] == xi and chord.bottom[1] <= p[1] <= chord.top[1]:
                    sides.append(0)
                else:
                    sides.append(-1 if p[0] < xi else 1)
            else:
                sides.append(comp_side[c])

    left = tuple(i for i, s_ in enumerate(sides) if s_ <= 0)
    right = tuple(i for i, s_ in enumerate(sides) if s_ > 0)
    cap = -(-2 * n // 3)
    if not left or not right or len(left) > cap or len(right) > cap:
        raise DegenerateInputError(
            f"chord split {len(left)}/{len(right)} misses the 2n/3 balance"
        )
    return ChordSplit(chord, left, right, tuple(sides))


def _swap_point(p: Point) -> Point:
    return (p[1], p[0])


def _swap_poly(poly: SimplePolygon) -> SimplePolygon:
    pts = tuple(_swap_point(p) for p in reversed(poly.vertices))
    return SimplePolygon(pts, validate=False)


def _unflip_path(path: GeodesicPath, flipped: bool) -> GeodesicPath:
    if not flipped:
        return path
    return GeodesicPath(tuple(_swap_point(p) for p in path.vertices), path.length)


def build_simple_spanner(
    poly: SimplePolygon,
    sites: list[Point],
    variant: str = "plain",
    k: int = 1,
    alternate_axes: bool = False,
    collect_trace: bool = False,
) -> SpannerGraph:
    """Geodesic spanner on sites in a simple polygon.

    variant "plain" realizes the 1-d 2-spanner edges as true geodesics
    (stretch 2 sqrt 2); variant "grouped" uses the k-level grouped 1-d
    construction and routes edges through the chord's shortest path tree
    (stretch 2 sqrt 2 k, fewer bends in total).
    """
    if variant not in ("plain", "grouped"):
        raise ValueError(f"unknown variant: {variant!r}")
    if variant == "grouped" and k < 1:
        raise ValueError("k must be >= 1")
    graph = SpannerGraph(tuple(sites), meta={"variant": variant, "k": k})
    trace: list[dict[str, Any]] | None = [] if collect_trace else None

    def rec(
        node_poly: SimplePolygon,
        ids: list[int],
        pts: list[Point],
        flipped: bool,
        depth: int,
    ):
        n = len(ids)
        if n <= 1:
            return
        if n == 2:
            eng = GeodesicEngine(decompose(node_poly, "vertical"))
            gp = GeodesicPath.from_points(eng.path(pts[0], pts[1]))
            graph.add(ids[0], ids[1], _unflip_path(gp, flipped))
            if trace is not None:
                trace.append(
                    {"ids": list(ids), "depth": depth, "edges_local": [(0, 1)]}
                )
            return
        vd = decompose(node_poly, "vertical")
        split = balanced_vertical_chord(node_poly, vd, pts)
        projections, spt = project_all(node_poly, split.chord, pts, list(split.sides))
        wsites = [
            WeightedSite1D(pr.parameter, pr.weight, pr.site) for pr in projections
        ]
        record: dict[str, Any] = {}
        if variant == "plain":
            sp1 = build_2spanner(wsites)
            eng = GeodesicEngine(vd)
            for a, b in sp1.edges:
                gp = GeodesicPath.from_points(eng.path(pts[a], pts[b]))
                graph.add(ids[a], ids[b], _unflip_path(gp, flipped))
            gtree = None
            order = None
        else:
            order = group_order(spt)
            sp1, gtree = build_grouped_spanner(wsites, order, k)
            for a, b in sp1.edges:
                gp, via = pi_lambda_path(
                    pts[a], pts[b], projections[a], projections[b], spt
                )
                if flipped:
                    via = tuple(_swap_point(v) for v in via)
                graph.add(ids[a], ids[b], _unflip_path(gp, flipped), via)
        if trace is not None:
            record.update(
                ids=list(ids),
                depth=depth,
                chord=split.chord,
                sides=split.sides,
                spt=spt,
                projections=projections,
                order=order,
                group_tree=gtree,
                edges_local=list(sp1.edges),
                edge_levels=list(sp1.levels),
                poly=node_poly,
                flipped=flipped,
            )
            trace.append(record)
        left_poly, right_poly, _, _ = cut_polygon(node_poly, split.chord)
        for side_ids, side_poly in ((split.left, left_poly), (split.right, right_poly)):
            child_ids = [ids[i] for i in side_ids]
            child_pts = [pts[i] for i in side_ids]
            child_flipped = flipped
            if alternate_axes:
                side_poly = _swap_poly(side_poly)
                child_pts = [_swap_point(p) for p in child_pts]
                child_flipped = not flipped
            rec(side_poly, child_ids, child_pts, child_flipped, depth + 1)

    pts0 = list(sites)
    poly0 = poly
    rec(poly0, list(range(len(sites))), pts0, False, 0)
    if trace is not None:
        graph.meta["trace"] = trace
    return graph


__all__ = [
    "ChordSplit",
    "balanced_vertical_chord",
    "build_simple_spanner",
    "group_order",
    "pi_lambda_path",
]
