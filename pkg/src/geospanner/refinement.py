"""Relaxed (2k+eps)-spanners in a simple polygon via angle-indexed
projection points.

The plain construction projects each site to its closest chord point,
which costs a sqrt(2) detour factor. Here each site generates a family of
chord points indexed by the slope of the last path segment: index i
targets slope delta*i (rise along the chord over horizontal reach), where
delta = eps/(2k). Pairing a left-side family with a right-side family
yields a tree of non-crossing legs, and a grouped 1-d spanner per pair
keeps one near-optimal crossing point for every opposite-side site pair,
which drops the detour to 1+delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chords import (
    Chord,
    ChordProjection,
    ChordSPT,
    cut_polygon,
    group_order,
    pi_lambda_path,
    project_all,
)
from .errors import InvalidEpsilonError
from .geodesic import GeodesicEngine, GeodesicPath
from .polygon import SimplePolygon
from .primitives import Point, polyline_length
from .simple_spanner import balanced_vertical_chord
from .spanner_graph import SpannerGraph
from .trapezoids import decompose
from .weighted_line import WeightedSite1D, build_grouped_spanner


@dataclass(frozen=True)
class ChordAnglePoint:
    """One generated chord point: where on the chord, how far from the
    site, and the geodesic leg realizing that distance."""

    point: Point
    weight: float
    parameter: float
    leg: tuple[Point, ...]  # leg[0] is the site, leg[-1] the chord point


@dataclass(frozen=True)
class RefinedProjectionSet:
    """Per-site families of weighted chord points, keyed by slope index.

    Index 0 is always the closest point. Positive indices sit above it on
    the chord, negative below; an index is missing when no chord point
    realizes its slope. ``sides`` records -1/0/+1 chord sides per site.
    """

    chord: Chord
    delta: float
    index_bound: int
    sides: tuple[int, ...]
    entries: tuple[dict[int, ChordAnglePoint], ...]

    def count_points(self) -> int:
        return sum(len(e) for e in self.entries)


def _last_slope(path: list[Point], cx: float) -> float:
    """Signed slope measure of the final path segment against a vertical
    chord at x = cx: rise along the chord per unit of horizontal reach."""
    z = path[-2]
    x = path[-1]
    run = abs(z[0] - cx)
    rise = x[1] - z[1]
    if run == 0.0:
        if rise == 0.0:
            return 0.0
        return math.copysign(math.inf, rise)
    return rise / run


def _solve_slope(
    engine: GeodesicEngine,
    p: Point,
    chord: Chord,
    target: float,
    lo: float,
    hi: float,
) -> tuple[float, list[Point]] | None:
    """Chord parameter whose geodesic from p ends with the target slope.

    The slope is continuous, piecewise linear, and strictly increasing in
    the parameter, so a secant step that solves the current linear piece
    exactly converges in a few funnel evaluations; bisection guards the
    bracket when a step leaves it.
    """
    cx = chord.x
    by = chord.bottom[1]
    tol = 1e-13 * max(chord.length, 1.0)
    probe = (lo + hi) / 2
    best: tuple[float, list[Point]] | None = None
    for _ in range(64):
        path = engine.path(p, (cx, by + probe))
        if len(path) < 2:
            return None
        z = path[-2]
        slope = _last_slope(path, cx)
        if slope == target:
            return probe, path
        if slope < target:
            lo = probe
        else:
            hi = probe
        if hi - lo <= tol:
            best = (probe, path)
            break
        run = abs(z[0] - cx)
        predicted = (z[1] - by) + target * run
        if lo < predicted < hi:
            probe = predicted
        else:
            probe = (lo + hi) / 2
    if best is None:
        probe = (lo + hi) / 2
        path = engine.path(p, (cx, by + probe))
        if len(path) < 2:
            return None
        best = (probe, path)
    return best


def angle_points(
    poly: SimplePolygon,
    chord: Chord,
    sites: list[Point],
    k: int = 1,
    eps: float = 0.5,
    sides: list[int] | None = None,
) -> RefinedProjectionSet:
    """Slope-indexed chord point families for every site.

    Index i targets last-segment slope delta*i with delta = eps/(2k), up
    to |i| <= ceil(3/delta^2); the index-0 entry is the plain closest
    point. Slopes beyond the chord's reach yield no entry.
    """
    if not 0 < eps < 2 * k:
        raise InvalidEpsilonError(f"eps must lie in (0, {2 * k}), got {eps}")
    delta = eps / (2 * k)
    bound = math.ceil(3 / (delta * delta))
    projections, spt0 = project_all(poly, chord, sites, sides)
    side_of = tuple(pr.side for pr in projections)
    engine = GeodesicEngine(decompose(poly, "vertical"))
    cx = chord.x
    by = chord.bottom[1]
    length = chord.length

    entries: list[dict[int, ChordAnglePoint]] = []
    for s, p in enumerate(sites):
        pr = projections[s]
        leg0 = tuple(spt0.path_to_foot(spt0.site_node[s]))
        fam: dict[int, ChordAnglePoint] = {
            0: ChordAnglePoint(pr.foot, pr.weight, pr.parameter, leg0)
        }
        entries.append(fam)
        if pr.side == 0:
            continue
        path_b = engine.path(p, (cx, by))
        path_t = engine.path(p, (cx, by + length))
        if len(path_b) < 2 or len(path_t) < 2:
            continue
        g_lo = _last_slope(path_b, cx)
        g_hi = _last_slope(path_t, cx)
        i_min = -bound if g_lo == -math.inf else math.ceil(g_lo / delta - 1e-12)
        i_max = bound if g_hi == math.inf else math.floor(g_hi / delta + 1e-12)
        run_lo = 0.0
        for i in range(max(i_min, -bound), min(i_max, bound) + 1):
            if i == 0:
                run_lo = pr.parameter
                continue
            target = delta * i
            found = _solve_slope(engine, p, chord, target, run_lo, length)
            if found is None:
                continue
            param, path = found
            slope = _last_slope(path, cx)
            if not math.isfinite(slope) or abs(slope - target) > 1e-6 * max(
                1.0, abs(target)
            ):
                continue
            run_lo = param
            fam[i] = ChordAnglePoint(
                (cx, by + param), polyline_length(path), param, tuple(path)
            )
    return RefinedProjectionSet(
        chord, delta, bound, side_of, tuple(entries)
    )


def naive_refinement_points(
    poly: SimplePolygon,
    chord: Chord,
    sites: list[Point],
    t: float = 2.0,
    eps: float = 0.5,
) -> RefinedProjectionSet:
    """Equally spaced chord point families, the grid alternative.

    Around each site's closest point, grid points spaced delta*d apart
    (delta = eps/t, d the site's projection distance) cover a radius of
    (1+2/delta)*d, clipped to the chord. Each grid point is the closest
    point of one grid piece, weighted by its geodesic distance.
    """
    if not 0 < eps:
        raise InvalidEpsilonError(f"eps must be positive, got {eps}")
    delta = eps / t
    projections, spt0 = project_all(poly, chord, sites)
    side_of = tuple(pr.side for pr in projections)
    engine = GeodesicEngine(decompose(poly, "vertical"))
    cx = chord.x
    by = chord.bottom[1]
    length = chord.length
    bound = math.ceil((1 + 2 / delta) / delta)

    entries: list[dict[int, ChordAnglePoint]] = []
    for s, p in enumerate(sites):
        pr = projections[s]
        leg0 = tuple(spt0.path_to_foot(spt0.site_node[s]))
        fam: dict[int, ChordAnglePoint] = {
            0: ChordAnglePoint(pr.foot, pr.weight, pr.parameter, leg0)
        }
        entries.append(fam)
        if pr.side == 0 or pr.weight == 0.0:
            continue
        step = delta * pr.weight
        for i in range(-bound, bound + 1):
            if i == 0:
                continue
            param = pr.parameter + i * step
            if not 0.0 <= param <= length:
                continue
            point = (cx, by + param)
            path = engine.path(p, point)
            fam[i] = ChordAnglePoint(
                point, polyline_length(path), param, tuple(path)
            )
    return RefinedProjectionSet(
        chord, delta, bound, side_of, tuple(entries)
    )


def _family(
    rps: RefinedProjectionSet, side: int, idx: int
) -> tuple[tuple[int, ChordAnglePoint], ...]:
    """Sites of one chord side with their index-idx points; on-chord sites
    ride with the left family at every index."""
    out = []
    for s, fam in enumerate(rps.entries):
        sd = rps.sides[s]
        if sd == side or (side < 0 and sd == 0):
            ent = fam.get(idx) if sd != 0 else fam.get(0)
            if ent is not None:
                out.append((s, ent))
    return tuple(out)


def build_refined_spanner(
    poly: SimplePolygon,
    sites: list[Point],
    k: int = 1,
    eps: float = 0.5,
) -> SpannerGraph:
    """Relaxed geodesic (2k+eps)-spanner on sites in a simple polygon.

    Recursion on balanced chords as in the plain construction; at each
    chord, one grouped 1-d spanner per (left index, right index) family
    pair, with edges realized as leg-chord-leg paths over the pair tree.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 < eps < 2 * k:
        raise InvalidEpsilonError(f"eps must lie in (0, {2 * k}), got {eps}")
    graph = SpannerGraph(
        tuple(sites), meta={"variant": "refined", "k": k, "eps": eps}
    )

    def pair_edges(
        pts: list[Point],
        ids: list[int],
        chord: Chord,
        lf: tuple[tuple[int, ChordAnglePoint], ...],
        rf: tuple[tuple[int, ChordAnglePoint], ...],
    ) -> None:
        members = list(lf) + list(rf)
        spt = ChordSPT(chord.bottom)
        wsites = []
        projs = []
        for local, (s, ent) in enumerate(members):
            side = -1 if local < len(lf) else 1
            spt.add_site(local, list(ent.leg), side, ent.parameter)
            wsites.append(WeightedSite1D(ent.parameter, ent.weight, local))
            projs.append(
                ChordProjection(local, ent.point, ent.weight, ent.parameter, side)
            )
        spt.finish()
        order = group_order(spt)
        sp1, _ = build_grouped_spanner(wsites, order, k)
        for a, b in sp1.edges:
            sa, sb = members[a][0], members[b][0]
            if sa == sb:
                continue
            gp, via = pi_lambda_path(pts[sa], pts[sb], projs[a], projs[b], spt)
            graph.add(ids[sa], ids[sb], gp, via)

    def rec(node_poly: SimplePolygon, ids: list[int], pts: list[Point]) -> None:
        n = len(ids)
        if n <= 1:
            return
        if n == 2:
            eng = GeodesicEngine(decompose(node_poly, "vertical"))
            gp = GeodesicPath.from_points(eng.path(pts[0], pts[1]))
            graph.add(ids[0], ids[1], gp)
            return
        vd = decompose(node_poly, "vertical")
        split = balanced_vertical_chord(node_poly, vd, pts)
        rps = angle_points(node_poly, split.chord, pts, k, eps, list(split.sides))

        left_fams: dict[tuple, tuple] = {}
        right_fams: dict[tuple, tuple] = {}
        for i in range(-rps.index_bound, rps.index_bound + 1):
            lf = _family(rps, -1, i)
            if lf:
                left_fams.setdefault(tuple((s, id(e)) for s, e in lf), lf)
            rf = _family(rps, 1, i)
            if rf:
                right_fams.setdefault(tuple((s, id(e)) for s, e in rf), rf)
        for lf in left_fams.values():
            for rf in right_fams.values():
                pair_edges(pts, ids, split.chord, lf, rf)

        left_poly, right_poly, _, _ = cut_polygon(node_poly, split.chord)
        for side_ids, side_poly in ((split.left, left_poly), (split.right, right_poly)):
            rec(side_poly, [ids[i] for i in side_ids], [pts[i] for i in side_ids])

    rec(poly, list(range(len(sites))), list(sites))
    return graph


__all__ = [
    "ChordAnglePoint",
    "RefinedProjectionSet",
    "angle_points",
    "build_refined_spanner",
    "naive_refinement_points",
]
