"""Instance generators: adversarial spike constructions and random families.

The two spike builders produce polygons where far-apart sites can only be
joined through a narrow toothed passage, so every crossing geodesic is long
(close to twice the spike length) and must bend at a known number of teeth.
Tooth tips alternate between the walls with overlapping reach; a straight
segment between contact points on the opposite extreme always violates the
tooth in between, so a taut path touches every tip.  That makes the recorded
passage complexity a certified lower bound rather than an estimate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import InvalidParamsError, InvalidPolygonError
from .polygon import PolygonalDomain, SimplePolygon
from .primitives import Point


@dataclass(frozen=True)
class LowerBoundInstance:
    """A spike polygon, its sites, and the bend count its passage forces."""

    polygon: SimplePolygon
    sites: tuple[Point, ...]
    spike_length: float
    aperture: float
    passage_complexity: int
    family: str
    params: tuple[tuple[str, float], ...] = ()

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @property
    def m_vertices(self) -> int:
        return len(self.polygon.vertices)


def _tooth_tip_height(index: int, g: float, bottom: bool) -> float:
    # jitter keeps three consecutive tips off a common line, so each tip
    # is a strict bend of the taut path, not a grazed point
    jitter = 0.02 * (index % 3)
    return (0.80 - jitter) * g if bottom else (0.20 + jitter) * g


def _corridor_teeth(
    count: int, x_lo: float, x_hi: float, g: float, start_parity: int = 0
) -> tuple[list[tuple[Point, Point, Point]], list[tuple[Point, Point, Point]]]:
    """Interlocked tooth triangles; returns (bottom teeth, top teeth).

    Teeth alternate wall by index so consecutive constraints sit on opposite
    sides of the corridor's middle band.
    """
    bottom: list[tuple[Point, Point, Point]] = []
    top: list[tuple[Point, Point, Point]] = []
    if count <= 0:
        return bottom, top
    pitch = (x_hi - x_lo) / count
    half = 0.25 * pitch
    for t in range(count):
        cx = x_lo + (t + 0.5) * pitch
        tip_y = _tooth_tip_height(t, g, bottom=(t + start_parity) % 2 == 0)
        if (t + start_parity) % 2 == 0:
            bottom.append(((cx - half, 0.0), (cx, tip_y), (cx + half, 0.0)))
        else:
            top.append(((cx - half, g), (cx, tip_y), (cx + half, g)))
    return bottom, top


def _fan_features(
    mouth: Point,
    angles: list[float],
    beta: float,
    base_radius: float,
    tip_radius: float,
    site_radius: float,
) -> tuple[list[Point], list[Point]]:
    """Wedge spikes around a mouth point: boundary vertices and the sites."""
    boundary: list[Point] = []
    sites: list[Point] = []
    mx, my = mouth
    for theta in angles:
        for ang, r in (
            (theta - beta, base_radius),
            (theta, tip_radius),
            (theta + beta, base_radius),
        ):
            boundary.append((mx + r * math.cos(ang), my + r * math.sin(ang)))
        sites.append(
            (mx + site_radius * math.cos(theta), my + site_radius * math.sin(theta))
        )
    return boundary, sites


def gen_lower_bound_3eps(
    n: int,
    m: int,
    spike_length: float = 1.0,
    aperture: float | None = None,
) -> LowerBoundInstance:
    """Two fans of n/2 spikes joined only by a toothed corridor.

    Every left-right geodesic runs down one spike, threads all corridor
    teeth, and runs up the other spike, so its length lies barely above
    twice the spike length and its bend count is at least the tooth count.
    """
    if n < 2 or n % 2 != 0:
        raise InvalidParamsError("n must be an even number of sites, at least 2")
    if m < 3 * n + 10:
        raise InvalidParamsError(f"m must be at least 3n+10 = {3 * n + 10}")
    ell = float(spike_length)
    if ell <= 0:
        raise InvalidParamsError("spike length must be positive")
    g = ell * 1e-6 if aperture is None else float(aperture)
    if not 0 < g < ell / 100:
        raise InvalidParamsError("aperture must be positive and small vs spikes")

    half = n // 2
    c = 10.0 * g
    rho = 5.0 * g
    teeth = (m - 3 * n - 4) // 3
    filler = (m - 3 * n - 4) % 3

    spread = 2.4
    slot = spread / half
    beta = 0.3 * slot
    site_radius = ell * (1.0 + 2e-5)
    # push the tip out until the wedge is ~1e-9*ell wide at the site
    back = 1.1e-9 * ell * ell / (rho * beta)
    tip_radius = site_radius + max(back, 1e-3 * ell)

    left_mouth = (-c, g / 2)
    right_mouth = (c, g / 2)
    left_angles = [math.pi - spread / 2 + slot * (j + 0.5) for j in range(half)]
    right_angles = [-spread / 2 + slot * (j + 0.5) for j in range(half)]
    left_bd, left_sites = _fan_features(
        left_mouth, left_angles, beta, rho, tip_radius, site_radius
    )
    right_bd, right_sites = _fan_features(
        right_mouth, right_angles, beta, rho, tip_radius, site_radius
    )
    bottom_teeth, top_teeth = _corridor_teeth(teeth, -0.7 * c, 0.7 * c, g)

    fill_pts: list[Point] = []
    last_angle = left_angles[-1] + beta if left_angles else math.pi
    for j in range(filler):
        ang = last_angle + (3 * math.pi / 2 - last_angle) * (j + 1) / (filler + 1)
        fill_pts.append(
            (left_mouth[0] + rho * math.cos(ang), left_mouth[1] + rho * math.sin(ang))
        )

    verts: list[Point] = [(-c, 0.0)]
    for tri in bottom_teeth:
        verts.extend(tri)
    verts.append((c, 0.0))
    verts.extend(right_bd)
    verts.append((c, g))
    for tri in reversed(top_teeth):
        verts.extend(reversed(tri))
    verts.append((-c, g))
    verts.extend(left_bd)
    verts.extend(fill_pts)

    poly = SimplePolygon(tuple(verts))
    if len(poly.vertices) != m:
        raise InvalidPolygonError(
            f"vertex budget mismatch: built {len(poly.vertices)}, wanted {m}"
        )
    return LowerBoundInstance(
        polygon=poly,
        sites=tuple(left_sites + right_sites),
        spike_length=ell,
        aperture=g,
        passage_complexity=teeth,
        family="lb3eps",
        params=(("n", float(n)), ("m", float(m))),
    )


def gen_lower_bound_general(
    n: int,
    m: int,
    t: float = 2.0,
    spike_length: float = 1.0,
    aperture: float | None = None,
) -> LowerBoundInstance:
    """A row of n spike pockets under a corridor with teeth in every gap.

    A geodesic between the i-th and j-th site crosses |i-j| gaps and bends
    at every tooth tip in each, so its complexity grows linearly in |i-j|
    with slope `passage_complexity` (the per-gap tooth count).
    """
    if t < 2:
        raise InvalidParamsError("t must be at least 2")
    if n < 2:
        raise InvalidParamsError("need at least two spikes")
    if m < 6 * n + 2:
        # 3 vertices per spike, 4 corners, and at least one 3-vertex tooth
        # per gap; below this budget no gap can force a bend per crossing
        raise InvalidParamsError(f"m must be at least 6n+2 = {6 * n + 2}")
    ell = float(spike_length)
    if ell <= 0:
        raise InvalidParamsError("spike length must be positive")
    g = ell * 1e-6 if aperture is None else float(aperture)
    if not 0 < g < ell / 100:
        raise InvalidParamsError("aperture must be positive and small vs spikes")

    pitch = 10.0 * g
    total_teeth = (m - 3 * n - 4) // 3
    filler = (m - 3 * n - 4) % 3
    gaps = n - 1
    base = total_teeth // gaps
    extra = total_teeth % gaps

    # wedge pockets: keep the pocket ~2e-9*ell wide at site depth
    tip_depth = ell + max(1e-3 * ell, 1e-9 * ell / (0.2 * pitch / ell))
    width = float(n) * pitch

    verts: list[Point] = [(0.0, 0.0)]
    sites: list[Point] = []
    parity = 0
    for i in range(n):
        xl = i * pitch + 0.3 * pitch
        xr = i * pitch + 0.7 * pitch
        cx = i * pitch + 0.5 * pitch
        verts.append((xl, 0.0))
        verts.append((cx, -tip_depth))
        verts.append((xr, 0.0))
        sites.append((cx, -ell))
        if i < gaps:
            count = base + (1 if i < extra else 0)
            bottom, top = _corridor_teeth(
                count, xr, (i + 1) * pitch + 0.3 * pitch, g, start_parity=parity
            )
            parity += count
            merged = sorted(bottom + top, key=lambda tri: tri[1][0])
            for tri in merged:
                if tri[0][1] == 0.0:
                    verts.extend(tri)
            # collect top teeth for the return sweep
    verts.append((width, 0.0))
    verts.append((width, g))
    top_all: list[tuple[Point, Point, Point]] = []
    parity = 0
    for i in range(gaps):
        count = base + (1 if i < extra else 0)
        xr = i * pitch + 0.7 * pitch
        _, top = _corridor_teeth(
            count, xr, (i + 1) * pitch + 0.3 * pitch, g, start_parity=parity
        )
        parity += count
        top_all.extend(top)
    for tri in sorted(top_all, key=lambda tr: -tr[1][0]):
        verts.extend(reversed(tri))
    verts.append((0.0, g))
    for j in range(filler):
        bump = 0.001 * g * (j + 1) ** 2
        verts.append((-bump, g * (1.0 - (j + 1) / (filler + 1))))

    poly = SimplePolygon(tuple(verts))
    if len(poly.vertices) != m:
        raise InvalidPolygonError(
            f"vertex budget mismatch: built {len(poly.vertices)}, wanted {m}"
        )
    return LowerBoundInstance(
        polygon=poly,
        sites=tuple(sites),
        spike_length=ell,
        aperture=g,
        passage_complexity=base,
        family="lbgeneral",
        params=(("n", float(n)), ("m", float(m)), ("t", float(t))),
    )


def random_simple_polygon(
    m: int, seed: int, radius: float = 10.0
) -> SimplePolygon:
    """Star-shaped polygon with jittered angles and strongly varied radii."""
    if m < 3:
        raise InvalidParamsError("need at least three vertices")
    rng = random.Random(seed)
    for _ in range(32):
        verts = []
        for i in range(m):
            ang = 2 * math.pi * (i + rng.uniform(-0.3, 0.3)) / m
            r = radius * math.exp(rng.uniform(math.log(0.35), 0.0))
            if rng.random() < 0.18:
                r = radius * rng.uniform(0.05, 0.2)
            verts.append((r * math.cos(ang), r * math.sin(ang)))
        try:
            return SimplePolygon(tuple(verts))
        except InvalidPolygonError:
            continue
    raise InvalidPolygonError("could not sample a valid polygon")


def random_domain(
    holes: int, m: int, seed: int, radius: float = 10.0
) -> PolygonalDomain:
    """Polygonal domain: star-shaped outer boundary with small star holes."""
    if holes < 0:
        raise InvalidParamsError("hole count must be nonnegative")
    hole_m = max(4, m // (3 * (holes + 1))) if holes else 0
    outer_m = m - holes * hole_m
    if outer_m < 3:
        raise InvalidParamsError("vertex budget too small for that many holes")
    rng = random.Random(seed)
    for _ in range(64):
        outer_verts = []
        for i in range(outer_m):
            ang = 2 * math.pi * (i + rng.uniform(-0.25, 0.25)) / outer_m
            r = radius * rng.uniform(0.75, 1.0)
            outer_verts.append((r * math.cos(ang), r * math.sin(ang)))
        try:
            outer = SimplePolygon(tuple(outer_verts))
        except InvalidPolygonError:
            continue
        hole_list = []
        tries = 0
        while len(hole_list) < holes and tries < 400:
            tries += 1
            cx = rng.uniform(-0.55 * radius, 0.55 * radius)
            cy = rng.uniform(-0.55 * radius, 0.55 * radius)
            hr = radius * rng.uniform(0.05, 0.11)
            hole_verts = []
            for i in range(hole_m):
                ang = 2 * math.pi * (i + rng.uniform(-0.2, 0.2)) / hole_m
                r = hr * rng.uniform(0.6, 1.0)
                hole_verts.append((cx + r * math.cos(ang), cy + r * math.sin(ang)))
            try:
                hole = SimplePolygon(tuple(hole_verts))
                PolygonalDomain(outer, tuple(hole_list) + (hole,))
            except InvalidPolygonError:
                continue
            hole_list.append(hole)
        if len(hole_list) == holes:
            return PolygonalDomain(outer, tuple(hole_list))
    raise InvalidPolygonError("could not sample a valid domain")


def random_sites(
    domain: PolygonalDomain | SimplePolygon, n: int, seed: int
) -> tuple[Point, ...]:
    """n distinct points strictly inside the domain, by rejection."""
    if n < 0:
        raise InvalidParamsError("site count must be nonnegative")
    dom = domain if isinstance(domain, PolygonalDomain) else PolygonalDomain(domain)
    xs = [p[0] for p in dom.outer.vertices]
    ys = [p[1] for p in dom.outer.vertices]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    scale = max(hi_x - lo_x, hi_y - lo_y)
    rng = random.Random(seed)
    out: list[Point] = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 2000 * (n + 1):
            raise InvalidParamsError("rejection sampling failed; domain too thin")
        p = (rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y))
        if not dom.contains(p, strict=True):
            continue
        if any(abs(p[0] - q[0]) + abs(p[1] - q[1]) < 1e-9 * scale for q in out):
            continue
        out.append(p)
    return tuple(out)


__all__ = [
    "LowerBoundInstance",
    "gen_lower_bound_3eps",
    "gen_lower_bound_general",
    "random_domain",
    "random_simple_polygon",
    "random_sites",
]
