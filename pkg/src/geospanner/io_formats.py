"""Line-oriented text formats for instances and spanners.

Both formats carry an explicit version header and serialize coordinates
with `repr`, the shortest decimal that round-trips a float exactly, so a
canonical file survives read/write cycles byte for byte.  Edge lengths are
stored for cross-checking but always recomputed on load.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParseError
from .geodesic import GeodesicPath
from .polygon import PolygonalDomain, SimplePolygon
from .primitives import Point, polyline_length
from .spanner_graph import SpannerGraph
from .visibility import as_domain, domain_geodesic

INSTANCE_MAGIC = "geospanner-instance v1"
SPANNER_MAGIC = "geospanner-spanner v1"


@dataclass(frozen=True)
class PolygonInstance:
    """A polygon or polygonal domain together with its point sites."""

    domain: PolygonalDomain
    sites: tuple[Point, ...]
    meta: tuple[tuple[str, str], ...] = ()

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def m(self) -> int:
        return len(self.domain.outer.vertices) + sum(
            len(h.vertices) for h in self.domain.holes
        )

    @property
    def is_simple(self) -> bool:
        return not self.domain.holes

    def meta_dict(self) -> dict[str, str]:
        return dict(self.meta)


@dataclass(frozen=True)
class EdgeRecord:
    """One serialized spanner edge; `points` holds vias or a full path."""

    i: int
    j: int
    length: float
    explicit: bool
    points: tuple[Point, ...]


@dataclass(frozen=True)
class SpannerFileData:
    header: dict[str, str]
    records: tuple[EdgeRecord, ...]

    @property
    def mode(self) -> str:
        return self.header.get("mode", "implicit")


def _fmt(x: float) -> str:
    return repr(float(x))


def _coords(pts) -> str:
    return " ".join(f"{_fmt(p[0])} {_fmt(p[1])}" for p in pts)


def write_instance(inst: PolygonInstance) -> str:
    lines = [INSTANCE_MAGIC]
    lines.append(f"outer {len(inst.domain.outer.vertices)}")
    for p in inst.domain.outer.vertices:
        lines.append(f"{_fmt(p[0])} {_fmt(p[1])}")
    for hole in inst.domain.holes:
        lines.append(f"hole {len(hole.vertices)}")
        for p in hole.vertices:
            lines.append(f"{_fmt(p[0])} {_fmt(p[1])}")
    lines.append(f"sites {len(inst.sites)}")
    for p in inst.sites:
        lines.append(f"{_fmt(p[0])} {_fmt(p[1])}")
    for key, value in inst.meta:
        lines.append(f"meta {key} {value}")
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str):
        self.lines = [ln.rstrip("\n") for ln in text.splitlines()]
        self.pos = 0

    def next(self) -> str:
        while self.pos < len(self.lines):
            ln = self.lines[self.pos]
            self.pos += 1
            if ln.strip():
                return ln.strip()
        raise ParseError("unexpected end of file")

    def peek(self) -> str | None:
        pos = self.pos
        while pos < len(self.lines):
            ln = self.lines[pos].strip()
            if ln:
                return ln
            pos += 1
        return None


def _read_point(ln: str) -> Point:
    parts = ln.split()
    if len(parts) != 2:
        raise ParseError(f"expected 'x y', got {ln!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ParseError(f"bad coordinate in {ln!r}") from exc


def _read_ring(reader: _Lines, count_str: str) -> SimplePolygon:
    try:
        count = int(count_str)
    except ValueError as exc:
        raise ParseError(f"bad vertex count {count_str!r}") from exc
    if count < 3:
        raise ParseError("a ring needs at least 3 vertices")
    return SimplePolygon(tuple(_read_point(reader.next()) for _ in range(count)))


def read_instance(text: str) -> PolygonInstance:
    reader = _Lines(text)
    if reader.next() != INSTANCE_MAGIC:
        raise ParseError(f"missing {INSTANCE_MAGIC!r} header")
    ln = reader.next()
    if not ln.startswith("outer "):
        raise ParseError("expected 'outer <count>'")
    outer = _read_ring(reader, ln.split()[1])
    holes: list[SimplePolygon] = []
    sites: list[Point] = []
    meta: list[tuple[str, str]] = []
    while True:
        nxt = reader.peek()
        if nxt is None:
            raise ParseError("missing 'sites' section")
        if nxt.startswith("hole "):
            holes.append(_read_ring(reader, reader.next().split()[1]))
            continue
        if nxt.startswith("sites "):
            ln = reader.next()
            try:
                count = int(ln.split()[1])
            except (IndexError, ValueError) as exc:
                raise ParseError("bad site count") from exc
            sites = [_read_point(reader.next()) for _ in range(count)]
            break
        raise ParseError(f"unexpected line {nxt!r}")
    while reader.peek() is not None:
        ln = reader.next()
        parts = ln.split(maxsplit=2)
        if parts[0] != "meta" or len(parts) < 3:
            raise ParseError(f"unexpected trailing line {ln!r}")
        meta.append((parts[1], parts[2]))
    domain = PolygonalDomain(outer, tuple(holes))
    return PolygonInstance(domain, tuple(sites), tuple(meta))


def write_spanner(
    graph: SpannerGraph,
    mode: str = "implicit",
    m: int = 0,
    ratio: float | None = None,
) -> str:
    if mode not in ("implicit", "explicit"):
        raise ParseError(f"unknown mode {mode!r}")
    k = graph.meta.get("k", 1)
    eps = graph.meta.get("eps")
    variant = graph.meta.get("variant", "?")
    header = (
        f"header n={graph.n} m={m} k={k} "
        f"eps={_fmt(eps) if eps is not None else '-'} variant={variant} "
        f"ratio={_fmt(ratio) if ratio is not None else '-'} "
        f"edges={graph.edge_count} complexity={graph.total_complexity} mode={mode}"
    )
    lines = [SPANNER_MAGIC, header]
    for (i, j) in sorted(graph.edges):
        path = graph.edges[(i, j)]
        if mode == "explicit":
            pts = path.vertices
            lines.append(
                f"edge {i} {j} {_fmt(path.length)} path {len(pts)} {_coords(pts)}"
            )
        else:
            vias = graph.vias.get((i, j), ())
            body = f" {_coords(vias)}" if vias else ""
            lines.append(
                f"edge {i} {j} {_fmt(path.length)} via {len(vias)}{body}"
            )
    return "\n".join(lines) + "\n"


_HEADER_KEYS = ("n", "m", "k", "eps", "variant", "ratio", "edges", "complexity", "mode")


def write_spanner_data(data: SpannerFileData) -> str:
    """Serialize parsed spanner data back out in canonical form.

    Stored lengths are written verbatim, so this is the exact inverse of
    `read_spanner` on canonical files.
    """
    ordered = [k for k in _HEADER_KEYS if k in data.header]
    ordered += sorted(k for k in data.header if k not in _HEADER_KEYS)
    header = "header " + " ".join(f"{k}={data.header[k]}" for k in ordered)
    lines = [SPANNER_MAGIC, header]
    for rec in data.records:
        kind = "path" if rec.explicit else "via"
        body = f" {_coords(rec.points)}" if rec.points else ""
        lines.append(
            f"edge {rec.i} {rec.j} {_fmt(rec.length)} {kind} {len(rec.points)}{body}"
        )
    return "\n".join(lines) + "\n"


def read_spanner(text: str) -> SpannerFileData:
    reader = _Lines(text)
    if reader.next() != SPANNER_MAGIC:
        raise ParseError(f"missing {SPANNER_MAGIC!r} header")
    ln = reader.next()
    if not ln.startswith("header "):
        raise ParseError("expected header line")
    header: dict[str, str] = {}
    for token in ln.split()[1:]:
        if "=" not in token:
            raise ParseError(f"bad header token {token!r}")
        key, value = token.split("=", 1)
        header[key] = value
    if header.get("mode") not in ("implicit", "explicit"):
        raise ParseError("header mode must be implicit or explicit")
    records: list[EdgeRecord] = []
    while reader.peek() is not None:
        parts = reader.next().split()
        if len(parts) < 5 or parts[0] != "edge" or parts[4] not in ("via", "path"):
            raise ParseError(f"bad edge record {' '.join(parts[:5])!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
            length = float(parts[3])
            count = int(parts[5])
            flat = [float(tok) for tok in parts[6:]]
        except (ValueError, IndexError) as exc:
            raise ParseError("malformed edge record") from exc
        if len(flat) != 2 * count:
            raise ParseError(
                f"edge {i}-{j}: expected {count} points, got {len(flat) // 2}"
            )
        pts = tuple((flat[2 * t], flat[2 * t + 1]) for t in range(count))
        explicit = parts[4] == "path"
        if explicit and count < 2:
            raise ParseError(f"edge {i}-{j}: explicit path needs 2+ points")
        if not explicit and count > 2:
            raise ParseError(f"edge {i}-{j}: at most 2 via points allowed")
        records.append(EdgeRecord(i, j, length, explicit, pts))
    try:
        declared = int(header.get("edges", "-1"))
    except ValueError as exc:
        raise ParseError("bad edge count in header") from exc
    if declared != len(records):
        raise ParseError(
            f"header declares {declared} edges, file has {len(records)}"
        )
    return SpannerFileData(header, tuple(records))


def _closest_on_segment(a: Point, b: Point, p: Point) -> tuple[Point, float]:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    den = dx * dx + dy * dy
    t = 0.0 if den == 0.0 else max(0.0, min(1.0, ((p[0] - ax) * dx + (p[1] - ay) * dy) / den))
    foot = (ax + t * dx, ay + t * dy)
    return foot, math.hypot(p[0] - foot[0], p[1] - foot[1])


def _snap_into(domain: PolygonalDomain, p: Point, scale: float) -> Point:
    """Move a point sitting within 1e-9*scale of the boundary strictly inside.

    Serialized anchor points can land a few ulps outside the free space
    (chord endpoints come from line interpolation).  Points farther out than
    the tolerance are returned unchanged so corruption stays detectable.
    """
    if domain.contains(p):
        return p
    best: tuple[Point, float, Point, Point] | None = None
    for a, b in domain.boundary_edges():
        foot, d = _closest_on_segment(a, b, p)
        if best is None or d < best[1]:
            best = (foot, d, a, b)
    if best is None or best[1] > 1e-9 * scale:
        return p
    foot, _, a, b = best
    ex, ey = b[0] - a[0], b[1] - a[1]
    norm = math.hypot(ex, ey)
    if norm == 0.0:
        return p
    nx, ny = -ey / norm, ex / norm
    for delta_rel in (1e-12, 1e-11, 1e-10):
        delta = delta_rel * scale
        for sgn in (1.0, -1.0):
            cand = (foot[0] + sgn * nx * delta, foot[1] + sgn * ny * delta)
            if domain.contains(cand, strict=True):
                return cand
    return p


def expand_record(
    domain: PolygonalDomain | SimplePolygon, p: Point, q: Point, rec: EdgeRecord
) -> GeodesicPath:
    """Explicit polyline for a record: stored path, or taut legs via anchors."""
    if rec.explicit:
        pts = rec.points
        return GeodesicPath(pts, polyline_length(list(pts)))
    dom = as_domain(domain)
    xlo, ylo, xhi, yhi = dom.outer.bounding_box()
    scale = max(xhi - xlo, yhi - ylo, 1.0)
    waypoints = [p, *(_snap_into(dom, v, scale) for v in rec.points), q]
    merged: list[Point] = [waypoints[0]]
    total = 0.0
    for a, b in zip(waypoints, waypoints[1:]):
        if a == b:
            continue
        leg = domain_geodesic(dom, a, b)
        merged.extend(leg.vertices[1:])
        total += leg.length
    return GeodesicPath(tuple(merged), total)


def spanner_from_file(
    data: SpannerFileData, inst: PolygonInstance
) -> tuple[SpannerGraph, list[float]]:
    """Rebuild a SpannerGraph from records; lengths are recomputed.

    Returns the graph plus the stored per-record lengths (same order as
    sorted record keys) for byte-level consistency checks.
    """
    n_declared = int(data.header.get("n", "-1"))
    if n_declared != len(inst.sites):
        raise ParseError(
            f"spanner header n={n_declared} but instance has {len(inst.sites)} sites"
        )
    graph = SpannerGraph(
        tuple(inst.sites),
        meta={
            "variant": data.header.get("variant", "?"),
            "k": int(data.header.get("k", "1")),
        },
    )
    if data.header.get("eps", "-") != "-":
        graph.meta["eps"] = float(data.header["eps"])
    stored: list[float] = []
    for rec in data.records:
        if not (0 <= rec.i < len(inst.sites) and 0 <= rec.j < len(inst.sites)):
            raise ParseError(f"edge {rec.i}-{rec.j} references unknown sites")
        path = expand_record(inst.domain, inst.sites[rec.i], inst.sites[rec.j], rec)
        graph.add(rec.i, rec.j, path, rec.points if not rec.explicit else ())
        stored.append(rec.length)
    return graph, stored


__all__ = [
    "EdgeRecord",
    "PolygonInstance",
    "SpannerFileData",
    "expand_record",
    "read_instance",
    "read_spanner",
    "spanner_from_file",
    "write_instance",
    "write_spanner",
    "write_spanner_data",
]
