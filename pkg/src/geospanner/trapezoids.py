"""Trapezoidal decomposition of a simple polygon by a plane sweep.

The sweep works in "sweep coordinates" (u, v): u is the sweep axis, v the
cross axis. A vertical decomposition uses (u, v) = (x, y); a horizontal one
swaps the axes. All events that share one u value are processed as a single
batch, which is the limit behavior of the usual symbolic shear: cells always
have positive width, and edges that are parallel to the cross axis never need
a v-at-u evaluation because they live entirely inside one batch.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field

from .errors import InvalidPolygonError, OutsidePolygonError
from .polygon import SimplePolygon
from .primitives import Point


@dataclass
class Trapezoid:
    """One cell: bounded below/above (in v) by polygon edges, left/right by
    walls at event abscissas."""

    index: int
    lo_edge: int
    hi_edge: int
    left_u: float
    right_u: float = float("nan")
    left_neighbors: list[int] = field(default_factory=list)
    right_neighbors: list[int] = field(default_factory=list)

    @property
    def neighbors(self) -> list[int]:
        return self.left_neighbors + self.right_neighbors


class TrapezoidalDecomposition:
    """Decomposition of a simple polygon into O(m) trapezoids.

    Args:
        poly: the polygon to decompose.
        axis: "vertical" for cells with vertical walls (sweep by x), or
            "horizontal" for cells with horizontal walls (sweep by y).
    """

    def __init__(self, poly: SimplePolygon, axis: str = "vertical") -> None:
        if axis not in ("vertical", "horizontal"):
            raise ValueError(f"unknown axis {axis!r}")
        self.poly = poly
        self.axis = axis
        verts = poly.vertices
        n = len(verts)
        self._sv = [self.to_sweep(p) for p in verts]
        # edge e runs from vertex e to vertex e+1; endpoints sorted by (u, v)
        self._ea: list[tuple[float, float]] = []
        self._eb: list[tuple[float, float]] = []
        for e in range(n):
            a, b = self._sv[e], self._sv[(e + 1) % n]
            if b < a:
                a, b = b, a
            self._ea.append(a)
            self._eb.append(b)
        self.cells: list[Trapezoid] = []
        self._sweep()
        self._cells_by_left = sorted(
            range(len(self.cells)), key=lambda c: self.cells[c].left_u
        )
        self._max_u = max(c.right_u for c in self.cells)

    # -- coordinate helpers -------------------------------------------------

    def to_sweep(self, p: Point) -> tuple[float, float]:
        return (p[0], p[1]) if self.axis == "vertical" else (p[1], p[0])

    def from_sweep(self, q: tuple[float, float]) -> Point:
        return (q[0], q[1]) if self.axis == "vertical" else (q[1], q[0])

    def edge_value_at(self, e: int, u: float) -> float:
        """Cross-axis value of polygon edge e at sweep abscissa u, exact at
        the edge endpoints."""
        return self._v_at(e, u)

    def _v_at(self, e: int, u: float) -> float:
        a, b = self._ea[e], self._eb[e]
        if u == a[0]:
            return a[1]
        if u == b[0]:
            return b[1]
        t = (u - a[0]) / (b[0] - a[0])
        return a[1] + t * (b[1] - a[1])

    def _slope(self, e: int) -> float:
        a, b = self._ea[e], self._eb[e]
        return (b[1] - a[1]) / (b[0] - a[0])

    # -- sweep --------------------------------------------------------------

    def _sweep(self) -> None:
        starts: dict[float, list[int]] = {}
        ends: dict[float, list[int]] = {}
        for e in range(len(self._ea)):
            a, b = self._ea[e], self._eb[e]
            if a[0] == b[0]:
                continue  # parallel to the cross axis: silent inside its batch
            starts.setdefault(a[0], []).append(e)
            ends.setdefault(b[0], []).append(e)
        batches = sorted(set(starts) | set(ends))
        active: list[int] = []
        open_cells: dict[tuple[int, int], int] = {}
        for u in batches:
            before = list(active)
            for e in ends.get(u, ()):
                self._remove_active(active, e, u)
            ins = sorted(
                starts.get(u, ()), key=lambda e: (self._v_at(e, u), self._slope(e))
            )
            for e in ins:
                self._insert_active(active, e, u)
            if len(active) % 2:
                raise InvalidPolygonError("sweep parity broken: polygon not simple?")
            bp = self._pairs(before)
            ap = self._pairs(active)
            apset = set(ap)
            bpset = set(bp)
            closed = [pr for pr in bp if pr not in apset]
            opened = [pr for pr in ap if pr not in bpset]
            closed_ids = []
            for pr in closed:
                ci = open_cells.pop(pr)
                self.cells[ci].right_u = u
                closed_ids.append(ci)
            opened_ids = []
            for pr in opened:
                ci = len(self.cells)
                self.cells.append(Trapezoid(ci, pr[0], pr[1], left_u=u))
                open_cells[pr] = ci
                opened_ids.append(ci)
            for ci in closed_ids:
                lo_c, hi_c = self._interval_at(ci, u)
                for oi in opened_ids:
                    lo_o, hi_o = self._interval_at(oi, u)
                    if min(hi_c, hi_o) > max(lo_c, lo_o):
                        self.cells[ci].right_neighbors.append(oi)
                        self.cells[oi].left_neighbors.append(ci)
        if open_cells:
            raise InvalidPolygonError("sweep left unclosed cells")

    def _remove_active(self, active: list[int], e: int, u: float) -> None:
        v = self._v_at(e, u)
        i = bisect_left(active, v, key=lambda ee: self._v_at(ee, u))
        while i < len(active):
            if active[i] == e:
                del active[i]
                return
            if self._v_at(active[i], u) > v:
                break
            i += 1
        # ties in v may sit just below the bisect point
        for j, ee in enumerate(active):
            if ee == e:
                del active[j]
                return
        raise InvalidPolygonError("sweep lost an active edge")

    def _insert_active(self, active: list[int], e: int, u: float) -> None:
        key = (self._v_at(e, u), self._slope(e))
        i = bisect_left(active, key, key=lambda ee: (self._v_at(ee, u), self._slope(ee)))
        active.insert(i, e)

    @staticmethod
    def _pairs(active: list[int]) -> list[tuple[int, int]]:
        return [(active[i], active[i + 1]) for i in range(0, len(active), 2)]

    # -- geometry accessors ---------------------------------------------------

    def _interval_at(self, cell: int, u: float) -> tuple[float, float]:
        c = self.cells[cell]
        return self._v_at(c.lo_edge, u), self._v_at(c.hi_edge, u)

    def cell_corners(self, cell: int) -> list[Point]:
        """Corners in original coordinates, counter-clockwise, degenerate
        corners merged."""
        c = self.cells[cell]
        lo_l, hi_l = self._interval_at(cell, c.left_u)
        lo_r, hi_r = self._interval_at(cell, c.right_u)
        pts = [
            (c.left_u, lo_l),
            (c.right_u, lo_r),
            (c.right_u, hi_r),
            (c.left_u, hi_l),
        ]
        out = []
        for q in pts:
            if not out or q != out[-1]:
                out.append(q)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        res = [self.from_sweep(q) for q in out]
        if self.axis == "horizontal":
            res.reverse()  # axis swap mirrors orientation
        return res

    def cell_area(self, cell: int) -> float:
        c = self.cells[cell]
        lo_l, hi_l = self._interval_at(cell, c.left_u)
        lo_r, hi_r = self._interval_at(cell, c.right_u)
        return 0.5 * ((hi_l - lo_l) + (hi_r - lo_r)) * (c.right_u - c.left_u)

    def shared_wall(self, c1: int, c2: int) -> tuple[float, float, float]:
        """The wall interval between two adjacent cells.

        Returns (u, v_lo, v_hi) in sweep coordinates.
        """
        a, b = self.cells[c1], self.cells[c2]
        if a.right_u == b.left_u and c2 in a.right_neighbors:
            u = a.right_u
        elif b.right_u == a.left_u and c1 in b.right_neighbors:
            u = b.right_u
        else:
            raise ValueError("cells are not adjacent")
        lo1, hi1 = self._interval_at(c1, u)
        lo2, hi2 = self._interval_at(c2, u)
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if hi <= lo:
            raise ValueError("cells share no positive wall interval")
        return u, lo, hi

    # -- point location -------------------------------------------------------

    def locate(self, p: Point) -> int:
        """Cell containing p. Points on an internal wall belong to the cell on
        the wall's right (in sweep direction); boundary points are inclusive.

        Raises:
            OutsidePolygonError: p is in no cell.
        """
        u, v = self.to_sweep(p)
        hit = self._locate_halfopen(u, v)
        if hit is not None:
            return hit
        # p may sit on the far wall of a cell (polygon boundary or a wall
        # whose right side is exterior): fall back to a closed test.
        for c in self.cells:
            if c.left_u <= u <= c.right_u:
                lo, hi = self._interval_at(c.index, u)
                if lo <= v <= hi:
                    return c.index
        raise OutsidePolygonError(f"point {p} is outside the polygon")

    def _locate_halfopen(self, u: float, v: float) -> int | None:
        for ci in self._cells_by_left:
            c = self.cells[ci]
            if c.left_u > u:
                break
            if u < c.right_u or (c.right_u == self._max_u and u == c.right_u):
                lo, hi = self._interval_at(ci, u)
                if lo <= v <= hi:
                    return ci
        return None


def decompose(poly: SimplePolygon, axis: str = "vertical") -> TrapezoidalDecomposition:
    """Build the trapezoidal decomposition of poly along the given axis."""
    return TrapezoidalDecomposition(poly, axis)
