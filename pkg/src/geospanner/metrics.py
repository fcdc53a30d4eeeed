"""Spanner quality measurement against an exact geodesic oracle."""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra

from .polygon import PolygonalDomain, SimplePolygon
from .primitives import Point
from .spanner_graph import SpannerGraph
from .visibility import engine_for

RATIO_TOL = 1e-12


@dataclass(frozen=True)
class SpannerReport:
    """Measured quality of one spanner against the oracle distances."""

    n: int
    m: int
    k: int
    eps: float | None
    variant: str
    edge_count: int
    complexity: int
    max_ratio: float
    mean_ratio: float
    witness: tuple[int, int] | None
    level_edges: tuple[int, ...] | None
    build_seconds: float | None
    connected: bool


def all_pairs_geodesic(
    domain: PolygonalDomain | SimplePolygon, sites: list[Point]
) -> np.ndarray:
    """Exact pairwise geodesic distances between sites, via the visibility
    graph. Symmetrized to kill float wobble between source runs."""
    pts = [(float(p[0]), float(p[1])) for p in sites]
    n = len(pts)
    if n == 0:
        return np.zeros((0, 0))
    eng = engine_for(domain)
    _, mat, idx = eng.graph_with(pts)
    full = dijkstra(mat, directed=False, indices=idx)
    d = full[:, idx]
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def measure(
    graph: SpannerGraph,
    oracle: np.ndarray,
    m: int = 0,
    build_seconds: float | None = None,
) -> SpannerReport:
    """Compare graph shortest paths (stored edge lengths) to the oracle.

    A disconnected graph reports infinite max ratio with the flag cleared
    rather than raising; pairs at oracle distance zero are skipped.
    """
    n = graph.n
    variant = str(graph.meta.get("variant", "?"))
    k = int(graph.meta.get("k", 1))
    eps = graph.meta.get("eps")
    dg = (
        dijkstra(graph.adjacency(), directed=False)
        if n
        else np.zeros((0, 0))
    )
    max_ratio = 1.0
    mean_num = 0.0
    pairs = 0
    witness: tuple[int, int] | None = None
    connected = True
    for i in range(n):
        for j in range(i + 1, n):
            if not math.isfinite(dg[i, j]):
                connected = False
                witness = (i, j)
                continue
            base = oracle[i, j]
            if base <= 0.0:
                continue
            ratio = max(1.0, float(dg[i, j]) / float(base))
            mean_num += ratio
            pairs += 1
            if ratio > max_ratio:
                max_ratio = ratio
                witness = (i, j)
    if not connected:
        max_ratio = math.inf
    level_edges = None
    trace = graph.meta.get("trace")
    if trace:
        by_depth: dict[int, int] = {}
        for rec in trace:
            if isinstance(rec, dict) and "depth" in rec and "edges_local" in rec:
                by_depth[rec["depth"]] = by_depth.get(rec["depth"], 0) + len(
                    rec["edges_local"]
                )
        for depth, count in graph.meta.get("edge_tally", []):
            by_depth[depth] = by_depth.get(depth, 0) + count
        if by_depth:
            top = max(by_depth)
            level_edges = tuple(by_depth.get(d, 0) for d in range(top + 1))
    return SpannerReport(
        n=n,
        m=m,
        k=k,
        eps=eps,
        variant=variant,
        edge_count=graph.edge_count,
        complexity=graph.total_complexity,
        max_ratio=max_ratio,
        mean_ratio=(mean_num / pairs) if pairs else 1.0,
        witness=witness,
        level_edges=level_edges,
        build_seconds=build_seconds,
        connected=connected,
    )


def hop_count(graph: SpannerGraph, i: int, j: int) -> int:
    """Unweighted hop distance between two sites (-1 if unreachable)."""
    if i == j:
        return 0
    adj: dict[int, list[int]] = {}
    for a, b in graph.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {i}
    queue = deque([(i, 0)])
    while queue:
        node, hops = queue.popleft()
        for nxt in adj.get(node, ()):
            if nxt == j:
                return hops + 1
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, hops + 1))
    return -1


@dataclass(frozen=True)
class ScalingRow:
    n: int
    m: int
    k: int
    edge_count: int
    complexity: int
    seconds: float


@dataclass(frozen=True)
class ScalingResult:
    """Complexity growth of the grouped construction over a size grid.

    `slopes` fits log(complexity / m) against log(n), which isolates the
    per-vertex growth rate when m is scaled together with n; `raw_slopes`
    fits unnormalized complexity.
    """

    rows: tuple[ScalingRow, ...]
    slopes: dict[int, float]
    raw_slopes: dict[int, float]


def scaling_experiment(
    k_values: list[int],
    sizes: list[int],
    m_factor: int = 8,
    spanner=None,
    generator=None,
) -> ScalingResult:
    from .generators import gen_lower_bound_general
    from .simple_spanner import build_simple_spanner

    gen = generator or gen_lower_bound_general
    build = spanner or (
        lambda poly, sites, k: build_simple_spanner(
            poly, list(sites), variant="grouped", k=k
        )
    )
    rows: list[ScalingRow] = []
    slopes: dict[int, float] = {}
    raw_slopes: dict[int, float] = {}
    for k in k_values:
        logs_n, logs_c, logs_raw = [], [], []
        for n in sizes:
            m = m_factor * n
            inst = gen(n, m)
            t0 = time.perf_counter()
            graph = build(inst.polygon, inst.sites, k)
            dt = time.perf_counter() - t0
            rows.append(
                ScalingRow(
                    n=n,
                    m=m,
                    k=k,
                    edge_count=graph.edge_count,
                    complexity=graph.total_complexity,
                    seconds=dt,
                )
            )
            logs_n.append(math.log(n))
            logs_c.append(math.log(graph.total_complexity / m))
            logs_raw.append(math.log(graph.total_complexity))
        if len(sizes) >= 2:
            slopes[k] = float(np.polyfit(logs_n, logs_c, 1)[0])
            raw_slopes[k] = float(np.polyfit(logs_n, logs_raw, 1)[0])
    return ScalingResult(tuple(rows), slopes, raw_slopes)


__all__ = [
    "ScalingResult",
    "ScalingRow",
    "SpannerReport",
    "all_pairs_geodesic",
    "hop_count",
    "measure",
    "scaling_experiment",
]
