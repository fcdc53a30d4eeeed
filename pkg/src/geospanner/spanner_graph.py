"""Geometric spanner graph on point sites, with explicit edge paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.sparse import csr_matrix

from .geodesic import GeodesicPath
from .primitives import Point


@dataclass
class SpannerGraph:
    """Undirected graph whose edges carry polygonal paths between sites.

    Parallel edges collapse to the shorter path; edge keys are sorted id
    pairs over the site list.
    """

    sites: tuple[Point, ...]
    edges: dict[tuple[int, int], GeodesicPath] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)
    vias: dict[tuple[int, int], tuple[Point, ...]] = field(default_factory=dict)

    def add(
        self,
        i: int,
        j: int,
        path: GeodesicPath,
        via: tuple[Point, ...] = (),
    ) -> bool:
        """Insert an edge; `via` lists the curve anchor points (0, 1 or 2)
        that let the path be rebuilt from taut legs between them."""
        if i == j:
            return False
        key = (i, j) if i < j else (j, i)
        old = self.edges.get(key)
        if old is not None and old.length <= path.length:
            return False
        self.edges[key] = path
        self.vias[key] = tuple(via)
        return True

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_complexity(self) -> int:
        return sum(p.complexity for p in self.edges.values())

    @property
    def total_weight(self) -> float:
        return sum(p.length for p in self.edges.values())

    def adjacency(self) -> csr_matrix:
        n = len(self.sites)
        if not self.edges:
            return csr_matrix((n, n))
        rows, cols, vals = [], [], []
        for (i, j), path in self.edges.items():
            rows += [i, j]
            cols += [j, i]
            vals += [path.length, path.length]
        return csr_matrix(
            (np.array(vals), (np.array(rows), np.array(cols))), shape=(n, n)
        )
