"""Additively weighted spanners for sites on a line.

Distances here are d_w(p, q) = w(p) + |pos_p - pos_q| + w(q) for p != q.
The basic construction splits the sites at a balanced point O, stars
everything to the site nearest O, and recurses on the two halves. The
grouped construction replaces the star with a height-k tree of groups so
that most edges connect nearby sites; it trades the factor 2 for 2k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidOrderError


@dataclass(frozen=True)
class WeightedSite1D:
    position: float
    weight: float
    origin: int

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")


def d_w(a: WeightedSite1D, b: WeightedSite1D) -> float:
    if a.origin == b.origin:
        return 0.0
    return a.weight + abs(a.position - b.position) + b.weight


@dataclass
class GroupNode:
    """One group: a run [lo, hi) of the traversal order at a given level."""

    level: int
    lo: int
    hi: int
    center: int
    children: list["GroupNode"] = field(default_factory=list)

    def leaves(self) -> list["GroupNode"]:
        if not self.children:
            return [self]
        out = []
        for ch in self.children:
            out.extend(ch.leaves())
        return out


@dataclass(frozen=True)
class GroupTree:
    """Group hierarchy of one recursion node, over `order` (origin ids)."""

    order: tuple[int, ...]
    root: GroupNode
    split_position: float

    def members(self, node: GroupNode) -> tuple[int, ...]:
        return self.order[node.lo : node.hi]


@dataclass
class Spanner1D:
    n: int
    edges: list[tuple[int, int]]
    levels: list[int]
    group_trees: list[GroupTree] = field(default_factory=list)

    def add(self, a: int, b: int, level: int) -> None:
        if a == b:
            return
        key = (a, b) if a < b else (b, a)
        if key not in self._seen:
            self._seen.add(key)
            self.edges.append(key)
            self.levels.append(level)

    def __post_init__(self) -> None:
        self._seen = set(self.edges)


def split_point(
    sites: list[WeightedSite1D],
) -> tuple[float, list[int], list[int], list[int]]:
    """Balanced split of sites by a point O on the line.

    Returns (O, left origins, right origins, origins exactly at O). O is the
    median position for odd counts (that site going to the third list) and
    the midpoint of the two middle positions for even counts.
    """
    if not sites:
        raise ValueError("need at least one site")
    by_pos = sorted(sites, key=lambda s: (s.position, s.origin))
    n = len(by_pos)
    if n % 2:
        o = by_pos[n // 2].position
    else:
        o = (by_pos[n // 2 - 1].position + by_pos[n // 2].position) / 2
    left = [s.origin for s in by_pos if s.position < o]
    right = [s.origin for s in by_pos if s.position > o]
    on_line = [s.origin for s in by_pos if s.position == o]
    return o, left, right, on_line


def _center(sites: list[WeightedSite1D], o: float) -> int:
    best = min(sites, key=lambda s: (s.weight + abs(s.position - o), s.origin))
    return best.origin


def build_2spanner(sites: list[WeightedSite1D]) -> Spanner1D:
    """Star-and-recurse construction: d_G(p,q) <= 2 d_w(p,q) for all pairs.

    Adds at most n-1 edges per recursion level and halves the larger side
    each level, so the total edge count stays below n ceil(log2 n).
    """
    spanner = Spanner1D(n=len(sites), edges=[], levels=[])
    by_origin = {s.origin: s for s in sites}
    if len(by_origin) != len(sites):
        raise InvalidOrderError("duplicate site origins")

    def rec(subset: list[WeightedSite1D], depth: int) -> None:
        if len(subset) < 2:
            return
        o, left, right, _ = split_point(subset)
        c = _center(subset, o)
        for s in subset:
            spanner.add(s.origin, c, depth)
        rec([by_origin[i] for i in left if i != c], depth + 1)
        rec([by_origin[i] for i in right if i != c], depth + 1)

    rec(list(sites), 0)
    return spanner


def _build_group_tree(
    subset: list[WeightedSite1D], order_pos: dict[int, int], k: int, o: float
) -> GroupTree:
    """Height-k hierarchy over subset, grouped by consecutive runs of the
    traversal order; each merged node's center is the child center nearest O."""
    seq = sorted(subset, key=lambda s: order_pos[s.origin])
    by_origin = {s.origin: s for s in subset}
    n = len(seq)
    nodes = [GroupNode(level=0, lo=i, hi=i + 1, center=s.origin) for i, s in enumerate(seq)]
    fanout = max(2, math.ceil(n ** (1.0 / k))) if n > 1 else 1
    for level in range(1, k + 1):
        if len(nodes) == 1 and nodes[0].level > 0:
            nodes[0].level = level
            continue
        merged = []
        step = len(nodes) if level == k else fanout
        for i in range(0, len(nodes), step):
            chunk = nodes[i : i + step]
            c = min(
                (by_origin[ch.center] for ch in chunk),
                key=lambda s: (s.weight + abs(s.position - o), s.origin),
            ).origin
            merged.append(
                GroupNode(level=level, lo=chunk[0].lo, hi=chunk[-1].hi, center=c, children=chunk)
            )
        nodes = merged
    root = nodes[0]
    return GroupTree(order=tuple(s.origin for s in seq), root=root, split_position=o)


def build_grouped_spanner(
    sites: list[WeightedSite1D], order: list[int], k: int
) -> tuple[Spanner1D, GroupTree]:
    """Grouped construction: d_G(p,q) <= 2k d_w(p,q) for all pairs.

    `order` (a permutation of the site origins) fixes which sites are
    grouped together: groups are consecutive runs of it. The order controls
    edge geometry for callers that map edges back into a polygon; the 2k
    bound holds for any order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    origins = sorted(s.origin for s in sites)
    if sorted(order) != origins:
        raise InvalidOrderError("order is not a permutation of the site origins")
    order_pos = {origin: i for i, origin in enumerate(order)}
    by_origin = {s.origin: s for s in sites}
    spanner = Spanner1D(n=len(sites), edges=[], levels=[])
    top_tree: list[GroupTree] = []

    def emit(node: GroupNode, parent_center: int | None, depth: int) -> None:
        if parent_center is not None:
            spanner.add(node.center, parent_center, depth)
        for ch in node.children:
            emit(ch, node.center, depth)

    def rec(subset: list[WeightedSite1D], depth: int) -> None:
        if not subset:
            return
        if len(subset) == 1:
            return
        o, left, right, _ = split_point(subset)
        tree = _build_group_tree(subset, order_pos, k, o)
        spanner.group_trees.append(tree)
        if not top_tree:
            top_tree.append(tree)
        emit(tree.root, None, depth)
        rec([by_origin[i] for i in left], depth + 1)
        rec([by_origin[i] for i in right], depth + 1)

    rec(list(sites), 0)
    if not top_tree:
        top_tree.append(
            GroupTree(
                order=tuple(s.origin for s in sites),
                root=GroupNode(0, 0, len(sites), sites[0].origin if sites else -1),
                split_position=0.0,
            )
        )
    return spanner, top_tree[0]
