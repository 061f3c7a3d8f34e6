"""Segment crossing and a bulk-loaded R-tree for crossing-line queries.

The tree is built top-down by binary splits.  The first split separates
segments by size (the larger of bounding-box width and height): in a complete
graph many edges are long and overlap most others, and grouping them keeps the
boxes of the short edges tight.  Further splits sort on box centre along the
longer axis of the current node's box.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

Point = tuple[float, float]

EPS = 1e-9
LEAF_CAPACITY = 8


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a).

    Exact for integral coordinates; float determinants within EPS of zero
    count as collinear.
    """
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if isinstance(d, int):
        return (d > 0) - (d < 0)
    if abs(d) <= EPS:
        return 0
    return 1 if d > 0 else -1


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point
    id: Hashable = None

    @property
    def box(self) -> tuple[float, float, float, float]:
        return (min(self.p[0], self.q[0]), min(self.p[1], self.q[1]),
                max(self.p[0], self.q[0]), max(self.p[1], self.q[1]))


def segments_cross(a: Segment, b: Segment) -> bool:
    """True iff the segments meet at a point interior to both.

    Shared endpoints, T-junctions and collinear overlaps are not crossings.
    """
    o1 = orientation(a.p, a.q, b.p)
    o2 = orientation(a.p, a.q, b.q)
    if o1 * o2 >= 0:
        return False
    o3 = orientation(b.p, b.q, a.p)
    o4 = orientation(b.p, b.q, a.q)
    return o3 * o4 < 0


def _union(boxes):
    return (min(b[0] for b in boxes), min(b[1] for b in boxes),
            max(b[2] for b in boxes), max(b[3] for b in boxes))


class _Node:
    __slots__ = ("box", "children", "items")

    def __init__(self, box, children=None, items=None):
        self.box = box
        self.children = children
        self.items = items


class SpatialIndex:
    """Static R-tree over segments."""

    def __init__(self, segments: Sequence[Segment], leaf_capacity: int = LEAF_CAPACITY) -> None:
        if not segments:
            raise ValueError("cannot index an empty segment set")
        if leaf_capacity < 2:
            raise ValueError("leaf capacity must be at least 2")
        self.leaf_capacity = leaf_capacity
        self.segments = list(segments)
        self.root = self._build([(s, s.box) for s in self.segments], depth=0)

    def _build(self, entries, depth):
        box = _union([b for _, b in entries])
        if len(entries) <= self.leaf_capacity:
            return _Node(box, items=entries)
        if depth == 0:
            entries = sorted(entries, key=lambda e: -max(e[1][2] - e[1][0], e[1][3] - e[1][1]))
        else:
            axis = 0 if box[2] - box[0] >= box[3] - box[1] else 1
            entries = sorted(entries, key=lambda e: e[1][axis] + e[1][axis + 2])
        mid = len(entries) // 2
        return _Node(box, children=[self._build(entries[:mid], depth + 1),
                                    self._build(entries[mid:], depth + 1)])

    def leaves(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.items is not None:
                yield node
            else:
                stack.extend(node.children)

    def candidates(self, box) -> list[Segment]:
        """Segments whose bounding box intersects ``box``."""
        x0, y0, x1, y1 = box
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            b = node.box
            if b[0] > x1 or b[2] < x0 or b[1] > y1 or b[3] < y0:
                continue
            if node.items is None:
                stack.extend(node.children)
                continue
            for s, sb in node.items:
                if not (sb[0] > x1 or sb[2] < x0 or sb[1] > y1 or sb[3] < y0):
                    out.append(s)
        return out

    def query_crossing(self, e: Segment) -> set:
        """Ids of the indexed segments that cross ``e``."""
        return {s.id for s in self.candidates(e.box) if segments_cross(e, s)}


def build_index(segments: Sequence[Segment], leaf_capacity: int = LEAF_CAPACITY) -> SpatialIndex:
    return SpatialIndex(segments, leaf_capacity)


def query_crossing(index: SpatialIndex, e: Segment) -> set:
    return index.query_crossing(e)


def crossing_scan(segments: Sequence[Segment], e: Segment) -> set:
    """Linear-scan reference for :func:`query_crossing`."""
    return {s.id for s in segments if segments_cross(e, s)}


def exact_points(coords: Sequence[Point]) -> list[Point]:
    """Use ints for integral coordinates so orientation tests are exact."""
    if all(float(x).is_integer() and float(y).is_integer() for x, y in coords):
        return [(int(x), int(y)) for x, y in coords]
    return [(float(x), float(y)) for x, y in coords]
