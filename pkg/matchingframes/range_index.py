"""Static orthogonal range argmax / argmin over valued integer points.

A layered range tree: every layer but the last is a balanced tree over the
points sorted by one coordinate, each node holding the next layer for its
points; the last layer is a sorted coordinate array with sparse tables, so a
query costs O(log^(d-1) n). Small point sets are scanned directly.

Ties are resolved once at build time: points are ranked by value (best
first), then by coordinates, and queries return the lowest rank in the box.
"""
from collections import namedtuple
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from matchingframes.errors import InvalidInputError
from matchingframes.strings.lcp import SparseTableMin

logger = logging.getLogger(__name__)

ValuedPoint = namedtuple(
    "ValuedPoint",
    [
        "coords",   # tuple of d integers
        "value",
    ]
)

Box = namedtuple(
    "Box",
    [
        "low",      # tuple of d lower bounds (inclusive)
        "high",     # tuple of d upper bounds (inclusive)
    ]
)

NEG_INF = -(1 << 62)
POS_INF = (1 << 62)

# point sets up to this size are answered by a direct scan
LEAF_SIZE = 16

_NO_RANK = np.iinfo(np.int64).max


def make_point(coords: Sequence[int], value: int) -> ValuedPoint:
    return ValuedPoint(coords=tuple(int(c) for c in coords), value=int(value))


def make_box(*intervals: Tuple[Optional[int], Optional[int]]) -> Box:
    """
    make_box((a1, b1), (a2, b2), ...); None stands for -inf / +inf.
    """

    low, high = [], []
    for a, b in intervals:
        a = NEG_INF if a is None else int(a)
        b = POS_INF if b is None else int(b)
        if a > b:
            raise InvalidInputError(f"Empty interval [{a}..{b}] in a box")
        low.append(a)
        high.append(b)

    return Box(low=tuple(low), high=tuple(high))


def full_box(dimension: int) -> Box:
    return Box(low=(NEG_INF,) * dimension, high=(POS_INF,) * dimension)


def point_in_box(point: ValuedPoint, box: Box) -> bool:
    return all(a <= c <= b for c, a, b in zip(point.coords, box.low, box.high))


class _ScanLayer:
    """Checks coordinates dim..d-1 of a handful of points directly."""

    __slots__ = ("coords", "rank_max", "rank_min", "dim")

    def __init__(self, index: "RangeIndex", ids: np.ndarray, dim: int):
        self.dim = dim
        self.coords = index.coords[ids, dim:]
        self.rank_max = index.rank_max[ids]
        self.rank_min = index.rank_min[ids]

    def query(self, low: np.ndarray, high: np.ndarray, maximize: bool) -> int:
        inside = np.all((self.coords >= low[self.dim:]) & (self.coords <= high[self.dim:]), axis=1)
        if not inside.any():
            return _NO_RANK
        ranks = self.rank_max if maximize else self.rank_min
        return int(ranks[inside].min())


class _LastLayer:
    """Sorted last coordinate plus O(1) range-minimum over ranks."""

    __slots__ = ("keys", "best_max", "best_min", "dim")

    def __init__(self, index: "RangeIndex", ids: np.ndarray, dim: int):
        self.dim = dim
        ids = ids[np.argsort(index.coords[ids, dim], kind="stable")]
        self.keys = index.coords[ids, dim]
        self.best_max = SparseTableMin(index.rank_max[ids])
        self.best_min = SparseTableMin(index.rank_min[ids])

    def query(self, low: np.ndarray, high: np.ndarray, maximize: bool) -> int:
        lo = int(np.searchsorted(self.keys, low[self.dim], side="left"))
        hi = int(np.searchsorted(self.keys, high[self.dim], side="right"))
        if lo >= hi:
            return _NO_RANK
        table = self.best_max if maximize else self.best_min
        return table.query(lo, hi)


class _TreeLayer:
    """Balanced tree over one coordinate; full nodes delegate to the next layer."""

    __slots__ = ("keys", "dim", "nodes", "size")

    def __init__(self, index: "RangeIndex", ids: np.ndarray, dim: int):
        self.dim = dim
        ids = ids[np.argsort(index.coords[ids, dim], kind="stable")]
        self.keys = index.coords[ids, dim]
        self.size = int(ids.size)
        self.nodes = {}
        self._build(index, ids, 1, 0, self.size)

    def _build(self, index, ids, node, start, stop):
        if stop - start <= LEAF_SIZE:
            self.nodes[node] = (True, _ScanLayer(index, ids[start:stop], self.dim))
            return

        self.nodes[node] = (False, _make_layer(index, ids[start:stop], self.dim + 1))
        mid = (start + stop) // 2
        self._build(index, ids, 2 * node, start, mid)
        self._build(index, ids, 2 * node + 1, mid, stop)

    def query(self, low: np.ndarray, high: np.ndarray, maximize: bool) -> int:
        lo = int(np.searchsorted(self.keys, low[self.dim], side="left"))
        hi = int(np.searchsorted(self.keys, high[self.dim], side="right"))
        if lo >= hi:
            return _NO_RANK
        return self._collect(1, 0, self.size, lo, hi, low, high, maximize)

    def _collect(self, node, start, stop, lo, hi, low, high, maximize) -> int:
        if hi <= start or stop <= lo:
            return _NO_RANK

        is_bucket, layer = self.nodes[node]
        if is_bucket or (lo <= start and stop <= hi):
            return layer.query(low, high, maximize)

        mid = (start + stop) // 2
        left = self._collect(2 * node, start, mid, lo, hi, low, high, maximize)
        right = self._collect(2 * node + 1, mid, stop, lo, hi, low, high, maximize)
        return min(left, right)


def _make_layer(index: "RangeIndex", ids: np.ndarray, dim: int):
    if ids.size <= LEAF_SIZE:
        return _ScanLayer(index, ids, dim)
    if dim == index.dimension - 1:
        return _LastLayer(index, ids, dim)
    return _TreeLayer(index, ids, dim)


class RangeIndex:
    """
    Immutable d-dimensional argmax/argmin structure.

    Args:
        points: ValuedPoint list; duplicate coordinates are allowed
        dimension: d
    Raises:
        InvalidInputError: a point does not have d coordinates
    """

    def __init__(self, points: Sequence[ValuedPoint], dimension: int):

        if dimension < 1:
            raise InvalidInputError(f"Range index dimension must be >= 1, got {dimension}")

        for point in points:
            if len(point.coords) != dimension:
                raise InvalidInputError(f"All points must have {dimension} dimensions, got {point.coords}")

        self.dimension = dimension
        self.points: List[ValuedPoint] = list(points)
        count = len(self.points)

        self.coords = np.array([p.coords for p in self.points], dtype=np.int64).reshape(count, dimension)
        self.values = np.array([p.value for p in self.points], dtype=np.int64)

        # rank 0 is the best point; lexsort uses the last key as the primary one
        coord_keys = [self.coords[:, k] for k in range(dimension - 1, -1, -1)]
        self.order_max = np.lexsort(coord_keys + [-self.values]) if count else np.zeros(0, dtype=np.int64)
        self.order_min = np.lexsort(coord_keys + [self.values]) if count else np.zeros(0, dtype=np.int64)

        self.rank_max = np.empty(count, dtype=np.int64)
        self.rank_max[self.order_max] = np.arange(count, dtype=np.int64)
        self.rank_min = np.empty(count, dtype=np.int64)
        self.rank_min[self.order_min] = np.arange(count, dtype=np.int64)

        self._root = _make_layer(self, np.arange(count, dtype=np.int64), 0) if count else None

    def __len__(self) -> int:
        return len(self.points)

    def query_max(self, box: Box) -> Optional[ValuedPoint]:
        """A point of the box with the largest value, or None."""
        return self._query(box, maximize=True)

    def query_min(self, box: Box) -> Optional[ValuedPoint]:
        """A point of the box with the smallest value, or None."""
        return self._query(box, maximize=False)

    def _query(self, box: Box, maximize: bool) -> Optional[ValuedPoint]:

        if len(box.low) != self.dimension or len(box.high) != self.dimension:
            raise InvalidInputError(f"Box must have {self.dimension} dimensions")

        if self._root is None:
            return None

        low = np.asarray(box.low, dtype=np.int64)
        high = np.asarray(box.high, dtype=np.int64)
        if np.any(low > high):
            return None

        rank = self._root.query(low, high, maximize)
        if rank == _NO_RANK:
            return None

        order = self.order_max if maximize else self.order_min
        return self.points[int(order[rank])]


def build(points: Sequence[ValuedPoint], dimension: int) -> RangeIndex:
    return RangeIndex(points, dimension)


def query_max(index: RangeIndex, box: Box) -> Optional[ValuedPoint]:
    return index.query_max(box)


def query_min(index: RangeIndex, box: Box) -> Optional[ValuedPoint]:
    return index.query_min(box)


def scan_best(points: Sequence[ValuedPoint], box: Box, maximize: bool = True) -> Optional[ValuedPoint]:
    """Linear scan with the same tie-break as RangeIndex; reference for tests."""

    inside = [p for p in points if point_in_box(p, box)]
    if not inside:
        return None
    if maximize:
        return min(inside, key=lambda p: (-p.value, p.coords))
    return min(inside, key=lambda p: (p.value, p.coords))
