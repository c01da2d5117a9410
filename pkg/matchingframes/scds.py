"""Segment compatibility data structure.

Stores aligned vertical segment pairs and, for an aligned horizontal pair,
returns the stored vertical pair of maximum distance that fits it: the
vertical pair must span the horizontal pair's rows and lie within its
column span. Each stored pair becomes the 4D point (a1, a2, b1, b2) with
value b2 - b1.
"""
from collections import namedtuple
import logging
from typing import Iterable, Optional

from matchingframes.errors import InvalidInputError
from matchingframes.range_index import Box, NEG_INF, POS_INF, RangeIndex, make_point

logger = logging.getLogger(__name__)

VerticalAlignedPair = namedtuple(
    "VerticalAlignedPair",
    [
        "a1",   # top row
        "a2",   # bottom row
        "b1",   # left column
        "b2",   # right column
    ]
)

HorizontalAlignedPair = namedtuple(
    "HorizontalAlignedPair",
    [
        "i1",   # upper row
        "i2",   # lower row
        "j1",   # first column
        "j2",   # last column
    ]
)


def make_vertical_pair(a1: int, a2: int, b1: int, b2: int) -> VerticalAlignedPair:

    if not (a1 < a2 and b1 < b2):
        raise InvalidInputError(f"A vertical pair needs a1<a2 and b1<b2, got ({a1},{a2},{b1},{b2})")

    return VerticalAlignedPair(a1=int(a1), a2=int(a2), b1=int(b1), b2=int(b2))


def make_horizontal_pair(i1: int, i2: int, j1: int, j2: int) -> HorizontalAlignedPair:

    if not (i1 < i2 and j1 < j2):
        raise InvalidInputError(f"A horizontal pair needs i1<i2 and j1<j2, got ({i1},{i2},{j1},{j2})")

    return HorizontalAlignedPair(i1=int(i1), i2=int(i2), j1=int(j1), j2=int(j2))


def vertical_distance(p: VerticalAlignedPair) -> int:
    return p.b2 - p.b1


def horizontal_distance(h: HorizontalAlignedPair) -> int:
    return h.i2 - h.i1


def is_compatible(p: VerticalAlignedPair, h: HorizontalAlignedPair) -> bool:
    """a1 <= i1 <= i2 <= a2 and j1 <= b1 <= b2 <= j2"""
    return p.a1 <= h.i1 and h.i2 <= p.a2 and h.j1 <= p.b1 and p.b2 <= h.j2


class Scds:
    """
    Immutable store of vertical aligned pairs; duplicates are kept.

    Args:
        pairs: VerticalAlignedPair objects
    Raises:
        InvalidInputError: a pair violates a1<a2 or b1<b2
    """

    def __init__(self, pairs: Iterable[VerticalAlignedPair]):

        points = []
        for p in pairs:
            if not (p.a1 < p.a2 and p.b1 < p.b2):
                raise InvalidInputError(f"Invalid vertical pair {tuple(p)}")
            points.append(make_point((p.a1, p.a2, p.b1, p.b2), p.b2 - p.b1))

        self._index = RangeIndex(points, 4)

    def __len__(self) -> int:
        return len(self._index)

    def max_compatible(self, h: HorizontalAlignedPair) -> Optional[VerticalAlignedPair]:
        """Stored pair compatible with h of maximum distance b2-b1, or None."""

        box = Box(
            low=(NEG_INF, h.i2, h.j1, h.j1),
            high=(h.i1, POS_INF, h.j2, h.j2),
        )

        point = self._index.query_max(box)
        if point is None:
            return None

        return VerticalAlignedPair(*point.coords)


def build(pairs: Iterable[VerticalAlignedPair]) -> Scds:
    return Scds(pairs)


def max_compatible(S: Scds, h: HorizontalAlignedPair) -> Optional[VerticalAlignedPair]:
    return S.max_compatible(h)
