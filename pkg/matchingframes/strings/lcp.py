"""Longest common prefix queries between suffixes of one text.

Kasai's algorithm gives the LCP of lex-adjacent suffixes; a sparse table over
that array answers any pair in O(1) after O(n log n) preprocessing.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from matchingframes.errors import BoundsError
from matchingframes.strings.suffix_array import SuffixArray, build_suffix_array

logger = logging.getLogger(__name__)


def _ilog2(value: int) -> int:
    return value.bit_length() - 1


def kasai_lcp(codes: np.ndarray, order0: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """
    lcp[x] = LCP of the suffixes at lex positions x-1 and x (lcp[0] = 0).
    All positions 0-based.
    """

    n = codes.size
    text = codes.tolist()
    sa = order0.tolist()
    rk = rank.tolist()

    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rk[i]
        if r == 0:
            h = 0
            continue

        j = sa[r - 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1

        lcp[r] = h
        if h > 0:
            h -= 1

    return np.asarray(lcp, dtype=np.int64)


class SparseTableMin:
    """
    Static range minimum over an integer array.

    Preprocessing: O(n log n)
    Query: O(1)
    """

    def __init__(self, values: np.ndarray):

        self.size = int(values.size)
        self.table = [np.asarray(values)]

        depth = 1
        while (1 << depth) <= self.size:
            previous = self.table[depth - 1]
            half = 1 << (depth - 1)
            self.table.append(np.minimum(previous[:-half], previous[half:]))
            depth += 1

    def query(self, start: int, stop: int) -> int:
        """Minimum of values[start:stop]; the range must be non-empty."""

        depth = _ilog2(stop - start)
        row = self.table[depth]
        return int(min(row[start], row[stop - (1 << depth)]))

    def query_many(self, starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
        """query() over paired arrays of non-empty ranges."""

        starts = np.asarray(starts, dtype=np.int64)
        stops = np.asarray(stops, dtype=np.int64)
        lengths = stops - starts

        depth = np.zeros(lengths.shape, dtype=np.int64)
        for level in range(1, len(self.table)):
            depth[lengths >= (1 << level)] = level

        result = np.empty(lengths.shape, dtype=np.int64)
        for level in np.unique(depth).tolist():
            mask = depth == level
            row = self.table[level]
            result[mask] = np.minimum(row[starts[mask]], row[stops[mask] - (1 << level)])

        return result


class LcpStructure:
    """
    Pairwise suffix LCP over `text` with O(1) queries.

    Suffixes are addressed by their 1-based start position.
    """

    def __init__(self, text: Sequence[int], suffix_array: Optional[SuffixArray] = None):

        self.text = np.asarray(text, dtype=np.int64)
        self.suffix_array = suffix_array if suffix_array is not None else build_suffix_array(self.text)

        n = self.text.size
        self.order0 = self.suffix_array.order - 1

        self.rank = np.empty(n, dtype=np.int64)
        self.rank[self.order0] = np.arange(n, dtype=np.int64)

        self.lcp = kasai_lcp(self.text, self.order0, self.rank)
        self._rmq = SparseTableMin(self.lcp)

        logger.debug(f"LCP structure over {n} symbols, {len(self._rmq.table)} sparse table levels")

    @property
    def text_length(self) -> int:
        return int(self.text.size)

    def query(self, i: int, j: int) -> int:
        """LCP of the suffixes starting at 1-based positions i and j."""

        n = self.text.size
        if not (1 <= i <= n and 1 <= j <= n):
            raise BoundsError(f"Suffix starts ({i},{j}) are outside [1..{n}]")

        if i == j:
            return n - i + 1

        ri = int(self.rank[i - 1])
        rj = int(self.rank[j - 1])
        if ri > rj:
            ri, rj = rj, ri

        return self._rmq.query(ri + 1, rj + 1)

    def query_many(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """query() over paired arrays of distinct 1-based suffix starts."""

        ri = self.rank[np.asarray(i, dtype=np.int64) - 1]
        rj = self.rank[np.asarray(j, dtype=np.int64) - 1]
        if np.any(ri == rj):
            raise BoundsError("query_many needs distinct suffixes in every pair")

        return self._rmq.query_many(np.minimum(ri, rj) + 1, np.maximum(ri, rj) + 1)

    def lex_rank(self, i: int) -> int:
        """0-based lex position of the suffix starting at i."""
        return int(self.rank[i - 1])


def lcp_query(L: LcpStructure, i: int, j: int) -> int:
    return L.query(i, j)


def naive_lcp(a: Sequence, b: Sequence) -> int:
    """Character by character LCP of two sequences."""

    k = 0
    limit = min(len(a), len(b))
    while k < limit and a[k] == b[k]:
        k += 1
    return k
