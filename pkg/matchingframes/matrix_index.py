"""Row and column suffix structures of a matrix.

Rows are concatenated as M[1] $1 M[2] $2 ... M[n] $n with distinct sentinels
above every symbol, so an LCP between two row suffixes starting at the same
column never runs past the row end. Columns get their own sentinel block.
The reversed structures hold every row (column) reversed in place, which
turns "agree going left from column l" into a prefix query.
"""
import logging
import threading
from typing import Dict, List, Optional, Tuple

import numpy as np

from matchingframes.errors import InvalidInputError, check_index
from matchingframes.grid import Matrix, transpose
from matchingframes.range_index import Box, NEG_INF, POS_INF, RangeIndex, ValuedPoint, make_point
from matchingframes.strings.lcp import LcpStructure
from matchingframes.strings.lex_sorted import Fingerprint, LexSortedArray

logger = logging.getLogger(__name__)

SUPPORTED_OBJECTIVES = {
                "min",
                "max"
                }

# coordinates of the points stored in a D structure
LINE_COORD = 0      # row (column) id
LEX_COORD = 1       # lex position of its suffix


class LineLcpView:
    """
    LCP and lex-order access for the lines (rows or columns) of a matrix.

    Line k (1-based) of length L occupies positions (k-1)(L+1)+1 .. (k-1)(L+1)+L
    of the concatenation. In the reversed concatenation the same slot holds the
    line reversed, so the prefix ending at offset e starts at L-e+1.
    """

    def __init__(self, lines: np.ndarray, sentinel_base: int):

        self.count, self.length = lines.shape
        self.stride = self.length + 1

        sentinels = sentinel_base + np.arange(self.count, dtype=np.int64)

        forward = np.empty((self.count, self.stride), dtype=np.int64)
        forward[:, :self.length] = lines
        forward[:, self.length] = sentinels

        backward = np.empty((self.count, self.stride), dtype=np.int64)
        backward[:, :self.length] = lines[:, ::-1]
        backward[:, self.length] = sentinels

        self.forward = LcpStructure(forward.ravel())
        self.backward = LcpStructure(backward.ravel())

        # order[o-1] = line ids sorted by their suffix from offset o
        self.order = self._lex_orders(self.forward)
        # rev_order[e-1] = line ids sorted by their reversed prefix ending at e
        self.rev_order = self._lex_orders(self.backward)[::-1]

        # ranks[o-1][k-1] = 0-based lex position of line k in order[o-1]
        self.ranks = np.argsort(self.order, axis=1)

        # adjacent[o-1][p] = LCP from offset o of the lines at lex positions p-1 and p
        self.adjacent = np.full(self.order.shape, -1, dtype=np.int64)
        if self.count > 1:
            offsets = np.arange(1, self.length + 1, dtype=np.int64)[:, None]
            starts = (self.order - 1) * self.stride + offsets
            self.adjacent[:, 1:] = self.forward.query_many(starts[:, :-1], starts[:, 1:])

        self._lsa = [self._make_lsa(o) for o in range(1, self.length + 1)]
        self._rev_lsa = [self._make_rev_lsa(e) for e in range(1, self.length + 1)]

    def _lex_orders(self, structure: LcpStructure) -> np.ndarray:
        """One left-to-right scan of the suffix array, skipping sentinel starts."""

        starts = structure.suffix_array.order - 1
        offsets = starts % self.stride
        keep = offsets < self.length

        lines = starts[keep] // self.stride + 1
        grouping = np.argsort(offsets[keep], kind="stable")

        return lines[grouping].reshape(self.length, self.count)

    def _make_lsa(self, offset: int) -> LexSortedArray:
        return LexSortedArray(
            self.order[offset - 1],
            lcp=lambda a, b: self.lcp(offset, a, b),
            length=lambda a: self.length - offset + 1,
        )

    def _make_rev_lsa(self, end: int) -> LexSortedArray:
        return LexSortedArray(
            self.rev_order[end - 1],
            lcp=lambda a, b: self.rev_lcp(end, a, b),
            length=lambda a: end,
        )

    def position(self, line: int, offset: int) -> int:
        """1-based position of line[offset] in the concatenation."""
        return (line - 1) * self.stride + offset

    def reversed_position(self, line: int, end: int) -> int:
        """1-based start of the reversed prefix line[1..end] in the reversed concatenation."""
        return (line - 1) * self.stride + (self.length - end + 1)

    def _check(self, offset: int, a: int, b: int):
        check_index("offset", offset, 1, self.length)
        check_index("line", a, 1, self.count)
        check_index("line", b, 1, self.count)

    def lcp(self, offset: int, a: int, b: int) -> int:
        self._check(offset, a, b)
        if a == b:
            return self.length - offset + 1
        return self.forward.query(self.position(a, offset), self.position(b, offset))

    def rev_lcp(self, end: int, a: int, b: int) -> int:
        self._check(end, a, b)
        if a == b:
            return end
        return self.backward.query(self.reversed_position(a, end), self.reversed_position(b, end))

    def lsa(self, offset: int) -> LexSortedArray:
        check_index("offset", offset, 1, self.length)
        return self._lsa[offset - 1]

    def rev_lsa(self, end: int) -> LexSortedArray:
        check_index("offset", end, 1, self.length)
        return self._rev_lsa[end - 1]

    def fingerprint_ids(self, offset: int, t) -> np.ndarray:
        """
        First lex position (1-based) of every line's fingerprint of length t
        from `offset`, indexed by line id - 1. Two lines agree on t symbols
        from `offset` iff their ids are equal. An array of t gives one row per
        length.
        """

        check_index("offset", offset, 1, self.length)
        t = np.asarray(t, dtype=np.int64)
        if t.size and (t.min() < 0 or t.max() > self.length - offset + 1):
            raise InvalidInputError(f"Prefix lengths must lie in [0..{self.length - offset + 1}]")

        breaks = self.adjacent[offset - 1] < t[..., None]
        positions = np.arange(self.count, dtype=np.int64)
        starts = np.maximum.accumulate(np.where(breaks, positions, 0), axis=-1)

        return starts[..., self.ranks[offset - 1]] + 1


class RowLcpView(LineLcpView):
    """Rows of M; offsets are columns."""

    def __init__(self, M: Matrix, sentinel_base: int):
        super().__init__(M.cells, sentinel_base)


class ColLcpView(LineLcpView):
    """Columns of M; offsets are rows."""

    def __init__(self, M: Matrix, sentinel_base: int):
        super().__init__(M.cells.T, sentinel_base)


def _interval(bounds: Tuple[Optional[int], Optional[int]]) -> Optional[Tuple[int, int]]:
    low = NEG_INF if bounds[0] is None else int(bounds[0])
    high = POS_INF if bounds[1] is None else int(bounds[1])
    if low > high:
        return None
    return low, high


class MatrixIndex:
    """
    Preprocessed LCP, lex-order and 2D range structures for one matrix.

    Suffix arrays, lex-sorted arrays and LCP tables are built eagerly. The 2D
    range structures D_rows^l / D_columns^u over points (k, lex position of
    line k) are built on first use and cached; building is guarded by a lock
    so an index can be queried from several threads.
    """

    def __init__(self, M: Matrix):

        n, m = M.n, M.m
        sentinel_base = max(M.alphabet_max, int(M.cells.max())) + 1

        self._attach(M, RowLcpView(M, sentinel_base), ColLcpView(M, sentinel_base + n))

        logger.debug(f"matrix index for {n}x{m}, sentinels from {sentinel_base}")

    def _attach(self, M: Matrix, rows: LineLcpView, columns: LineLcpView):

        self.matrix = M
        self.rows = rows
        self.columns = columns

        self._ranges: Dict[tuple, RangeIndex] = {}
        self._lock = threading.Lock()

    def transposed(self) -> "MatrixIndex":
        """Index of M^T; shares this index's line structures with rows and columns swapped."""

        index = MatrixIndex.__new__(MatrixIndex)
        index._attach(transpose(self.matrix), self.columns, self.rows)
        return index

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m

    # --- lex orders

    def lsa_rows(self, l: int) -> List[int]:
        """Row ids sorted by M[i][l..m]."""
        return self.rows.lsa(l).entries.tolist()

    def rev_lsa_rows(self, l: int) -> List[int]:
        """Row ids sorted by the reversed prefix M[i][l], M[i][l-1], ..., M[i][1]."""
        return self.rows.rev_lsa(l).entries.tolist()

    def lsa_columns(self, u: int) -> List[int]:
        """Column ids sorted by M[u..n][j]."""
        return self.columns.lsa(u).entries.tolist()

    def rev_lsa_columns(self, u: int) -> List[int]:
        return self.columns.rev_lsa(u).entries.tolist()

    def row_rank(self, l: int, i: int) -> int:
        """I_rows^{i,l}: 1-based lex position of M[i][l..m]."""
        return self.rows.lsa(l).position(i)

    # --- LCP queries

    def row_lcp(self, l: int, i: int, j: int) -> int:
        """Longest t with M[i][l..l+t-1] = M[j][l..l+t-1]."""
        return self.rows.lcp(l, i, j)

    def rev_row_lcp(self, l: int, i: int, j: int) -> int:
        """Longest t with M[i][l-t+1..l] = M[j][l-t+1..l]."""
        return self.rows.rev_lcp(l, i, j)

    def col_lcp(self, u: int, j1: int, j2: int) -> int:
        """Longest t with M[u..u+t-1][j1] = M[u..u+t-1][j2]."""
        return self.columns.lcp(u, j1, j2)

    def rev_col_lcp(self, u: int, j1: int, j2: int) -> int:
        """Longest t with M[u-t+1..u][j1] = M[u-t+1..u][j2]."""
        return self.columns.rev_lcp(u, j1, j2)

    # --- fingerprints

    def row_fingerprint(self, l: int, i: int, t: int) -> Fingerprint:
        return self.rows.lsa(l).fingerprint(i, t)

    def col_fingerprint(self, u: int, j: int, t: int) -> Fingerprint:
        return self.columns.lsa(u).fingerprint(j, t)

    def row_fingerprint_ids(self, l: int, t) -> np.ndarray:
        """row_fingerprint(l, i, t).i for every row i, as an array indexed by i - 1."""
        return self.rows.fingerprint_ids(l, t)

    def col_fingerprint_ids(self, u: int, t) -> np.ndarray:
        """col_fingerprint(u, j, t).i for every column j, as an array indexed by j - 1."""
        return self.columns.fingerprint_ids(u, t)

    # --- 2D range queries

    def row_range_query(self, l: int, rows: Tuple[Optional[int], Optional[int]],
                        lex: Tuple[Optional[int], Optional[int]] = (None, None),
                        objective: str = "min", coordinate: int = LEX_COORD) -> Optional[ValuedPoint]:
        """
        Point (i, I_rows^{i,l}) of D_rows^l inside rows x lex that minimizes or
        maximizes the chosen coordinate (LINE_COORD or LEX_COORD); None bounds
        are infinite. Returns None when the box holds no point.
        """
        check_index("column", l, 1, self.m)
        return self._range_query("rows", l, rows, lex, objective, coordinate)

    def col_range_query(self, u: int, columns: Tuple[Optional[int], Optional[int]],
                        lex: Tuple[Optional[int], Optional[int]] = (None, None),
                        objective: str = "min", coordinate: int = LEX_COORD) -> Optional[ValuedPoint]:
        """Column analogue of row_range_query over D_columns^u."""
        check_index("row", u, 1, self.n)
        return self._range_query("columns", u, columns, lex, objective, coordinate)

    def _range_query(self, family, key, lines, lex, objective, coordinate) -> Optional[ValuedPoint]:

        if objective not in SUPPORTED_OBJECTIVES:
            raise InvalidInputError(f"Unknown objective: {objective}, supported objectives include: {SUPPORTED_OBJECTIVES}")

        if coordinate not in (LINE_COORD, LEX_COORD):
            raise InvalidInputError(f"Objective coordinate must be {LINE_COORD} or {LEX_COORD}, got {coordinate}")

        first = _interval(lines)
        second = _interval(lex)
        if first is None or second is None:
            return None

        index = self._range_structure(family, key, coordinate)
        box = Box(low=(first[0], second[0]), high=(first[1], second[1]))

        return index.query_min(box) if objective == "min" else index.query_max(box)

    def _range_structure(self, family: str, key: int, coordinate: int) -> RangeIndex:

        cache_key = (family, key, coordinate)
        index = self._ranges.get(cache_key)
        if index is not None:
            return index

        with self._lock:
            index = self._ranges.get(cache_key)
            if index is None:
                view = self.rows if family == "rows" else self.columns
                ranks = view.lsa(key).inverse

                points = []
                for line in range(1, view.count + 1):
                    coords = (line, int(ranks[line]))
                    points.append(make_point(coords, coords[coordinate]))

                index = RangeIndex(points, 2)
                self._ranges[cache_key] = index

        return index


def build(M: Matrix) -> MatrixIndex:
    return MatrixIndex(M)
