"""(1-eps)-approximate maximum matching frame.

Frames whose shorter side is small are solved exactly by the short search on
M and M^T. Every larger frame falls into a height class [ceil(a^h)..ceil(a^(h+1))-1]
and a width class, a = 1 + eps/3; for each class pair the matrix is covered by
overlapping windows, and a frame of that class is a surrounding frame of some
window: it strictly contains the window's inner rectangle. Any surrounding
matching frame of a window is long enough to meet the ratio, so each window
only has to decide whether one exists.

All windows are answered on one index of M. A window first has to pass a
band test on fingerprint ids: a surrounding frame needs a top-band row and a
bottom-band row agreeing across the inner rectangle, and the same for its
columns. The survivors walk the interesting triplets (u, d, l) with d below
the inner rectangle and verify each of them with one column range query.
"""
from collections import namedtuple
from functools import lru_cache
import itertools
import logging
import math
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from matchingframes import DECIDE_EPSILON, Frame, best_frame, perimeter, transpose_frame
from matchingframes.errors import DegenerateStrideError, InvalidInputError
from matchingframes.exact import run_tasks, short_frame_search
from matchingframes.grid import Matrix
from matchingframes.matrix_index import LEX_COORD, LINE_COORD, MatrixIndex
from matchingframes.range_index import Box, NEG_INF, POS_INF, RangeIndex, make_point
from matchingframes.strings.lex_sorted import LexSortedArray

logger = logging.getLogger(__name__)

InnerRectangle = namedtuple(
    "InnerRectangle",
    [
        "u_r",  # top row
        "d_r",  # bottom row
        "l_r",  # left column
        "r_r",  # right column
    ]
)

Window = namedtuple(
    "Window",
    [
        "top",      # 1-based origin row in the parent matrix
        "left",     # 1-based origin column in the parent matrix
        "height",
        "width",
        "inner",    # InnerRectangle, window relative
    ]
)

WindowGrid = namedtuple(
    "WindowGrid",
    [
        "tops",     # 1-based origin rows, ascending
        "lefts",    # 1-based origin columns, ascending
        "height",
        "width",
        "inner",    # shared by every window of the grid
    ]
)

InterestingTriplet = namedtuple(
    "InterestingTriplet",
    [
        "u",
        "d",
        "l",
    ]
)


def inner_is_empty(inner: InnerRectangle) -> bool:
    return inner.u_r > inner.d_r or inner.l_r > inner.r_r


def is_surrounding(f: Frame, inner: InnerRectangle) -> bool:
    """f strictly contains the inner rectangle."""
    return f.u < inner.u_r and f.d > inner.d_r and f.l < inner.l_r and f.r > inner.r_r


def _check_epsilon(epsilon: float) -> float:

    try:
        epsilon = float(epsilon)
    except (TypeError, ValueError):
        raise InvalidInputError(f"epsilon must be a number, got {epsilon!r}")

    if not (0.0 < epsilon < 1.0):
        raise InvalidInputError(f"epsilon must lie in (0,1), got {epsilon}")

    return epsilon


def growth(epsilon: float) -> float:
    """a = 1 + eps/3"""
    return 1.0 + epsilon / 3.0


def ceil_power(a: float, k: int) -> int:
    return math.ceil(a ** k)


def size_floor(epsilon: float) -> int:
    """Frames with a side below this are solved exactly."""
    return max(2, math.ceil(9.0 / (epsilon * epsilon)))


def first_class(epsilon: float) -> int:
    """Smallest h with ceil(a^h) >= size_floor(eps)."""

    a, floor = growth(epsilon), size_floor(epsilon)
    h = 0
    while ceil_power(a, h) < floor:
        h += 1
    return h


def short_threshold(epsilon: float) -> int:
    """Height bound of the exact phase; every smaller frame misses all window classes."""
    return max(size_floor(epsilon), ceil_power(growth(epsilon), first_class(epsilon)) - 1)


def size_classes(size: int, epsilon: float) -> List[int]:
    """Class indices h >= first_class with a non-empty class and ceil(a^h) <= size-1."""

    a = growth(epsilon)
    classes = []
    h = first_class(epsilon)
    while ceil_power(a, h) <= size - 1:
        if ceil_power(a, h + 1) - 1 >= ceil_power(a, h):
            classes.append(h)
        h += 1
    return classes


def _offsets(size: int, span: int, stride: int) -> List[int]:
    """0-based window offsets: multiples of stride, the last one clamped to end at size."""

    last = size - span
    offsets = list(range(0, last + 1, stride))
    if offsets[-1] != last:
        offsets.append(last)
    return offsets


def window_grid(n: int, m: int, epsilon: float, h: int, w: int) -> WindowGrid:
    """
    Window origins covering every frame with d-u in [ceil(a^h)..ceil(a^(h+1))-1]
    and r-l in [ceil(a^w)..ceil(a^(w+1))-1] as a surrounding frame.

    Raises:
        DegenerateStrideError: floor(eps * a^(h+1) / 3) or its width analogue is 0
    """

    epsilon = _check_epsilon(epsilon)
    a = growth(epsilon)

    height = min(ceil_power(a, h + 2), n)
    width = min(ceil_power(a, w + 2), m)

    stride_h = math.floor(epsilon * a ** (h + 1) / 3.0)
    stride_w = math.floor(epsilon * a ** (w + 1) / 3.0)
    if stride_h == 0 or stride_w == 0:
        raise DegenerateStrideError(f"Window strides ({stride_h},{stride_w}) for classes ({h},{w}) must be positive")

    low_h, low_w = ceil_power(a, h), ceil_power(a, w)

    # from the clamped size
    inner = InnerRectangle(
        u_r=height - low_h + 1,
        d_r=low_h - 1,
        l_r=width - low_w + 1,
        r_r=low_w - 1,
    )

    return WindowGrid(
        tops=[top + 1 for top in _offsets(n, height, stride_h)],
        lefts=[left + 1 for left in _offsets(m, width, stride_w)],
        height=height,
        width=width,
        inner=inner,
    )


def decompose(n: int, m: int, epsilon: float, h: int, w: int) -> List[Window]:
    """Every window of window_grid(n, m, epsilon, h, w), row-major."""

    grid = window_grid(n, m, epsilon, h, w)
    return [
        Window(top=top, left=left, height=grid.height, width=grid.width, inner=grid.inner)
        for top in grid.tops
        for left in grid.lefts
    ]


def _mask(M: Matrix, inner: InnerRectangle) -> Matrix:

    if inner_is_empty(inner):
        return M

    cells = M.cells.copy()
    base = max(M.alphabet_max, int(cells.max())) + 1

    rows = slice(inner.u_r - 1, inner.d_r)
    cols = slice(inner.l_r - 1, inner.r_r)
    count = (inner.d_r - inner.u_r + 1) * (inner.r_r - inner.l_r + 1)
    cells[rows, cols] = (base + np.arange(count, dtype=np.int64)).reshape(inner.d_r - inner.u_r + 1, -1)

    return Matrix(cells, alphabet_max=base + count - 1)


def mask_inner(W: Window, M: Matrix) -> Matrix:
    """Copy of the window with every inner cell replaced by its own fresh code."""
    return _mask(M.submatrix(W.top, W.left, W.height, W.width), W.inner)


class _RowTuple:
    """Row suffixes M[1][l..m], ..., M[n][l..m] of an indexed matrix."""

    def __init__(self, X: MatrixIndex, l: int):
        self.X = X
        self.l = l
        self.size = X.n

    def rank(self, k: int) -> int:
        return self.X.row_rank(self.l, k)

    def lcp(self, a: int, b: int) -> int:
        return self.X.row_lcp(self.l, a, b)

    def fingerprint(self, k: int, t: int):
        return self.X.row_fingerprint(self.l, k, t)

    def query(self, ids, lex, objective, coordinate):
        return self.X.row_range_query(self.l, ids, lex, objective, coordinate)


class _StringTuple:
    """An arbitrary tuple of strings with the same interface as _RowTuple."""

    def __init__(self, strings: Sequence):

        self.lsa = LexSortedArray.from_strings(strings)
        self.size = self.lsa.size

        coords = [(k, self.lsa.position(k)) for k in range(1, self.size + 1)]
        self._indexes = {
            c: RangeIndex([make_point(p, p[c]) for p in coords], 2)
            for c in (LINE_COORD, LEX_COORD)
        }

    def rank(self, k: int) -> int:
        return self.lsa.position(k)

    def lcp(self, a: int, b: int) -> int:
        return self.lsa.lcp(a, b)

    def fingerprint(self, k: int, t: int):
        return self.lsa.fingerprint(k, t)

    def query(self, ids, lex, objective, coordinate):

        low = (NEG_INF if ids[0] is None else ids[0], NEG_INF if lex[0] is None else lex[0])
        high = (POS_INF if ids[1] is None else ids[1], POS_INF if lex[1] is None else lex[1])

        index = self._indexes[coordinate]
        box = Box(low=low, high=high)
        return index.query_min(box) if objective == "min" else index.query_max(box)


def _max_lcp(view, i: int, j: int, low: Optional[int] = None) -> int:
    """L(i,j): max over k in [low..j] of LCP(S_i, S_k), from the lex neighbours of S_i; low defaults to i+1."""

    low = i + 1 if low is None else low
    if not i < low <= j:
        raise InvalidInputError(f"L(i,j) needs i<j, got ({i},{j}) from {low}")

    rank = view.rank(i)
    above = view.query((low, j), (rank + 1, None), "min", LEX_COORD)
    below = view.query((low, j), (None, rank - 1), "max", LEX_COORD)

    best = 0
    for point in (above, below):
        if point is not None:
            best = max(best, view.lcp(i, point.coords[0]))
    return best


def _first_max(view, i: int, j: int, low: Optional[int] = None, cap: Optional[int] = None) -> Tuple[int, int]:
    """Smallest k in [low..j] attaining min(L(i,j), cap), with that value."""

    low = i + 1 if low is None else low
    best = _max_lcp(view, i, j, low)
    if cap is not None:
        best = min(best, cap)

    fp = view.fingerprint(i, best)
    point = view.query((low, j), (fp.i, fp.j), "min", LINE_COORD)
    return point.coords[0], best


def _first_max_lcp(view, i: int, j: int) -> int:
    """I(i,j): smallest k in [i+1..j] attaining L(i,j)."""
    return _first_max(view, i, j)[0]


def _chain(view, i: int, last: int, low: Optional[int] = None,
           cap: Optional[int] = None) -> Iterator[Tuple[int, int]]:
    """
    Pairs (j, agreement) for the interesting pairs (i, j) with low <= j <= last,
    descending in j; agreement is LCP(S_i, S_j) capped at `cap` and strictly
    decreases along the chain.
    """

    j = last
    low = i + 1 if low is None else low
    while j >= low:
        j, agree = _first_max(view, i, j, low, cap)
        yield j, agree
        j -= 1


def compute_L(X: MatrixIndex, l: int, i: int, j: int) -> int:
    return _max_lcp(_RowTuple(X, l), i, j)


def compute_I(X: MatrixIndex, l: int, i: int, j: int) -> int:
    return _first_max_lcp(_RowTuple(X, l), i, j)


def interesting_triplets(M: Matrix, X: Optional[MatrixIndex] = None) -> Iterator[InterestingTriplet]:
    """All interesting triplets, by column, then top row, then descending bottom row."""

    if X is None:
        X = MatrixIndex(M)

    for l in range(1, M.m + 1):
        view = _RowTuple(X, l)
        for i in range(1, M.n):
            for j, _ in _chain(view, i, M.n):
                yield InterestingTriplet(u=i, d=j, l=l)


def interesting_pairs(strings: Sequence) -> List[Tuple[int, int]]:
    """All interesting pairs (i, j) of a tuple of strings, 1-based, sorted."""

    if len(strings) < 2:
        return []

    view = _StringTuple(strings)
    pairs = [(i, j) for i in range(1, view.size) for j, _ in _chain(view, i, view.size)]
    return sorted(pairs)


def count_interesting_triplets(M: Matrix, X: Optional[MatrixIndex] = None) -> List[int]:
    """Number of interesting triplets for every column l = 1..m."""

    counts = [0] * M.m
    for t in interesting_triplets(M, X):
        counts[t.l - 1] += 1
    return counts


def _right_column(X: MatrixIndex, u: int, d: int, l: int, low: int, high: int) -> Optional[int]:
    """Smallest r in [low..high] whose column agrees with column l on rows u..d."""

    if low > high:
        return None

    fp = X.col_fingerprint(u, l, d - u + 1)
    point = X.col_range_query(u, (low, high), (fp.i, fp.j), "min", LINE_COORD)

    return None if point is None else point.coords[0]


def verify_surrounding(X: MatrixIndex, t: InterestingTriplet, inner: InnerRectangle) -> Optional[int]:
    """A column r with (u, d, l, r) a surrounding matching frame, or None."""

    if t.u >= inner.u_r or t.d <= inner.d_r or t.l >= inner.l_r:
        return None

    agree = X.row_lcp(t.l, t.u, t.d)
    return _right_column(X, t.u, t.d, t.l, max(inner.r_r + 1, t.l + 1), min(t.l + agree - 1, X.m))


def surrounding_frame(X: MatrixIndex, W: Window) -> Optional[Frame]:
    """
    A matching frame of X's matrix inside window W that strictly contains the
    window's inner rectangle, in parent coordinates, or None.

    For a top row u and left column l only the chain of interesting bottom
    rows below the inner rectangle is verified, and only while the capped row
    agreement still reaches past the inner rectangle.
    """

    inner = W.inner
    bottom = W.top + W.height - 1
    right = W.left + W.width - 1

    last_u = min(W.top + inner.u_r - 2, bottom - 1)
    first_d = W.top + inner.d_r
    last_l = min(W.left + inner.l_r - 2, right - 1)
    first_r = W.left + inner.r_r

    if first_r > right:
        return None

    checked = 0
    for u in range(W.top, last_u + 1):

        low = max(u + 1, first_d)
        if low > bottom:
            continue

        for l in range(last_l, W.left - 1, -1):

            r_low = max(first_r, l + 1)
            need = r_low - l + 1

            chain = _chain(_RowTuple(X, l), u, bottom, low=low, cap=right - l + 1)
            d, agree = next(chain)
            if agree < need:
                if r_low == first_r:
                    # need grows by one per column to the left, the capped agreement by at most one
                    break
                continue

            for d, agree in itertools.chain([(d, agree)], chain):
                if agree < need:
                    break

                checked += 1
                r = _right_column(X, u, d, l, r_low, min(l + agree - 1, right))
                if r is not None:
                    logger.debug(f"surrounding frame in window ({W.top},{W.left}) after {checked} triplets")
                    return Frame(u=u, d=d, l=l, r=r)

    return None


def decide_surrounding(window_matrix: Matrix, inner: InnerRectangle) -> Optional[Frame]:
    """
    A matching frame of window_matrix strictly containing `inner`, or None.
    An empty inner rectangle is not masked.
    """

    n, m = window_matrix.n, window_matrix.m
    if inner.u_r < 1 or inner.l_r < 1 or inner.d_r > n or inner.r_r > m:
        raise InvalidInputError(f"Inner rectangle {tuple(inner)} does not fit a {n}x{m} window")

    if n < 2 or m < 2:
        return None

    X = MatrixIndex(_mask(window_matrix, inner))
    frame = surrounding_frame(X, Window(top=1, left=1, height=n, width=m, inner=inner))

    if frame is None:
        logger.debug(f"no frame around {tuple(inner)}")
    return frame


def _band_hits(ids: np.ndarray, origins: np.ndarray, near: Tuple[int, int], far: Tuple[int, int]) -> np.ndarray:
    """
    For every 1-based origin o: does a line of the near band share its id with
    a line of the far band? A band (offset, size) covers lines
    o+offset .. o+offset+size-1; ids are indexed by line - 1.
    """

    count = origins.size
    width = int(ids.max()) + 1
    groups = np.arange(count, dtype=np.int64)[:, None] * width

    near_lines = origins[:, None] - 1 + near[0] + np.arange(near[1])
    far_lines = origins[:, None] - 1 + far[0] + np.arange(far[1])

    near_keys = np.sort((groups + ids[near_lines]).ravel())
    far_keys = (groups + ids[far_lines]).ravel()

    slots = np.minimum(np.searchsorted(near_keys, far_keys), near_keys.size - 1)
    return (near_keys[slots] == far_keys).reshape(count, far[1]).any(axis=1)


def candidate_windows(grid: WindowGrid, row_ids: Callable, col_ids: Callable) -> List[Window]:
    """
    Windows of the grid that can hold a surrounding frame: some top-band row
    and bottom-band row agree on every column from l_r-1 to r_r+1, and some
    left-band column and right-band column agree on every row from u_r-1 to
    d_r+1. row_ids(c, t) / col_ids(r, t) are the fingerprint ids of every line
    from c (r) over t symbols.
    """

    inner, height, width = grid.inner, grid.height, grid.width
    if inner.u_r < 2 or inner.l_r < 2 or inner.d_r >= height or inner.r_r >= width:
        return []

    tops = np.asarray(grid.tops, dtype=np.int64)
    lefts = np.asarray(grid.lefts, dtype=np.int64)
    passed = np.ones((tops.size, lefts.size), dtype=bool)

    span = inner.r_r - inner.l_r + 3
    if span >= 1:
        for k, left in enumerate(grid.lefts):
            ids = row_ids(left + inner.l_r - 2, span)
            passed[:, k] &= _band_hits(ids, tops, (0, inner.u_r - 1), (inner.d_r, height - inner.d_r))

    span = inner.d_r - inner.u_r + 3
    if span >= 1:
        for k, top in enumerate(grid.tops):
            ids = col_ids(top + inner.u_r - 2, span)
            passed[k, :] &= _band_hits(ids, lefts, (0, inner.l_r - 1), (inner.r_r, width - inner.r_r))

    return [
        Window(top=int(tops[a]), left=int(lefts[b]), height=height, width=width, inner=inner)
        for a, b in zip(*np.nonzero(passed))
    ]


def class_bound(n: int, m: int, epsilon: float, h: int, w: int) -> int:
    """Largest perimeter of a frame of an n x m matrix in height class h and width class w."""

    a = growth(epsilon)
    return 2 * (min(ceil_power(a, h + 1) - 1, n - 1) + min(ceil_power(a, w + 1) - 1, m - 1))


def approx_max_frame(M: Matrix, epsilon: float, threads: int = 1, progress: bool = False) -> Optional[Frame]:
    """
    A matching frame with perimeter >= (1-eps) * optimum; None iff M has no
    matching frame.

    Class pairs are visited by decreasing class_bound and the search stops at
    the first pair that cannot beat the best frame so far. Every window is
    answered on one index of M after the band test.
    """

    epsilon = _check_epsilon(epsilon)

    n, m = M.n, M.m
    if n < 2 or m < 2:
        return None

    x = short_threshold(epsilon)
    logger.info(f"{n}x{m}, eps={epsilon}: exact search below {x}")

    X = MatrixIndex(M)
    best = short_frame_search(M, X, x, threads, progress)
    if x >= n - 1:
        return best

    XT = X.transposed()
    best = best_frame(best, transpose_frame(short_frame_search(XT.matrix, XT, x, threads, progress)))
    if x >= m - 1:
        return best

    pairs = sorted(
        ((class_bound(n, m, epsilon, h, w), h, w) for h in size_classes(n, epsilon) for w in size_classes(m, epsilon)),
        reverse=True,
    )

    row_ids = lru_cache(maxsize=None)(X.row_fingerprint_ids)
    col_ids = lru_cache(maxsize=None)(X.col_fingerprint_ids)

    total, solved = 0, 0
    for bound, h, w in tqdm(pairs, desc="Size classes", unit="class", disable=not progress):

        if best is not None and bound <= perimeter(best):
            logger.debug(f"classes ({h},{w}) onwards bounded by {bound}, best is {perimeter(best)}")
            break

        grid = window_grid(n, m, epsilon, h, w)
        windows = candidate_windows(grid, row_ids, col_ids)

        total += len(grid.tops) * len(grid.lefts)
        solved += len(windows)
        logger.debug(f"classes ({h},{w}): {len(windows)} of {len(grid.tops) * len(grid.lefts)} "
                     f"windows of {grid.height}x{grid.width} pass the band test")

        if windows:
            best = best_frame(best, run_tasks(lambda W: surrounding_frame(X, W), windows, threads=threads))

    logger.info(f"{solved} of {total} windows searched")

    if best is not None:
        logger.info(f"frame {tuple(best)} with perimeter {perimeter(best)}")
    return best


def has_matching_frame(M: Matrix, threads: int = 1) -> bool:
    """Existence of any matching frame, through the eps = 1/2 approximation."""
    return approx_max_frame(M, DECIDE_EPSILON, threads=threads) is not None
