"""Exact maximum matching frame.

Frames of height at most x are found by pairing rows (short search); frames
of height at least x and no wider than tall are found by covering the matrix
with grids of (p, H, W) searches, each answered through a segment
compatibility structure (tall search). Frames taller than wide come from the
same searches on the transposed matrix.
"""
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from matchingframes import Frame, Position, best_frame, frame_order_key, perimeter, transpose_frame
from matchingframes.errors import InvalidInputError
from matchingframes.grid import Matrix
from matchingframes.matrix_index import MatrixIndex
from matchingframes.scds import HorizontalAlignedPair, Scds, VerticalAlignedPair

logger = logging.getLogger(__name__)

SearchResult = namedtuple(
    "SearchResult",
    [
        "frame",        # Frame or None
        "source",       # short | tall | transposed-short | transposed-tall, None without a frame
        "strategy",     # short-tall | short-only
    ]
)

SUPPORTED_STRATEGIES = {
                "short-tall",
                "short-only"
                }


def run_tasks(fn: Callable, tasks: List, threads: int = 1, progress: bool = False,
              desc: str = "Frames", unit: str = "task") -> Optional[Frame]:
    """
    Calls fn on every task and returns the best frame over all results.
    The reduction is order independent, so any thread count gives the same frame.
    """

    best = None
    with tqdm(total=len(tasks), desc=desc, unit=unit, disable=not progress) as pbar:
        if threads > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                for frame in executor.map(fn, tasks):
                    best = best_frame(best, frame)
                    pbar.update(1)
        else:
            for task in tasks:
                best = best_frame(best, fn(task))
                pbar.update(1)

    return best


def _equal_runs(equal: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """1-based first and last column of every run of True in `equal`."""

    edges = np.diff(np.concatenate(([0], equal.astype(np.int8), [0])))
    return np.flatnonzero(edges == 1) + 1, np.flatnonzero(edges == -1)


def maximal_equal_ranges(M: Matrix, u: int, d: int) -> List[Tuple[int, int]]:
    """Inclusion-maximal column ranges [a..b] with M[u][a..b] = M[d][a..b], left to right."""

    if not u < d:
        raise InvalidInputError(f"Row pair needs u<d, got ({u},{d})")

    starts, stops = _equal_runs(M.row(u) == M.row(d))
    return [(int(a), int(b)) for a, b in zip(starts, stops)]


def _widest_equal_span(equal: np.ndarray, ids: np.ndarray) -> Optional[Tuple[int, int]]:
    """
    Widest pair of columns l < r inside one run of `equal` with ids[l-1] == ids[r-1],
    leftmost l among the widest. Returns (l, r) or None.
    """

    columns = np.flatnonzero(equal) + 1
    if columns.size < 2:
        return None

    starts, _ = _equal_runs(equal)
    runs = np.searchsorted(starts, columns, side="right")
    keys = runs * (int(ids.max()) + 1) + ids[columns - 1]

    order = np.lexsort((columns, keys))
    keys, columns = keys[order], columns[order]

    boundary = keys[1:] != keys[:-1]
    lefts = columns[np.concatenate(([True], boundary))]
    rights = columns[np.concatenate((boundary, [True]))]

    spreads = rights - lefts
    widest = int(spreads.max())
    if widest == 0:
        return None

    left = int(lefts[spreads == widest].min())
    return left, left + widest


def _short_frames_from(M: Matrix, X: MatrixIndex, u: int, x: int) -> Optional[Frame]:
    """Best frame with top row u and height at most x."""

    bottoms = np.arange(u + 1, min(u + x, M.n) + 1)

    # ids[b][k-1] equal for two columns iff they agree on rows u..bottoms[b]
    ids = X.col_fingerprint_ids(u, bottoms - u + 1)
    equal = M.cells[bottoms - 1] == M.cells[u - 1]

    best = None
    for d, row_equal, row_ids in zip(bottoms.tolist(), equal, ids):
        span = _widest_equal_span(row_equal, row_ids)
        if span is not None:
            best = best_frame(best, Frame(u=u, d=d, l=span[0], r=span[1]))

    return best


def short_frame_search(M: Matrix, X: MatrixIndex, x: int, threads: int = 1, progress: bool = False) -> Optional[Frame]:
    """
    Maximum matching frame among frames with d-u <= x.
    x >= n is clamped to n-1.
    """

    if x < 1:
        raise InvalidInputError(f"Height bound must be >= 1, got {x}")

    if M.n < 2 or M.m < 2:
        return None

    x = min(x, M.n - 1)

    tops = list(range(1, M.n))
    return run_tasks(lambda u: _short_frames_from(M, X, u, x), tops,
                     threads=threads, progress=progress, desc="Short frames", unit="row")


def phw_frame_search(M: Matrix, X: MatrixIndex, p: Position, H: int, W: int) -> Optional[Frame]:
    """
    Maximum matching frame containing p with d-u in [ceil(H/2)..H] and
    r-l in [ceil(W/2)..W].
    """

    n, m = M.n, M.m
    i, j = p.i, p.j

    min_height = (H + 1) // 2
    min_width = (W + 1) // 2

    # column pairs (l, r) around j, extended up and down from row i
    vertical = []
    for l in range(max(1, j - W), j + 1):
        for r in range(max(l + min_width, j), min(l + W, m) + 1):
            if r == l:
                continue

            down = X.col_lcp(i, l, r)
            if down == 0:
                continue

            top = i - X.rev_col_lcp(i, l, r) + 1
            bottom = i + down - 1
            if top == bottom:
                continue

            vertical.append(VerticalAlignedPair(a1=top, a2=bottom, b1=l, b2=r))

    if not vertical:
        return None

    scds = Scds(vertical)

    # row pairs (u, d) around i, extended left and right from column j
    best = None
    for u in range(max(1, i - H), i + 1):
        for d in range(max(u + min_height, i), min(u + H, n) + 1):
            if d == u:
                continue

            right_run = X.row_lcp(j, u, d)
            if right_run == 0:
                continue

            left = j - X.rev_row_lcp(j, u, d) + 1
            right = j + right_run - 1
            if left == right:
                continue

            pair = scds.max_compatible(HorizontalAlignedPair(i1=u, i2=d, j1=left, j2=right))
            if pair is not None:
                best = best_frame(best, Frame(u=u, d=d, l=pair.b1, r=pair.b2))

    return best


def _grid(size: int, stride: int) -> List[int]:
    """Multiples of stride in [1..size], plus size itself."""

    points = list(range(stride, size + 1, stride))
    if not points or points[-1] != size:
        points.append(size)
    return points


def tall_frame_search(M: Matrix, X: MatrixIndex, x: int, threads: int = 1, progress: bool = False) -> Optional[Frame]:
    """
    Maximum matching frame with height >= x and height <= width.

    H and W run over x * 2^k (k >= 1) with H <= W; every such frame falls in
    some [ceil(H/2)..H] x [ceil(W/2)..W] class and covers a point of the grid
    with strides floor(H/2), floor(W/2).
    """

    if x < 1:
        raise InvalidInputError(f"Height threshold must be >= 1, got {x}")

    n, m = M.n, M.m
    if n < 2 or m < 2:
        return None

    tasks = []
    H = 2 * x
    while (H + 1) // 2 <= n - 1:
        W = H
        while (W + 1) // 2 <= m - 1:
            for i in _grid(n, H // 2):
                for j in _grid(m, W // 2):
                    tasks.append((Position(i=i, j=j), H, W))
            W *= 2
        H *= 2

    logger.debug(f"tall search x={x}: {len(tasks)} (p,H,W) searches")

    return run_tasks(lambda task: phw_frame_search(M, X, *task), tasks,
                     threads=threads, progress=progress, desc="Tall frames", unit="search")


def choose_strategy(n: int, m: int) -> str:
    """
    Predicted cost a*b*sqrt(b) for short+tall against a*b*a for short only,
    with a = min(n, m) and b = max(n, m).
    """

    a, b = min(n, m), max(n, m)
    return "short-only" if a <= math.sqrt(b) else "short-tall"


def max_matching_frame(M: Matrix, threads: int = 1, progress: bool = False,
                       strategy: Optional[str] = None) -> SearchResult:
    """
    Maximum-perimeter matching frame of M over all frames.

    Args:
        M: the matrix
        threads: worker threads for independent row pairs / grid points
        progress: show tqdm progress bars
        strategy: force "short-tall" or "short-only"; chosen by cost otherwise
    """

    n, m = M.n, M.m

    if strategy is None:
        strategy = choose_strategy(n, m)

    if strategy not in SUPPORTED_STRATEGIES:
        raise InvalidInputError(f"Unknown strategy: {strategy}, supported strategies include: {SUPPORTED_STRATEGIES}")

    if n < 2 or m < 2:
        return SearchResult(frame=None, source=None, strategy=strategy)

    X = MatrixIndex(M)
    XT = X.transposed()
    MT = XT.matrix

    found = []

    if strategy == "short-tall":
        x, xt = math.isqrt(m - 1) + 1, math.isqrt(n - 1) + 1     # ceil(sqrt(m)), ceil(sqrt(n))
        logger.info(f"{n}x{m}: short+tall with x={x} on M and x={xt} on M^T")

        found.append(("short", short_frame_search(M, X, x, threads, progress)))
        found.append(("tall", tall_frame_search(M, X, x, threads, progress)))
        found.append(("transposed-short", transpose_frame(short_frame_search(MT, XT, xt, threads, progress))))
        found.append(("transposed-tall", transpose_frame(tall_frame_search(MT, XT, xt, threads, progress))))
    else:
        x = min(n, m)
        logger.info(f"{n}x{m}: short only with x={x} on M and M^T")

        found.append(("short", short_frame_search(M, X, x, threads, progress)))
        found.append(("transposed-short", transpose_frame(short_frame_search(MT, XT, x, threads, progress))))

    candidates = [(frame_order_key(f), source, f) for source, f in found if f is not None]
    if not candidates:
        logger.info("no matching frame")
        return SearchResult(frame=None, source=None, strategy=strategy)

    _, source, frame = min(candidates, key=lambda c: c[0])
    logger.info(f"best frame {tuple(frame)} with perimeter {perimeter(frame)} from the {source} search")

    return SearchResult(frame=frame, source=source, strategy=strategy)
