"""Brute force references for the solvers and data structures.

Every function here transcribes a definition directly and refuses inputs
above ORACLE_MAX_CELLS, so they can be exposed through the command line
without risking runaway enumerations.
"""
import logging
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from matchingframes import ORACLE_MAX_CELLS, Frame, best_frame
from matchingframes.errors import OracleSizeError
from matchingframes.grid import Matrix
from matchingframes.scds import HorizontalAlignedPair, VerticalAlignedPair, is_compatible
from matchingframes.strings.lcp import naive_lcp

logger = logging.getLogger(__name__)

# interesting pairs are O(n^3) by definition
ORACLE_MAX_STRINGS = 200


def _guard(M: Matrix):
    if M.n * M.m > ORACLE_MAX_CELLS:
        raise OracleSizeError(f"Brute force is limited to {ORACLE_MAX_CELLS} cells, got {M.n}x{M.m}")


def brute_frames(M: Matrix) -> Iterator[Frame]:
    """Every matching frame of M, by (u, d, l, r)."""

    _guard(M)
    rows = M.to_lists()
    n, m = M.n, M.m

    for u in range(n):
        for d in range(u + 1, n):
            top, bottom = rows[u], rows[d]
            for l in range(m):
                for r in range(l + 1, m):
                    if top[l:r + 1] != bottom[l:r + 1]:
                        break       # longer spans from l disagree as well
                    if all(rows[k][l] == rows[k][r] for k in range(u, d + 1)):
                        yield Frame(u=u + 1, d=d + 1, l=l + 1, r=r + 1)


def brute_max_frame(M: Matrix) -> Optional[Frame]:
    """Maximum perimeter matching frame; ties go to the smallest (u, l, d, r)."""
    return best_frame(*brute_frames(M))


def brute_surrounding(M: Matrix, inner) -> Optional[Frame]:
    """Best matching frame strictly containing the inner rectangle (u_r, d_r, l_r, r_r)."""

    u_r, d_r, l_r, r_r = inner
    found = [
        f for f in brute_frames(M)
        if f.u < u_r and f.d > d_r and f.l < l_r and f.r > r_r
    ]
    return best_frame(*found)


def brute_interesting_pairs(strings: Sequence) -> Set[Tuple[int, int]]:
    """Pairs (i, j), i < j, 1-based, with LCP(S_i, S_k) < LCP(S_i, S_j) for every i < k < j."""

    if len(strings) > ORACLE_MAX_STRINGS:
        raise OracleSizeError(f"Brute force is limited to {ORACLE_MAX_STRINGS} strings, got {len(strings)}")

    seqs = [list(s) for s in strings]
    pairs = set()
    for i in range(len(seqs)):
        lcps = [naive_lcp(seqs[i], s) for s in seqs]
        best = -1
        # scanning j upwards, (i, j) is interesting iff it beats every k in between
        for j in range(i + 1, len(seqs)):
            if lcps[j] > best:
                pairs.add((i + 1, j + 1))
            best = max(best, lcps[j])

    return pairs


def brute_max_compatible(pairs: Sequence[VerticalAlignedPair], h: HorizontalAlignedPair) -> Optional[VerticalAlignedPair]:
    """Scan for the compatible pair of maximum distance, ties by smallest coordinates."""

    compatible = [p for p in pairs if is_compatible(p, h)]
    if not compatible:
        return None
    return min(compatible, key=lambda p: (-(p.b2 - p.b1), tuple(p)))
