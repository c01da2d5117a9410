"""Suffix array construction over integer alphabets.

Two constructions are available:

* induced sorting (SA-IS), linear time, used when the largest code is small
  compared to the text (byte-like alphabets, sentinel blocks);
* prefix doubling on numpy arrays, O(n log^2 n), used for wide alphabets where
  the SA-IS bucket arrays would dwarf the text.

Both order a proper prefix before any longer string sharing it (the end of
the text sorts below every symbol).
"""
from collections import namedtuple
import logging
from typing import List, Sequence

import numpy as np

from matchingframes.errors import InvalidInputError

logger = logging.getLogger(__name__)

SuffixArray = namedtuple(
    "SuffixArray",
    [
        "text_length",
        "order",        # 1-based suffix starts in lex order (numpy int64)
    ]
)

# SA-IS bucket arrays stay linear in the text while the alphabet is below this
SAIS_ALPHABET_SLACK = 256

SUPPORTED_SA_METHODS = {
                "auto",
                "sais",
                "doubling"
                }


def build_suffix_array(text: Sequence[int], method: str = "auto") -> SuffixArray:
    """
    Sorted suffix starts of `text`.

    Args:
        text: non-empty sequence of non-negative integer codes
        method: "auto", "sais" or "doubling"
    Raises:
        InvalidInputError: empty text, negative codes or unknown method
    """

    codes = np.asarray(text, dtype=np.int64)

    if codes.ndim != 1 or codes.size == 0:
        raise InvalidInputError("Suffix arrays need a non-empty 1-dimensional text")

    if codes.min() < 0:
        raise InvalidInputError("Symbol codes must be non-negative")

    if method not in SUPPORTED_SA_METHODS:
        raise InvalidInputError(f"Unknown suffix array method: {method}, supported methods include: {SUPPORTED_SA_METHODS}")

    upper = int(codes.max())

    if method == "auto":
        method = "sais" if upper <= 2 * codes.size + SAIS_ALPHABET_SLACK else "doubling"

    if method == "sais":
        order = np.asarray(sa_is(codes.tolist(), upper), dtype=np.int64)
    else:
        order = prefix_doubling(codes)

    logger.debug(f"suffix array of {codes.size} symbols built with {method}")

    return SuffixArray(text_length=int(codes.size), order=order + 1)


def sa_is(s: List[int], upper: int) -> List[int]:
    """
    Induced sorting over codes in [0..upper]. Returns 0-based suffix starts.
    """

    n = len(s)
    if n == 0:
        return []
    if n == 1:
        return [0]
    if n == 2:
        return [0, 1] if s[0] < s[1] else [1, 0]

    sa = [0] * n

    # True = S-type; the last suffix is L-type
    ls = [False] * n
    for i in range(n - 2, -1, -1):
        ls[i] = ls[i + 1] if s[i] == s[i + 1] else s[i] < s[i + 1]

    # sum_l[c] = first slot of bucket c, sum_s[c] = first S slot of bucket c
    sum_l = [0] * (upper + 1)
    sum_s = [0] * (upper + 1)
    for i in range(n):
        if not ls[i]:
            sum_s[s[i]] += 1
        else:
            sum_l[s[i] + 1] += 1

    for c in range(upper + 1):
        sum_s[c] += sum_l[c]
        if c < upper:
            sum_l[c + 1] += sum_s[c]

    def induce(lms: List[int]):
        for i in range(n):
            sa[i] = -1

        buf = sum_s[:]
        for d in lms:
            if d == n:
                continue
            sa[buf[s[d]]] = d
            buf[s[d]] += 1

        buf = sum_l[:]
        sa[buf[s[n - 1]]] = n - 1
        buf[s[n - 1]] += 1
        for i in range(n):
            v = sa[i]
            if v >= 1 and not ls[v - 1]:
                sa[buf[s[v - 1]]] = v - 1
                buf[s[v - 1]] += 1

        buf = sum_l[:]
        for i in range(n - 1, -1, -1):
            v = sa[i]
            if v >= 1 and ls[v - 1]:
                buf[s[v - 1] + 1] -= 1
                sa[buf[s[v - 1] + 1]] = v - 1

    lms_map = [-1] * (n + 1)
    lms = []
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms_map[i] = len(lms)
            lms.append(i)

    induce(lms)

    m = len(lms)
    if m:
        sorted_lms = [v for v in sa if lms_map[v] != -1]

        # name LMS substrings, equal substrings get equal names
        rec_s = [0] * m
        rec_upper = 0
        rec_s[lms_map[sorted_lms[0]]] = 0
        for k in range(1, m):
            left, right = sorted_lms[k - 1], sorted_lms[k]
            end_l = lms[lms_map[left] + 1] if lms_map[left] + 1 < m else n
            end_r = lms[lms_map[right] + 1] if lms_map[right] + 1 < m else n

            same = True
            if end_l - left != end_r - right:
                same = False
            else:
                while left < end_l:
                    if s[left] != s[right]:
                        break
                    left += 1
                    right += 1
                if left == n or s[left] != s[right]:
                    same = False

            if not same:
                rec_upper += 1
            rec_s[lms_map[sorted_lms[k]]] = rec_upper

        rec_sa = sa_is(rec_s, rec_upper)

        for k in range(m):
            sorted_lms[k] = lms[rec_sa[k]]
        induce(sorted_lms)

    return sa


def prefix_doubling(codes: np.ndarray) -> np.ndarray:
    """
    Manber-Myers style doubling with numpy lexsort. Returns 0-based starts.
    """

    n = codes.size

    # dense ranks from 1, 0 means "past the end"
    _, inverse = np.unique(codes, return_inverse=True)
    rank = inverse.reshape(-1).astype(np.int64) + 1

    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            second[:n - k] = rank[k:]

        sa = np.lexsort((second, rank))

        changed = (np.diff(rank[sa]) != 0) | (np.diff(second[sa]) != 0)
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([1], 1 + np.cumsum(changed)))
        rank = new_rank

        if rank[sa[-1]] == n or k >= n:
            return sa.astype(np.int64)

        k *= 2


def naive_suffix_array(text: Sequence[int]) -> List[int]:
    """Reference sort of all suffixes, 1-based. Quadratic; for tests."""

    seq = list(text)
    return [i + 1 for i in sorted(range(len(seq)), key=lambda i: seq[i:])]
