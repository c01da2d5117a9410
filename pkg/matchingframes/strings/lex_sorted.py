from collections import namedtuple
from typing import Callable, Optional, Sequence, Union

import numpy as np

from matchingframes.errors import InvalidInputError, BoundsError
from matchingframes.strings.lcp import LcpStructure

Fingerprint = namedtuple(
    "Fingerprint",
    [
        "i",    # first lex position (1-based)
        "j",    # last lex position (1-based)
        "m",    # prefix length
    ]
)

StringLike = Union[str, bytes, Sequence[int]]


class LexSortedArray:
    """
    Lex order of a tuple of strings S_1..S_n together with LCP access.

    entries[p] is the id of the p-th smallest string, inverse[id] its position;
    ids and positions are 1-based at this interface.

    Args:
        entries: string ids in lex order
        lcp: callable returning LCP(S_a, S_b) for two ids
        length: callable returning |S_a| for an id
    """

    def __init__(self, entries: Sequence[int], lcp: Callable[[int, int], int], length: Callable[[int], int]):

        self.entries = np.asarray(entries, dtype=np.int64)
        size = self.entries.size

        self.inverse = np.zeros(size + 1, dtype=np.int64)    # slot 0 unused
        self.inverse[self.entries] = np.arange(1, size + 1, dtype=np.int64)

        self.lcp = lcp
        self.length = length

    @property
    def size(self) -> int:
        return int(self.entries.size)

    def string_at(self, position: int) -> int:
        """LSA[position]"""
        if not (1 <= position <= self.size):
            raise BoundsError(f"Lex position {position} is outside [1..{self.size}]")
        return int(self.entries[position - 1])

    def position(self, k: int) -> int:
        """ILSA[k]"""
        if not (1 <= k <= self.size):
            raise BoundsError(f"String id {k} is outside [1..{self.size}]")
        return int(self.inverse[k])

    def fingerprint(self, k: int, m: int) -> Fingerprint:
        """
        Lex range of every string sharing S_k[1..m].

        Two binary searches outward from k's own position; LCP against S_k
        never increases when moving away from it in lex order.
        """

        if m < 0 or m > self.length(k):
            raise InvalidInputError(f"Prefix length {m} exceeds |S_{k}| = {self.length(k)}")

        if m == 0:
            return Fingerprint(i=1, j=self.size, m=0)

        pos = self.position(k)
        entries = self.entries
        lcp = self.lcp

        # leftmost position in [1..pos] still sharing the prefix
        lo, hi = 1, pos
        while lo < hi:
            mid = (lo + hi) // 2
            if lcp(int(entries[mid - 1]), k) >= m:
                hi = mid
            else:
                lo = mid + 1
        first = lo

        # rightmost position in [pos..size] still sharing the prefix
        lo, hi = pos, self.size
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if lcp(int(entries[mid - 1]), k) >= m:
                lo = mid
            else:
                hi = mid - 1
        last = lo

        return Fingerprint(i=first, j=last, m=m)

    @classmethod
    def from_strings(cls, strings: Sequence[StringLike]) -> "LexSortedArray":
        """
        Lex-sorts a tuple of strings through one suffix array over
        S_1 $_1 S_2 $_2 ... S_n $_n with $_1 < ... < $_n below every symbol,
        so a proper prefix sorts first and equal strings keep id order.
        """

        if not strings:
            raise InvalidInputError("A lex-sorted array needs at least one string")

        codes = [_to_codes(s) for s in strings]
        count = len(codes)

        text = []
        starts = []
        for t, string in enumerate(codes):
            starts.append(len(text) + 1)
            text.extend(c + count for c in string)
            text.append(t)

        structure = LcpStructure(text)
        lengths = [len(s) for s in codes]

        start_to_id = {start: t + 1 for t, start in enumerate(starts)}
        entries = [start_to_id[p] for p in structure.suffix_array.order.tolist() if p in start_to_id]

        def lcp(a: int, b: int) -> int:
            return structure.query(starts[a - 1], starts[b - 1])

        def length(a: int) -> int:
            return lengths[a - 1]

        lsa = cls(entries, lcp=lcp, length=length)
        lsa.strings = codes
        return lsa


def fingerprint(lsa: LexSortedArray, k: int, m: int) -> Fingerprint:
    return lsa.fingerprint(k, m)


def _to_codes(string: StringLike) -> list:
    if isinstance(string, str):
        return [ord(ch) for ch in string]
    return [int(c) for c in string]
