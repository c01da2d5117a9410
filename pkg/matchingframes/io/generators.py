"""Deterministic instance generators.

Symbols are byte codes so every instance can be written as a raw file,
except `distinct` matrices larger than the printable byte pool.
"""
import logging
import math
import string
from typing import Dict, List, Optional

import numpy as np

from matchingframes import Frame, make_frame
from matchingframes.errors import InvalidInputError
from matchingframes.grid import Matrix

logger = logging.getLogger(__name__)

SYMBOLS = (string.ascii_lowercase + string.ascii_uppercase + string.digits).encode("ascii")

# printable ASCII without the space, then the high half of the byte range
_DISTINCT_POOL = list(range(33, 127)) + list(range(128, 256))


def little_endian_rows(n: int) -> List[str]:
    """
    The numbers 0..n-1 in binary, least significant bit first, each padded to
    max(1, ceil(log2 n)) bits.
    """

    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")

    bits = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    return [format(k, f"0{bits}b")[::-1] for k in range(n)]


class MatrixGen:
    """Static generators; every random one takes its own seed."""

    def __init__(self):
        pass

    @staticmethod
    def _check_size(n: int, m: int):
        if n < 1 or m < 1:
            raise InvalidInputError(f"Matrix size must be positive, got {n}x{m}")

    @staticmethod
    def random(n: int, m: int, alphabet: int, seed: int) -> Matrix:

        MatrixGen._check_size(n, m)
        if not (1 <= alphabet <= len(SYMBOLS)):
            raise InvalidInputError(f"alphabet must lie in [1..{len(SYMBOLS)}], got {alphabet}")

        rng = np.random.default_rng(seed)
        picks = rng.integers(0, alphabet, size=(n, m))

        return Matrix(np.frombuffer(SYMBOLS, dtype=np.uint8)[picks])

    @staticmethod
    def alternating(n: int, m: int) -> Matrix:
        """a where i+j is even, b elsewhere (1-based i, j)."""

        MatrixGen._check_size(n, m)
        parity = np.add.outer(np.arange(n), np.arange(m)) % 2
        return Matrix(np.where(parity == 0, ord("a"), ord("b")))

    @staticmethod
    def all_equal(n: int, m: int) -> Matrix:
        MatrixGen._check_size(n, m)
        return Matrix(np.full((n, m), ord("a"), dtype=np.int64))

    @staticmethod
    def distinct(n: int, m: int) -> Matrix:
        """Pairwise distinct symbols; codes past the byte pool need the tokens format."""

        MatrixGen._check_size(n, m)
        count = n * m
        pool = _DISTINCT_POOL[:count] + list(range(256, 256 + count - len(_DISTINCT_POOL)))
        return Matrix(np.array(pool[:count], dtype=np.int64).reshape(n, m))

    @staticmethod
    def planted(n: int, m: int, alphabet: int, seed: int, frame: Frame) -> Matrix:
        """A random matrix whose border of `frame` is made matching."""

        if frame.d > n or frame.r > m:
            raise InvalidInputError(f"Planted frame {tuple(frame)} does not fit a {n}x{m} matrix")

        cells = MatrixGen.random(n, m, alphabet, seed).cells.copy()
        u, d, l, r = frame.u - 1, frame.d - 1, frame.l - 1, frame.r - 1

        cells[d, l:r + 1] = cells[u, l:r + 1]
        cells[u:d + 1, r] = cells[u:d + 1, l]

        return Matrix(cells)

    @staticmethod
    def little_endian(n: int) -> Matrix:
        return Matrix.from_rows(little_endian_rows(n))

    @staticmethod
    def generate(config: Dict) -> Matrix:
        """Builds the matrix a validated generator config describes."""

        kind = config["kind"]
        n, m = config["n"], config["m"]

        if kind == "random":
            M = MatrixGen.random(n, m, config["alphabet"], config["seed"])
        elif kind == "alternating":
            M = MatrixGen.alternating(n, m)
        elif kind == "all-equal":
            M = MatrixGen.all_equal(n, m)
        elif kind == "distinct":
            M = MatrixGen.distinct(n, m)
        elif kind == "planted":
            M = MatrixGen.planted(n, m, config["alphabet"], config["seed"], config["frame"])
        elif kind == "little-endian":
            M = MatrixGen.little_endian(n)
        else:
            raise InvalidInputError(f"Unknown generator: {kind}")

        logger.debug(f"generated {kind} {M.n}x{M.m}")
        return M
