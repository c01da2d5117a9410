from typing import Optional, Sequence, Union

import numpy as np

from matchingframes import Frame
from matchingframes.errors import InvalidInputError, BoundsError

Row = Union[str, bytes, Sequence[int]]


class Matrix:
    """
    An n x m 2d-string of non-negative integer symbol codes.

    Codes above `alphabet_max` are sentinels. Cells are stored in a read-only
    numpy array, so a Matrix can be shared freely once built.
    All public coordinates are 1-based.
    """

    __slots__ = ("_cells", "alphabet_max")

    def __init__(self, cells, alphabet_max: Optional[int] = None):

        array = np.array(cells, dtype=np.int64)

        if array.ndim != 2:
            raise InvalidInputError(f"A matrix needs 2 dimensions, got {array.ndim}")

        n, m = array.shape
        if n < 1 or m < 1:
            raise InvalidInputError(f"A matrix needs n>=1 and m>=1, got {n}x{m}")

        if array.min() < 0:
            raise InvalidInputError("Symbol codes must be non-negative")

        array.flags.writeable = False
        self._cells = array
        self.alphabet_max = int(array.max()) if alphabet_max is None else int(alphabet_max)

    @classmethod
    def from_rows(cls, rows: Sequence[Row], alphabet_max: Optional[int] = None) -> "Matrix":
        """
        Builds a matrix from equal-length rows. Strings map each character to
        its code point, bytes map each byte to itself.
        """

        if not rows:
            raise InvalidInputError("A matrix needs at least one row")

        codes = []
        for row in rows:
            if isinstance(row, str):
                codes.append([ord(ch) for ch in row])
            else:
                codes.append([int(c) for c in row])

        width = len(codes[0])
        if any(len(row) != width for row in codes):
            raise InvalidInputError("All rows of a matrix must have the same length")

        return cls(codes, alphabet_max=alphabet_max)

    @property
    def n(self) -> int:
        return self._cells.shape[0]

    @property
    def m(self) -> int:
        return self._cells.shape[1]

    @property
    def cells(self) -> np.ndarray:
        """Read-only 0-based view of the codes."""
        return self._cells

    def cell(self, i: int, j: int) -> int:
        self._check_row(i)
        self._check_column(j)
        return int(self._cells[i - 1, j - 1])

    def row(self, i: int, l: int = 1, r: Optional[int] = None) -> np.ndarray:
        """M[i][l..r]"""
        self._check_row(i)
        r = self.m if r is None else r
        return self._cells[i - 1, l - 1:r]

    def column(self, j: int, u: int = 1, d: Optional[int] = None) -> np.ndarray:
        """M[u..d][j]"""
        self._check_column(j)
        d = self.n if d is None else d
        return self._cells[u - 1:d, j - 1]

    def submatrix(self, top: int, left: int, height: int, width: int) -> "Matrix":
        """Copy of M[top..top+height-1][left..left+width-1]; keeps alphabet_max."""

        self._check_row(top)
        self._check_row(top + height - 1)
        self._check_column(left)
        self._check_column(left + width - 1)

        block = self._cells[top - 1:top - 1 + height, left - 1:left - 1 + width]
        return Matrix(block, alphabet_max=self.alphabet_max)

    def to_lists(self) -> list:
        return self._cells.tolist()

    def _check_row(self, i: int):
        if not (1 <= i <= self.n):
            raise BoundsError(f"Row {i} is outside [1..{self.n}]")

    def _check_column(self, j: int):
        if not (1 <= j <= self.m):
            raise BoundsError(f"Column {j} is outside [1..{self.m}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._cells.shape == other._cells.shape and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self):
        return hash((self._cells.shape, self._cells.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.n}x{self.m}, alphabet_max={self.alphabet_max})"


def is_matching(M: Matrix, f: Frame) -> bool:
    """
    True iff M[u][l..r] = M[d][l..r] and M[u..d][l] = M[u..d][r].
    """

    if not (1 <= f.u < f.d <= M.n and 1 <= f.l < f.r <= M.m):
        raise BoundsError(f"Frame {tuple(f)} does not fit a {M.n}x{M.m} matrix")

    if not np.array_equal(M.row(f.u, f.l, f.r), M.row(f.d, f.l, f.r)):
        return False

    return bool(np.array_equal(M.column(f.l, f.u, f.d), M.column(f.r, f.u, f.d)))


def transpose(M: Matrix) -> Matrix:
    """M^T, with (u,d,l,r) matching in M iff (l,r,u,d) matches in M^T."""
    return Matrix(M.cells.T, alphabet_max=M.alphabet_max)
