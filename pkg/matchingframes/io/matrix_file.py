"""Reading and writing matrix files.

raw:    one line per row, every byte one symbol (code = byte value)
tokens: header "n m", then n lines of m whitespace separated tokens; tokens
        get codes 0, 1, ... in order of first occurrence
"""
from collections import namedtuple
import logging
import sys
from typing import List, Optional

from matchingframes import SUPPORTED_FORMATS
from matchingframes.errors import InvalidInputError, MatrixParseError
from matchingframes.grid import Matrix

logger = logging.getLogger(__name__)

MatrixFile = namedtuple(
    "MatrixFile",
    [
        "format",   # raw | tokens
        "matrix",
        "tokens",   # code -> token for the tokens format, None for raw
    ]
)

# bytes a raw file cannot hold as symbols
_RAW_FORBIDDEN = {ord("\n"), ord("\r")}


def _check_format(fmt: str) -> str:
    if fmt not in SUPPORTED_FORMATS:
        raise InvalidInputError(f"Unknown matrix format: {fmt}, supported formats include: {SUPPORTED_FORMATS}")
    return fmt


def parse_raw(data: bytes) -> MatrixFile:

    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()     # trailing newline
    lines = [line[:-1] if line.endswith(b"\r") else line for line in lines]

    if not lines or not lines[0]:
        raise MatrixParseError("Empty matrix file")

    width = len(lines[0])
    for number, line in enumerate(lines, start=1):
        if len(line) != width:
            raise MatrixParseError(f"Ragged rows: line {number} has {len(line)} symbols, line 1 has {width}")

    return MatrixFile(format="raw", matrix=Matrix([list(line) for line in lines]), tokens=None)


def parse_tokens(text: str) -> MatrixFile:

    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MatrixParseError("Empty matrix file")

    header = lines[0].split()
    try:
        n, m = (int(v) for v in header)
    except ValueError:
        raise MatrixParseError(f"Bad header '{lines[0]}', expected 'n m'")

    if n < 1 or m < 1:
        raise MatrixParseError(f"Header needs n>=1 and m>=1, got {n} {m}")

    body = lines[1:]
    if len(body) != n:
        raise MatrixParseError(f"Header announces {n} rows, found {len(body)}")

    codes = {}
    rows = []
    for number, line in enumerate(body, start=1):
        tokens = line.split()
        if len(tokens) != m:
            raise MatrixParseError(f"Row {number} has {len(tokens)} tokens, expected {m}")
        rows.append([codes.setdefault(tok, len(codes)) for tok in tokens])

    symbols = [None] * len(codes)
    for tok, code in codes.items():
        symbols[code] = tok

    return MatrixFile(format="tokens", matrix=Matrix(rows), tokens=symbols)


def parse_matrix(data: bytes, fmt: str = "raw") -> MatrixFile:

    _check_format(fmt)
    if fmt == "raw":
        return parse_raw(data)

    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MatrixParseError(f"Tokens files must be UTF-8: {e}")

    return parse_tokens(text)


def read_matrix(path: str, fmt: str = "raw") -> MatrixFile:
    """Reads a matrix file; "-" reads standard input."""

    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as f:
                data = f.read()
        except OSError as e:
            raise MatrixParseError(f"Cannot read {path}: {e}")

    matrix_file = parse_matrix(data, fmt)
    logger.debug(f"read {matrix_file.matrix.n}x{matrix_file.matrix.m} matrix from {path} ({fmt})")

    return matrix_file


def format_raw(M: Matrix) -> bytes:

    if int(M.cells.max()) > 255 or any(c in _RAW_FORBIDDEN for c in set(M.cells.ravel().tolist())):
        raise InvalidInputError("The matrix has symbols that cannot be written as raw bytes, use the tokens format")

    return b"".join(bytes(row) + b"\n" for row in M.to_lists())


def format_tokens(M: Matrix, tokens: Optional[List[str]] = None) -> bytes:
    """tokens[code] spells every code; without a table codes are written as numbers."""

    if tokens is not None and int(M.cells.max()) >= len(tokens):
        raise InvalidInputError(f"The token table has {len(tokens)} entries, the matrix uses code {int(M.cells.max())}")

    lines = [f"{M.n} {M.m}"]
    for row in M.to_lists():
        lines.append(" ".join(str(c) if tokens is None else tokens[c] for c in row))

    return ("\n".join(lines) + "\n").encode("utf-8")


def format_matrix(M: Matrix, fmt: str = "raw", tokens: Optional[List[str]] = None) -> bytes:
    """tokens only applies to the tokens format."""
    _check_format(fmt)
    return format_raw(M) if fmt == "raw" else format_tokens(M, tokens)


def write_matrix(M: Matrix, path: str, fmt: str = "raw", tokens: Optional[List[str]] = None):
    """Writes a matrix file; "-" writes to standard output."""

    data = format_matrix(M, fmt, tokens)
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return

    with open(path, "wb") as f:
        f.write(data)
