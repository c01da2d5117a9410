__version__ = '1.0.0'

from collections import namedtuple
import logging
import os
from logging.handlers import RotatingFileHandler
from datetime import datetime, timezone
from typing import Optional

from matchingframes.errors import InvalidInputError

IS_DEBUG = False

Frame = namedtuple(
    "Frame",
    [
        "u",    # top row
        "d",    # bottom row
        "l",    # left column
        "r",    # right column
    ]
)

Position = namedtuple(
    "Position",
    [
        "i",    # row
        "j",    # column
    ]
)

def make_frame(u: int, d: int, l: int, r: int, n: Optional[int] = None, m: Optional[int] = None) -> Frame:
    """
    Build a Frame from 1-based coordinates.
    When n and m are given, the frame must also fit an n x m matrix.
    """

    u, d, l, r = int(u), int(d), int(l), int(r)

    if u < 1 or l < 1:
        raise InvalidInputError(f"Frame coordinates are 1-based, got ({u},{d},{l},{r})")

    if not (u < d and l < r):
        raise InvalidInputError(f"Frame needs u<d and l<r, got ({u},{d},{l},{r})")

    if n is not None and d > n:
        raise InvalidInputError(f"Frame ({u},{d},{l},{r}) exceeds {n} rows")

    if m is not None and r > m:
        raise InvalidInputError(f"Frame ({u},{d},{l},{r}) exceeds {m} columns")

    return Frame(u=u, d=d, l=l, r=r)

def make_frame_from_dict(data: dict) -> Frame:
    """Accepts the JSON shape {"u":..,"d":..,"l":..,"r":..}."""

    try:
        return make_frame(data["u"], data["d"], data["l"], data["r"])
    except KeyError as e:
        raise InvalidInputError(f"Frame dictionary is missing the {e} field")

def make_frame_from_str(text: str) -> Frame:
    """Parses 'u,d,l,r'."""

    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise InvalidInputError(f"Frame must be written as u,d,l,r, got '{text}'")

    try:
        return make_frame(*(int(p) for p in parts))
    except ValueError:
        raise InvalidInputError(f"Frame coordinates must be integers, got '{text}'")

def make_position(i: int, j: int) -> Position:

    i, j = int(i), int(j)
    if i < 1 or j < 1:
        raise InvalidInputError(f"Positions are 1-based, got ({i},{j})")

    return Position(i=i, j=j)

def perimeter(f: Frame) -> int:
    """Number of cells on the marginal rows and columns, 2*(d-u+r-l)."""
    return 2 * (f.d - f.u + f.r - f.l)

def frame_to_dict(f: Optional[Frame]) -> Optional[dict]:
    if f is None:
        return None
    return {"u": f.u, "d": f.d, "l": f.l, "r": f.r}

def transpose_frame(f: Optional[Frame]) -> Optional[Frame]:
    """Maps a frame of M^T to the same frame of M (and back)."""
    if f is None:
        return None
    return Frame(u=f.l, d=f.r, l=f.u, r=f.d)

def frame_order_key(f: Frame) -> tuple:
    """
    Sort key for picking the best of several frames: larger perimeter first,
    then the lexicographically smallest (u, l, d, r).
    """
    return (-perimeter(f), f.u, f.l, f.d, f.r)

def best_frame(*frames: Optional[Frame]) -> Optional[Frame]:

    candidates = [f for f in frames if f is not None]
    if not candidates:
        return None

    return min(candidates, key=frame_order_key)

SUPPORTED_MODES = {
                "exact",
                "approx",
                "decide",
                "oracle"
                }

SUPPORTED_FORMATS = {
                "raw",
                "tokens"
                }

SUPPORTED_GENERATORS = {
                "random",
                "alternating",
                "all-equal",
                "planted",
                "distinct",
                "little-endian"
                }

SOLVER_CONFIG_KEYS = {
            "mode",
            "epsilon",
            "threads",
            "format",
            "progress",
        }

GENERATOR_CONFIG_KEYS = {
            "kind",
            "n",
            "m",
            "alphabet",
            "seed",
            "frame",
        }

DEFAULT_EPSILON = 0.5
DECIDE_EPSILON = 0.5

# brute force oracles refuse anything larger (16 x 16)
ORACLE_MAX_CELLS = 256

EXIT_FOUND = 0
EXIT_NONE = 1
EXIT_INPUT_ERROR = 2

def log_date_suffix():
    return datetime.now(timezone.utc).strftime("%Y%m%d")

LOG_DATE = log_date_suffix()

def get_logger(task_name: str, logfile: Optional[str] = None, level=logging.INFO):
    """
        Returns a logger with one console handler and, when logfile is given,
        one rotating file handler for that path. Handlers already attached are
        kept, so repeated calls add nothing twice and only update levels.
    """
    logger_name = f"{task_name}"
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)

    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)-8s | %(name)s | [%(filename)s:%(lineno)s - %(funcName)10s() ] => %(message)s"
    )

    if logfile is not None:
        path = os.path.abspath(logfile)
        if not any(getattr(h, "baseFilename", None) == path for h in logger.handlers):
            file_handler = RotatingFileHandler(
                path,
                maxBytes=20 * 1024 * 1024,  # 20 MB
                backupCount=5,
                encoding="utf-8",
            )

            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

    # FileHandler subclasses StreamHandler
    if not any(type(h) is logging.StreamHandler for h in logger.handlers):
        console_handler = logging.StreamHandler()  # stderr, stdout carries results
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    for handler in logger.handlers:
        handler.setLevel(level)

    logger.propagate = False
    return logger

logging_level = logging.DEBUG if IS_DEBUG else logging.INFO
