
class FrameFinderError(RuntimeError):
    """Base class of every error raised on purpose by matchingframes."""


class InvalidInputError(FrameFinderError, ValueError):
    """An argument or an input value is not acceptable."""


class BoundsError(FrameFinderError, IndexError):
    """A row, column or suffix index lies outside the structure."""


class DegenerateStrideError(InvalidInputError):
    """A window decomposition would advance by zero rows or columns."""


class MatrixParseError(InvalidInputError):
    """A matrix file is malformed."""


class OracleSizeError(InvalidInputError):
    """A brute force oracle was asked to solve an instance above its size guard."""


def exit_code_description(exit_code: int) -> str:

    """Returns the description of a command line exit code."""

    descriptions = {
        0: "A matching frame was found",
        1: "The matrix contains no matching frame",
        2: "The input was rejected",
    }
    return descriptions.get(exit_code, "Unknown exit code")


def check_index(name: str, value: int, low: int, high: int) -> int:
    """Raises BoundsError unless low <= value <= high."""

    if not (low <= value <= high):
        raise BoundsError(f"{name}={value} is outside [{low}..{high}]")
    return value
