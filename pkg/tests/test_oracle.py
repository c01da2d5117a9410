import pytest

from matchingframes import Frame, perimeter
from matchingframes.errors import OracleSizeError
from matchingframes.grid import is_matching
from matchingframes.io.generators import MatrixGen, little_endian_rows
from matchingframes.oracle import (
    brute_frames,
    brute_interesting_pairs,
    brute_max_frame,
    brute_surrounding,
)


def test_all_equal_frame_is_the_whole_matrix():
    assert brute_max_frame(MatrixGen.all_equal(4, 4)) == Frame(1, 4, 1, 4)


def test_alternating_best_perimeter(alternating):
    best = brute_max_frame(alternating)
    assert best == Frame(1, 3, 1, 3)
    assert perimeter(best) == 8


def test_no_frame_in_distinct_matrix():
    assert brute_max_frame(MatrixGen.distinct(3, 3)) is None
    assert list(brute_frames(MatrixGen.distinct(3, 3))) == []


def test_every_enumerated_frame_matches(alternating):
    frames = list(brute_frames(alternating))
    assert frames
    assert all(is_matching(alternating, f) for f in frames)
    # abab/baba: frames need rows and columns of equal parity
    assert all((f.d - f.u) % 2 == 0 and (f.r - f.l) % 2 == 0 for f in frames)


def test_size_guard():
    with pytest.raises(OracleSizeError):
        brute_max_frame(MatrixGen.all_equal(17, 17))
    with pytest.raises(OracleSizeError):
        brute_interesting_pairs(["a"] * 201)


def test_surrounding(alternating):
    assert brute_surrounding(alternating, (2, 2, 2, 2)) == Frame(1, 3, 1, 3)
    assert brute_surrounding(alternating, (1, 2, 2, 2)) is None
    assert brute_surrounding(MatrixGen.all_equal(5, 5), (3, 3, 3, 3)) == Frame(1, 5, 1, 5)


def test_interesting_pairs_of_little_endian_rows():
    pairs = brute_interesting_pairs(little_endian_rows(8))
    assert pairs == {(i, j) for i in range(1, 8) for j in range(i + 1, 9) if j - i in (1, 2, 4)}


def test_interesting_pairs_of_identical_strings():
    assert brute_interesting_pairs(["abc"] * 5) == {(1, 2), (2, 3), (3, 4), (4, 5)}
