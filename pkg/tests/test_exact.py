import pytest

from matchingframes import Frame, Position, best_frame, perimeter, transpose_frame
from matchingframes.errors import InvalidInputError
from matchingframes.exact import (
    choose_strategy,
    max_matching_frame,
    maximal_equal_ranges,
    phw_frame_search,
    run_tasks,
    short_frame_search,
    tall_frame_search,
)
from matchingframes.grid import Matrix, is_matching, transpose
from matchingframes.io.generators import MatrixGen
from matchingframes.matrix_index import MatrixIndex
from matchingframes.oracle import brute_frames, brute_max_frame

from conftest import random_matrix


def _per(frame):
    return 0 if frame is None else perimeter(frame)


def _brute_phw(frames, p, H, W):
    found = [
        f for f in frames
        if f.u <= p.i <= f.d and f.l <= p.j <= f.r
        and (H + 1) // 2 <= f.d - f.u <= H
        and (W + 1) // 2 <= f.r - f.l <= W
    ]
    return best_frame(*found)


def test_maximal_equal_ranges():
    M = Matrix.from_rows(["aabba", "abbba"])
    assert maximal_equal_ranges(M, 1, 2) == [(1, 1), (3, 5)]

    same = Matrix.from_rows(["abc", "abc"])
    assert maximal_equal_ranges(same, 1, 2) == [(1, 3)]


def test_maximal_equal_ranges_alternating(alternating):
    assert maximal_equal_ranges(alternating, 1, 3) == [(1, 4)]
    assert maximal_equal_ranges(alternating, 1, 2) == []
    with pytest.raises(InvalidInputError):
        maximal_equal_ranges(alternating, 2, 2)


def test_short_search_examples(alternating, all_equal_8, distinct_6):
    assert _per(short_frame_search(alternating, MatrixIndex(alternating), 2)) == 8

    X = MatrixIndex(all_equal_8)
    assert _per(short_frame_search(all_equal_8, X, 7)) == 28
    assert _per(short_frame_search(all_equal_8, X, 3)) == 2 * (3 + 7)
    # clamped to n-1
    assert _per(short_frame_search(all_equal_8, X, 50)) == 28

    assert short_frame_search(distinct_6, MatrixIndex(distinct_6), 5) is None

    with pytest.raises(InvalidInputError):
        short_frame_search(alternating, MatrixIndex(alternating), 0)


def test_short_search_is_bounded_by_height(rng):
    for _ in range(10):
        M = random_matrix(rng, 7, 9, 2)
        X = MatrixIndex(M)
        for x in range(1, 7):
            expected = best_frame(*(f for f in brute_frames(M) if f.d - f.u <= x))
            found = short_frame_search(M, X, x)
            assert _per(found) == _per(expected)
            if found is not None:
                assert is_matching(M, found)
                assert found.d - found.u <= x


def test_phw_examples(alternating, all_equal_8, distinct_6):
    found = phw_frame_search(all_equal_8, MatrixIndex(all_equal_8), Position(4, 4), 4, 4)
    assert _per(found) == 16

    found = phw_frame_search(alternating, MatrixIndex(alternating), Position(2, 2), 2, 2)
    assert found == Frame(1, 3, 1, 3)

    assert phw_frame_search(distinct_6, MatrixIndex(distinct_6), Position(3, 3), 4, 4) is None


def test_phw_against_brute(rng):
    for _ in range(2):
        M = random_matrix(rng, 10, 10, 2)
        X = MatrixIndex(M)
        frames = list(brute_frames(M))

        for _ in range(15):
            p = Position(int(rng.integers(1, 11)), int(rng.integers(1, 11)))
            for H in (2, 4, 8):
                for W in (2, 4, 8):
                    found = phw_frame_search(M, X, p, H, W)
                    expected = _brute_phw(frames, p, H, W)
                    assert _per(found) == _per(expected)

                    if found is not None:
                        assert is_matching(M, found)
                        assert found.u <= p.i <= found.d and found.l <= p.j <= found.r


def test_tall_search_examples(alternating, distinct_6):
    M = MatrixGen.all_equal(12, 12)
    assert _per(tall_frame_search(M, MatrixIndex(M), 2)) == 44

    assert tall_frame_search(alternating, MatrixIndex(alternating), 3) is None
    assert tall_frame_search(distinct_6, MatrixIndex(distinct_6), 2) is None

    with pytest.raises(InvalidInputError):
        tall_frame_search(alternating, MatrixIndex(alternating), 0)


def test_short_and_tall_cover_every_frame(rng):
    for _ in range(4):
        M = random_matrix(rng, 6, 7, 2)
        MT = transpose(M)
        X, XT = MatrixIndex(M), MatrixIndex(MT)
        expected = _per(brute_max_frame(M))

        for x in range(1, M.n):
            found = best_frame(
                short_frame_search(M, X, x),
                tall_frame_search(M, X, x),
                transpose_frame(short_frame_search(MT, XT, x)),
                transpose_frame(tall_frame_search(MT, XT, x)),
            )
            assert _per(found) == expected


def test_choose_strategy():
    assert choose_strategy(4, 100) == "short-only"
    assert choose_strategy(100, 4) == "short-only"
    assert choose_strategy(50, 50) == "short-tall"
    assert choose_strategy(1, 1) == "short-only"


def test_fixture_frame(fixture_matrix):
    result = max_matching_frame(fixture_matrix)
    assert result.frame == Frame(2, 6, 3, 9)
    assert perimeter(result.frame) == 20


def test_all_equal_takes_the_whole_matrix():
    result = max_matching_frame(MatrixGen.all_equal(10, 7))
    assert result.frame == Frame(1, 10, 1, 7)
    assert perimeter(result.frame) == 30
    assert result.source is not None


def test_no_frame():
    result = max_matching_frame(Matrix.from_rows(["ab", "cd"]))
    assert result.frame is None
    assert result.source is None

    assert max_matching_frame(Matrix.from_rows(["aaaaa"])).frame is None
    assert max_matching_frame(MatrixGen.distinct(5, 5)).frame is None


def test_unknown_strategy(alternating):
    with pytest.raises(InvalidInputError):
        max_matching_frame(alternating, strategy="tall-only")


def test_matches_oracle(rng):
    for _ in range(40):
        n, m = (int(v) for v in rng.integers(2, 9, size=2))
        M = random_matrix(rng, n, m, int(rng.choice([2, 3])))

        result = max_matching_frame(M)
        assert _per(result.frame) == _per(brute_max_frame(M))
        if result.frame is not None:
            assert is_matching(M, result.frame)


@pytest.mark.slow
def test_matches_oracle_large_sample(rng):
    for _ in range(1000):
        n, m = (int(v) for v in rng.integers(2, 13, size=2))
        M = random_matrix(rng, n, m, int(rng.choice([2, 3])))
        assert _per(max_matching_frame(M).frame) == _per(brute_max_frame(M))


def test_strategies_agree(rng):
    for _ in range(10):
        M = random_matrix(rng, 7, 9, 2)
        tall = max_matching_frame(M, strategy="short-tall")
        short = max_matching_frame(M, strategy="short-only")
        assert _per(tall.frame) == _per(short.frame)


def test_thread_count_does_not_change_the_frame(rng):
    M = random_matrix(rng, 12, 12, 2)
    assert max_matching_frame(M, threads=1).frame == max_matching_frame(M, threads=4).frame


def test_run_tasks_reduces_to_the_best_frame():
    frames = [None, Frame(1, 2, 1, 2), Frame(1, 3, 1, 3), None]
    assert run_tasks(lambda f: f, frames) == Frame(1, 3, 1, 3)
    assert run_tasks(lambda f: f, frames, threads=3) == Frame(1, 3, 1, 3)
    assert run_tasks(lambda f: f, []) is None
