import threading

import pytest

from matchingframes.errors import BoundsError, InvalidInputError
from matchingframes.grid import Matrix
from matchingframes.matrix_index import LEX_COORD, LINE_COORD, MatrixIndex, build
from matchingframes.range_index import make_box, make_point, scan_best
from matchingframes.strings import naive_lcp

from conftest import random_matrix


def _rows(M):
    return M.to_lists()


def _columns(M):
    return M.cells.T.tolist()


def test_row_lex_order_small():
    X = build(Matrix.from_rows(["aba", "aab"]))
    assert X.lsa_rows(1) == [2, 1]
    assert X.row_rank(1, 2) == 1
    # from column 2: "ba" vs "ab"
    assert X.lsa_rows(2) == [2, 1]
    # reversed prefixes ending at column 2: "ba" vs "aa"
    assert X.rev_lsa_rows(2) == [2, 1]


def test_alternating_groups_equal_rows(alternating):
    X = MatrixIndex(alternating)
    assert X.lsa_rows(1) == [1, 3, 2, 4]
    assert X.lsa_columns(1) == [1, 3, 2, 4]
    assert X.lsa_rows(2) == [2, 4, 1, 3]


def test_lcp_examples(alternating, all_equal_8):
    X = MatrixIndex(alternating)
    assert X.row_lcp(1, 1, 3) == 4
    assert X.row_lcp(2, 1, 2) == 0
    assert X.rev_row_lcp(4, 1, 3) == 4
    assert X.col_lcp(1, 1, 3) == 4
    assert X.col_lcp(1, 1, 2) == 0

    Y = MatrixIndex(all_equal_8)
    assert Y.col_lcp(4, 1, 5) == 5
    assert Y.rev_col_lcp(4, 1, 5) == 4
    assert Y.row_lcp(8, 2, 2) == 1


def test_lcp_against_naive(rng):
    for n, m, alphabet in [(5, 7, 2), (8, 8, 2), (6, 4, 3), (1, 6, 2), (7, 1, 2)]:
        M = random_matrix(rng, n, m, alphabet)
        X = MatrixIndex(M)
        rows, columns = _rows(M), _columns(M)

        for l in range(1, m + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert X.row_lcp(l, i, j) == naive_lcp(rows[i - 1][l - 1:], rows[j - 1][l - 1:])
                    assert X.rev_row_lcp(l, i, j) == naive_lcp(rows[i - 1][:l][::-1], rows[j - 1][:l][::-1])

        for u in range(1, n + 1):
            for a in range(1, m + 1):
                for b in range(1, m + 1):
                    assert X.col_lcp(u, a, b) == naive_lcp(columns[a - 1][u - 1:], columns[b - 1][u - 1:])
                    assert X.rev_col_lcp(u, a, b) == naive_lcp(columns[a - 1][:u][::-1], columns[b - 1][:u][::-1])


def test_lex_orders_against_sorting(rng):
    for _ in range(6):
        n, m = (int(v) for v in rng.integers(2, 9, size=2))
        M = random_matrix(rng, n, m, 2)
        X = MatrixIndex(M)
        rows, columns = _rows(M), _columns(M)

        for l in range(1, m + 1):
            assert X.lsa_rows(l) == sorted(range(1, n + 1), key=lambda i: (rows[i - 1][l - 1:], i))
            assert X.rev_lsa_rows(l) == sorted(range(1, n + 1), key=lambda i: (rows[i - 1][:l][::-1], i))

        for u in range(1, n + 1):
            assert X.lsa_columns(u) == sorted(range(1, m + 1), key=lambda j: (columns[j - 1][u - 1:], j))
            assert X.rev_lsa_columns(u) == sorted(range(1, m + 1), key=lambda j: (columns[j - 1][:u][::-1], j))


def test_fingerprints(alternating):
    X = MatrixIndex(alternating)

    fp = X.row_fingerprint(1, 1, 4)
    assert fp.j - fp.i + 1 == 2
    assert sorted(X.lsa_rows(1)[fp.i - 1:fp.j]) == [1, 3]

    fp = X.col_fingerprint(2, 2, 3)
    assert sorted(X.lsa_columns(2)[fp.i - 1:fp.j]) == [2, 4]


def test_fingerprint_of_distinct_rows_is_a_singleton(distinct_6):
    X = MatrixIndex(distinct_6)
    for i in range(1, 7):
        fp = X.row_fingerprint(1, i, 1)
        assert fp.i == fp.j == X.row_rank(1, i)


def test_row_lcp_is_capped_by_the_row_end(all_equal_8):
    X = MatrixIndex(all_equal_8)
    for l in range(1, 9):
        assert X.row_lcp(l, 1, 8) == 8 - l + 1


def test_range_queries_against_a_scan(rng):
    for _ in range(3):
        M = random_matrix(rng, 20, 20, 2)
        X = MatrixIndex(M)

        for _ in range(200):
            l = int(rng.integers(1, 21))
            a, b = sorted(int(v) for v in rng.integers(1, 21, size=2))
            c, d = sorted(int(v) for v in rng.integers(1, 21, size=2))
            coordinate = int(rng.integers(0, 2))
            objective = "min" if rng.integers(0, 2) else "max"

            points = []
            for k in range(1, 21):
                coords = (k, X.row_rank(l, k))
                points.append(make_point(coords, coords[coordinate]))

            expected = scan_best(points, make_box((a, b), (c, d)), maximize=objective == "max")
            found = X.row_range_query(l, (a, b), (c, d), objective=objective, coordinate=coordinate)
            assert found == expected


def test_range_query_edge_cases(alternating):
    X = MatrixIndex(alternating)

    # the row itself is the only point of the box
    point = X.row_range_query(1, (3, 3))
    assert point.coords == (3, X.row_rank(1, 3))

    assert X.row_range_query(1, (3, 2)) is None
    assert X.col_range_query(1, (None, None), (5, None)) is None

    first = X.col_range_query(2, (2, None), objective="min", coordinate=LINE_COORD)
    assert first.coords[0] == 2

    smallest = X.col_range_query(1, (None, None), objective="min", coordinate=LEX_COORD)
    assert smallest.coords == (1, 1)


def test_range_query_validation(alternating):
    X = MatrixIndex(alternating)
    with pytest.raises(InvalidInputError):
        X.row_range_query(1, (1, 2), objective="median")
    with pytest.raises(InvalidInputError):
        X.row_range_query(1, (1, 2), coordinate=2)
    with pytest.raises(BoundsError):
        X.row_range_query(5, (1, 2))
    with pytest.raises(BoundsError):
        X.row_lcp(1, 0, 2)
    with pytest.raises(BoundsError):
        X.lsa_columns(5)


def test_range_structures_are_shared_between_threads(rng):
    X = MatrixIndex(random_matrix(rng, 12, 12, 3))
    results = []

    def worker():
        results.append(X.row_range_query(3, (1, 12), objective="max"))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    assert len(set(results)) == 1
    assert len(X._ranges) == 1


def test_sentinels_sit_above_a_declared_alphabet():
    M = Matrix([[1, 2], [1, 2]], alphabet_max=200)
    X = MatrixIndex(M)
    assert X.row_lcp(1, 1, 2) == 2
    assert X.col_lcp(1, 1, 2) == 0


def test_fingerprint_ids_match_fingerprints(rng):
    for n, m in ((1, 4), (7, 5), (12, 9)):
        M = random_matrix(rng, n, m, 2)
        X = MatrixIndex(M)

        for l in range(1, m + 1):
            lengths = list(range(0, m - l + 2))
            table = X.row_fingerprint_ids(l, lengths)
            for t in lengths:
                expected = [X.row_fingerprint(l, i, t).i for i in range(1, n + 1)]
                assert X.row_fingerprint_ids(l, t).tolist() == expected
                assert table[t].tolist() == expected

        for u in range(1, n + 1):
            for t in range(0, n - u + 2):
                expected = [X.col_fingerprint(u, j, t).i for j in range(1, m + 1)]
                assert X.col_fingerprint_ids(u, t).tolist() == expected


def test_fingerprint_ids_group_agreeing_lines(rng):
    M = random_matrix(rng, 10, 6, 2)
    X = MatrixIndex(M)
    rows = _rows(M)

    for l in range(1, 7):
        for t in range(0, 8 - l):
            ids = X.row_fingerprint_ids(l, t).tolist()
            for a in range(10):
                for b in range(10):
                    same = rows[a][l - 1:l - 1 + t] == rows[b][l - 1:l - 1 + t]
                    assert (ids[a] == ids[b]) == same


def test_fingerprint_ids_validation(alternating):
    X = MatrixIndex(alternating)
    with pytest.raises(InvalidInputError):
        X.row_fingerprint_ids(2, 4)
    with pytest.raises(BoundsError):
        X.col_fingerprint_ids(5, 1)


def test_transposed_index_swaps_rows_and_columns(rng):
    M = random_matrix(rng, 6, 9, 3)
    X = MatrixIndex(M)
    XT = X.transposed()
    fresh = MatrixIndex(XT.matrix)

    assert (XT.n, XT.m) == (9, 6)
    assert XT.matrix.to_lists() == _columns(M)

    for l in range(1, 7):
        assert XT.lsa_rows(l) == fresh.lsa_rows(l)
        for i in range(1, 10):
            for j in range(1, 10):
                assert XT.row_lcp(l, i, j) == fresh.row_lcp(l, i, j)
                assert XT.rev_row_lcp(l, i, j) == fresh.rev_row_lcp(l, i, j)

    for u in range(1, 10):
        assert XT.lsa_columns(u) == fresh.lsa_columns(u)
        assert XT.col_range_query(u, (2, 5)) == fresh.col_range_query(u, (2, 5))
