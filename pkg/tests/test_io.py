import numpy as np
import pytest

from matchingframes import Frame, perimeter
from matchingframes.errors import InvalidInputError, MatrixParseError
from matchingframes.grid import Matrix, is_matching
from matchingframes.io import MatrixGen, format_matrix, little_endian_rows, parse_matrix, read_matrix, write_matrix
from matchingframes.io.matrix_file import format_raw, parse_raw, parse_tokens


def test_parse_raw():
    parsed = parse_raw(b"abab\nbaba\r\nabab\n")
    assert parsed.format == "raw"
    assert (parsed.matrix.n, parsed.matrix.m) == (3, 4)
    assert parsed.matrix.cell(2, 1) == ord("b")


def test_parse_raw_without_trailing_newline():
    assert parse_raw(b"ab\nba").matrix == parse_raw(b"ab\nba\n").matrix


@pytest.mark.parametrize("data", [b"", b"\n", b"abc\nab\n", b"ab\n\nab\n"])
def test_parse_raw_rejects_bad_files(data):
    with pytest.raises(MatrixParseError):
        parse_raw(data)


def test_parse_tokens():
    parsed = parse_tokens("2 3\nred blue red\n  blue red green \n")
    assert parsed.matrix.to_lists() == [[0, 1, 0], [1, 0, 2]]
    assert parsed.tokens == ["red", "blue", "green"]


@pytest.mark.parametrize("text", ["", "2\na b\n", "x y\n", "2 2\na b\n", "2 2\na b\nc\n", "0 3\n"])
def test_parse_tokens_rejects_bad_files(text):
    with pytest.raises(MatrixParseError):
        parse_tokens(text)


def test_parse_matrix_dispatches_on_format():
    assert parse_matrix(b"1 2\nx y\n", "tokens").matrix.to_lists() == [[0, 1]]
    with pytest.raises(InvalidInputError):
        parse_matrix(b"ab\n", "csv")
    with pytest.raises(MatrixParseError):
        parse_matrix(b"1 1\n\xff\n", "tokens")


def test_read_missing_file(tmp_path):
    with pytest.raises(MatrixParseError):
        read_matrix(str(tmp_path / "missing.txt"))


def test_raw_files_round_trip(tmp_path):
    for M in (MatrixGen.random(7, 5, 4, 3), MatrixGen.alternating(3, 6), MatrixGen.little_endian(16)):
        path = str(tmp_path / "m.txt")
        write_matrix(M, path, "raw")
        assert read_matrix(path, "raw").matrix == M


def test_tokens_keep_the_equality_pattern(tmp_path):
    M = MatrixGen.distinct(20, 20)
    path = str(tmp_path / "m.tok")
    write_matrix(M, path, "tokens")

    parsed = read_matrix(path, "tokens").matrix
    assert (parsed.n, parsed.m) == (20, 20)
    assert len(np.unique(parsed.cells)) == 400


def test_tokens_files_keep_their_token_table(tmp_path):
    source = tmp_path / "in.tok"
    source.write_text("2 3\nred blue red\nblue red green\n", encoding="utf-8")
    parsed = read_matrix(str(source), "tokens")

    path = str(tmp_path / "out.tok")
    write_matrix(parsed.matrix, path, "tokens", parsed.tokens)

    with open(path, encoding="utf-8") as f:
        assert f.read() == "2 3\nred blue red\nblue red green\n"
    assert read_matrix(path, "tokens") == parsed


def test_tokens_table_must_spell_every_code():
    M = Matrix([[0, 1], [2, 0]])
    assert format_matrix(M, "tokens", ["a", "b", "c"]) == b"2 2\na b\nc a\n"
    with pytest.raises(InvalidInputError):
        format_matrix(M, "tokens", ["a", "b"])


def test_raw_refuses_wide_codes_and_newlines():
    with pytest.raises(InvalidInputError):
        format_raw(MatrixGen.distinct(20, 20))
    with pytest.raises(InvalidInputError):
        format_matrix(Matrix([[ord("\n"), 97]]), "raw")


def test_all_equal_and_alternating():
    assert format_matrix(MatrixGen.all_equal(3, 3)) == b"aaa\naaa\naaa\n"
    assert format_matrix(MatrixGen.alternating(2, 3)) == b"aba\nbab\n"


def test_random_is_seeded():
    a = format_matrix(MatrixGen.random(10, 10, 3, 42))
    b = format_matrix(MatrixGen.random(10, 10, 3, 42))
    assert a == b
    assert set(a) <= set(b"abc\n")


def test_random_alphabet_bounds():
    with pytest.raises(InvalidInputError):
        MatrixGen.random(3, 3, 0, 1)
    with pytest.raises(InvalidInputError):
        MatrixGen.random(0, 3, 2, 1)


def test_planted_frame_matches():
    frame = Frame(2, 9, 3, 11)
    M = MatrixGen.planted(12, 12, 26, 5, frame)
    assert is_matching(M, frame)

    with pytest.raises(InvalidInputError):
        MatrixGen.planted(5, 5, 2, 0, Frame(1, 6, 1, 2))


def test_distinct_symbols_are_unique():
    M = MatrixGen.distinct(12, 12)
    assert len(np.unique(M.cells)) == 144
    assert M.cells.max() <= 255


def test_little_endian_rows():
    assert little_endian_rows(8) == ["000", "100", "010", "110", "001", "101", "011", "111"]
    assert little_endian_rows(1) == ["0"]
    assert little_endian_rows(5) == ["000", "100", "010", "110", "001"]
    with pytest.raises(InvalidInputError):
        little_endian_rows(0)


def test_generate_from_config():
    cfg = {"kind": "planted", "n": 6, "m": 7, "alphabet": 3, "seed": 1, "frame": Frame(1, 6, 2, 7)}
    M = MatrixGen.generate(cfg)
    assert (M.n, M.m) == (6, 7)
    assert perimeter(cfg["frame"]) == 20
    assert is_matching(M, cfg["frame"])

    M = MatrixGen.generate({"kind": "little-endian", "n": 4, "m": None, "alphabet": 2, "seed": 0, "frame": None})
    assert (M.n, M.m) == (4, 2)
