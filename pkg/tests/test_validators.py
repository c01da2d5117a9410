import pytest

from matchingframes import Frame
from matchingframes.errors import InvalidInputError
from matchingframes.validators import GeneratorConfigValidators, SolverConfigValidators


def test_solver_defaults():
    cfg = SolverConfigValidators.parse_solver_configs({"mode": "exact"})
    assert cfg == {"mode": "exact", "epsilon": None, "threads": 1, "format": "raw", "progress": False}


def test_approx_epsilon():
    assert SolverConfigValidators.parse_solver_configs({"mode": "approx"})["epsilon"] == 0.5
    assert SolverConfigValidators.parse_solver_configs({"mode": "APPROX", "epsilon": "0.25"})["epsilon"] == 0.25


def test_decide_uses_a_fixed_epsilon():
    cfg = SolverConfigValidators.parse_solver_configs({"mode": "decide", "epsilon": 0.1})
    assert cfg["epsilon"] == 0.5


@pytest.mark.parametrize(
    "raw",
    [
        {},
        {"mode": "fastest"},
        {"mode": "exact", "colour": "red"},
        {"mode": "approx", "epsilon": 1.0},
        {"mode": "approx", "epsilon": "tiny"},
        {"mode": "exact", "threads": 0},
        {"mode": "exact", "threads": True},
        {"mode": "exact", "threads": 2.5},
        {"mode": "exact", "format": "csv"},
        {"mode": "exact", "progress": "yes"},
    ],
)
def test_solver_rejects(raw):
    with pytest.raises(InvalidInputError):
        SolverConfigValidators.parse_solver_configs(raw)


def test_generator_defaults():
    cfg = GeneratorConfigValidators.parse_generator_configs({"kind": "random", "n": 4, "m": 5})
    assert cfg == {"kind": "random", "n": 4, "m": 5, "alphabet": 2, "seed": 0, "frame": None}


def test_little_endian_needs_no_width():
    cfg = GeneratorConfigValidators.parse_generator_configs({"kind": "little-endian", "n": 16})
    assert cfg["m"] is None


@pytest.mark.parametrize("frame", ["2,5,2,6", {"u": 2, "d": 5, "l": 2, "r": 6}, [2, 5, 2, 6], Frame(2, 5, 2, 6)])
def test_planted_frame_forms(frame):
    cfg = GeneratorConfigValidators.parse_generator_configs(
        {"kind": "planted", "n": 10, "m": 10, "alphabet": 3, "seed": 7, "frame": frame}
    )
    assert cfg["frame"] == Frame(2, 5, 2, 6)


@pytest.mark.parametrize(
    "raw",
    [
        {"kind": "random"},
        {"kind": "random", "n": 3},
        {"kind": "spiral", "n": 3, "m": 3},
        {"kind": "random", "n": 0, "m": 3},
        {"kind": "random", "n": 3, "m": 3, "alphabet": 0},
        {"kind": "random", "n": 3, "m": 3, "seed": "x"},
        {"kind": "random", "n": 3, "m": 3, "size": 9},
        {"kind": "planted", "n": 5, "m": 5},
        {"kind": "planted", "n": 5, "m": 5, "frame": "1,6,1,5"},
        {"kind": "planted", "n": 5, "m": 5, "frame": 17},
    ],
)
def test_generator_rejects(raw):
    with pytest.raises(InvalidInputError):
        GeneratorConfigValidators.parse_generator_configs(raw)
