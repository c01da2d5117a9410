import logging
import os

import numpy as np
import pytest

from matchingframes.grid import Matrix
from matchingframes.io.generators import MatrixGen
from matchingframes.io.matrix_file import read_matrix

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slow scaling and large randomized suites")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return

    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def _drop_handlers(name: str):
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


@pytest.fixture(autouse=True)
def reset_cli_logger():
    """Every test starts and ends with a bare package logger."""
    _drop_handlers("matchingframes")
    yield
    _drop_handlers("matchingframes")


def random_matrix(rng: np.random.Generator, n: int, m: int, alphabet: int) -> Matrix:
    return Matrix(rng.integers(0, alphabet, size=(n, m)) + ord("a"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def alternating():
    # abab / baba / abab / baba
    return MatrixGen.alternating(4, 4)


@pytest.fixture
def all_equal_8():
    return MatrixGen.all_equal(8, 8)


@pytest.fixture
def distinct_6():
    return MatrixGen.distinct(6, 6)


@pytest.fixture
def fixture_path():
    return os.path.join(FIXTURES, "frame_2_6_3_9.txt")


@pytest.fixture
def fixture_matrix(fixture_path):
    return read_matrix(fixture_path, "raw").matrix
