import pathlib

import numpy as np
import pytest
from hypothesis import settings

from minlab.alphabet import DNA, Sequence

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

DATA = pathlib.Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_sequence(rng, length, gap_rate=0.0):
    codes = rng.integers(0, 4, size=length)
    if gap_rate:
        codes[rng.random(length) < gap_rate] = -1
    return Sequence(codes, DNA)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
