import random

import pytest

from transvec.gf2 import BitMatrix
from transvec.symplectic import SymplecticMatrix

WORKED_V = [
    "1001110010",
    "1100011110",
    "0110110010",
    "0001011110",
    "0100010001",
]
WORKED_A = [
    [0, 1, 0, 1, 0],
    [1, 0, 1, 1, 0],
    [0, 1, 0, 1, 1],
    [1, 1, 1, 0, 1],
    [0, 0, 1, 1, 0],
]
WORKED_B = [
    [1, 1, 1, 3, 4],
    [0, 1, 1, 2, 3],
    [0, 0, 1, 1, 2],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]
# edges of the directed graph on A_u, 1-based
WORKED_EDGES = {(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)}

CNOT_F = ["1100", "0100", "0010", "0011"]
CNOT_F_FIXED = ["1110", "0100", "0010", "0011"]
CNOT_FHAT = ["0000", "0010", "0100", "0000"]
CNOT_FHAT_FIXED = ["0000", "0010", "0110", "0000"]

# non-hyperbolic, dim Res = 3, but no product of 3 transvections
DEFECTIVE_F = ["0010", "0100", "1100", "0011"]


@pytest.fixture
def worked_V():
    return BitMatrix.from_strings(WORKED_V)


@pytest.fixture
def cnot_F():
    return SymplecticMatrix.from_strings(CNOT_F)


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
