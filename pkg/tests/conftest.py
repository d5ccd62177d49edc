import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mtamin.automata import Mta, Mwa  # noqa: E402
from mtamin.linalg import Matrix  # noqa: E402
from mtamin.trees import RankedAlphabet  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def a_count() -> Mta:
    """Counts a-leaves: sigma binary, a and b nullary."""
    al = RankedAlphabet([("sigma", 2), ("a", 0), ("b", 0)])
    return Mta(2, al, {
        "a": Matrix([[1, 1]]),
        "b": Matrix([[1, 0]]),
        "sigma": Matrix([[1, 0], [0, 1], [0, 1], [0, 0]]),
    }, Matrix([[0], [1]]))


@pytest.fixture
def w_count() -> Mwa:
    """Counts occurrences of the letter a."""
    return Mwa(2, ("a", "b"), {
        "a": Matrix([[1, 1], [0, 1]]),
        "b": Matrix.identity(2),
    }, Matrix([[1, 0]]), Matrix([[0], [1]]))


@pytest.fixture
def w_pow() -> Mwa:
    """Series 2^|w| presented with a redundant second state."""
    return Mwa(2, ("a",), {"a": Matrix([[2, 0], [0, 3]])}, Matrix([[1, 0]]), Matrix([[1], [0]]))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
