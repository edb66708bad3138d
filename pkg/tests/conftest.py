from pathlib import Path

import pytest

from pcrfa import Alphabet, MultiHeadRFA, PartialFA
from pcrfa.textformat import load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
AB = Alphabet("ab")


def example_m() -> PartialFA:
    return PartialFA(
        AB,
        {"q0", "q1"},
        "q0",
        {"q1"},
        {("q0", "a"): "q1", ("q0", "b"): "q0", ("q1", "a"): "q1", ("q1", "b"): "q0"},
    )


def anb_two_head() -> MultiHeadRFA:
    return MultiHeadRFA(
        AB,
        2,
        {"q0", "qf", "dead"},
        "q0",
        {"qf"},
        {
            ("q0", ("a", "")): "q0",
            ("q0", ("b", "a")): "qf",
            ("q0", ("b", "b")): "qf",
            ("qf", ("a", "")): "dead",
            ("qf", ("b", "")): "dead",
        },
    )


def single_automaton_fixtures():
    return [load(p).body for p in sorted(FIXTURES.glob("*.txt")) if isinstance(load(p).body, PartialFA)]


@pytest.fixture
def m():
    return example_m()


@pytest.fixture
def two_head():
    return anb_two_head()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
