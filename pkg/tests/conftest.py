"""Shared fixtures plus a terminal summary listing acceptance criteria."""

import numpy as np
import pytest

from quasikit.core import Quasigroup

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::" not in report.nodeid:
        return
    _acceptance_outcomes[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance_outcomes.items()):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")


@pytest.fixture
def worked_example_table() -> Quasigroup:
    """The order-3 table used by the worked stream-cipher example
    (letters a, b, c mapped to 0, 1, 2)."""
    return Quasigroup([[1, 2, 0], [2, 0, 1], [0, 1, 2]])


@pytest.fixture
def mod4_subtraction() -> Quasigroup:
    """a * b = (a - b) mod 4, the worked hash example."""
    return Quasigroup([[(a - b) % 4 for b in range(4)] for a in range(4)])


@pytest.fixture
def rls_worked_example() -> np.ndarray:
    """Order-4 row-Latin key-agreement example, 0-based."""
    return np.array(
        [[2, 3, 4, 1], [4, 1, 3, 2], [3, 2, 4, 1], [4, 3, 1, 2]], dtype=np.int64
    ) - 1
