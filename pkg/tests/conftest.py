import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from divchain.reals import PrecisionContext, solve_rho  # noqa: E402
from divchain.tables import a_table, b_table, f_table, g_table  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def consts():
    return solve_rho(PrecisionContext(40))


@pytest.fixture(scope="session")
def small_tables():
    b = b_table(2000)
    return {"g": g_table(2000), "b": b, "a": a_table(2000, b=b), "f": f_table(2000)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
