import sys

import pytest

from fardiff.summand_stats import build_count_table


@pytest.fixture(scope="session")
def table_k1():
    return build_count_table(1, 300)


@pytest.fixture(scope="session")
def table_k2():
    return build_count_table(2, 300)


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
