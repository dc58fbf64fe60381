import pytest

from clusterpoly.flag import base_polytope_sl3, compute_all_polytopes, sl4_exchange_graph, sl4_pipeline

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def polytopes():
    return compute_all_polytopes()


@pytest.fixture(scope="session")
def pipeline():
    return sl4_pipeline()


@pytest.fixture(scope="session")
def sl4_graph():
    return sl4_exchange_graph()


@pytest.fixture(scope="session")
def sl3_polytope():
    return base_polytope_sl3()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
