import pytest

from latflow.corpus import named_graph
from latflow.graph import Multigraph, OrientedSubgraph


def arcs(*pairs):
    return OrientedSubgraph(frozenset(pairs))


@pytest.fixture
def theta():
    return named_graph("theta")


@pytest.fixture
def triangle():
    return named_graph("C3")


@pytest.fixture
def loop():
    return named_graph("loop")


@pytest.fixture
def path3():
    return named_graph("P3")


@pytest.fixture
def k2():
    return named_graph("K2")


@pytest.fixture
def k3():
    return named_graph("K3")


@pytest.fixture
def k4():
    return named_graph("K4")


@pytest.fixture
def c4():
    return named_graph("C4")


@pytest.fixture
def star3():
    return Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


# -- acceptance report lines ---------------------------------------------------------

ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append((number, line))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
            terminalreporter.write_line(line)
