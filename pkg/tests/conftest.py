import itertools

import pytest

from exdir.graph import Graph
from exdir.verify import connected_atlas


def brute_closed(dm, subset) -> bool:
    """Direct restatement of closedness, no bitmasks."""
    subset = set(subset)
    if not subset:
        return False
    for u in subset:
        seen = {dm(u, w) for w in subset}
        if seen != set(range(dm.ecc[u] + 1)):
            return False
    return True


def all_subsets(n):
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


@pytest.fixture(scope="session")
def atlas6():
    return [Graph(n, edges) for n, edges in connected_atlas(6)]


@pytest.fixture(scope="session")
def atlas5():
    return [Graph(n, edges) for n, edges in connected_atlas(5)]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)
