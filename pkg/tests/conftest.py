import sys
from pathlib import Path

import pytest

from conslang import Domain, Relation

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def neq2():
    return Relation.from_tuples(Domain(2), 2, [(0, 1), (1, 0)])


@pytest.fixture
def eq2():
    return Relation.from_tuples(Domain(2), 2, [(0, 0), (1, 1)])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
