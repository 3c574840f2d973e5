import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from loewy import families  # noqa: E402


@pytest.fixture(scope="session")
def d12():
    return families.divisor_lattice(12)


@pytest.fixture(scope="session")
def corpus():
    return families.fixtures()


def by_label(L, labels):
    return {L.index(str(x)) for x in labels}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
