import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quatkuga.kuga.families import PAPER_ALGEBRA, build_false_elliptic, paper_generators, paper_order


@pytest.fixture(scope="session")
def B():
    return PAPER_ALGEBRA


@pytest.fixture(scope="session")
def L():
    return paper_order()


@pytest.fixture(scope="session")
def fek(B, L):
    return build_false_elliptic(B, L, paper_generators())


@pytest.fixture(scope="session")
def fixtures_dir():
    return Path(__file__).resolve().parents[1] / "src" / "quatkuga" / "fixtures"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
