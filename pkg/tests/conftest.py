import sys
from pathlib import Path

import pytest

from liehopf import fixtures as fx
from liehopf.freeprod import FreeProduct

HERE = Path(__file__).parent
ROOT = HERE.parent
sys.path.insert(0, str(HERE))

DATA = HERE / "data"
PRESENTATIONS = ROOT / "presentations"


def supported_presentations():
    """Every (presentation, mode) pair for which both statements are asserted."""
    return [(P, "full") for P in fx.char0_presentations()] + \
           [(P, "restricted") for P in fx.restricted_presentations()]


def ids(cases):
    return [P.name for P, _ in cases]


@pytest.fixture(scope="session")
def sl2_A():
    return FreeProduct.of(fx.sl2())


@pytest.fixture(scope="session")
def f2_A():
    return FreeProduct.of(fx.restricted_f2())


@pytest.fixture(scope="session")
def sl2_f5_A():
    return FreeProduct.of(fx.sl2_f5())


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
