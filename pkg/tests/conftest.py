"""Shared fixtures and the acceptance summary printed at the end of a run."""
import random

import pytest

from branchlab.branch import make_branch
from branchlab.exact_algebra import GF, QQ, parse_poly

ACCEPTANCE_LINES: list[str] = []


def branch(x: str, y: str, field=QQ):
    return make_branch(parse_poly(x, field), parse_poly(y, field), field)


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture(params=[QQ, GF(101), GF(997)], ids=["Q", "GF101", "GF997"])
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
