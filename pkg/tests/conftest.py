from fractions import Fraction as F

import pytest

from vallab.polytope import hull, simplex


def vec(*cs):
    return tuple(F(c) for c in cs)


@pytest.fixture
def T3():
    return simplex(3, 3)


@pytest.fixture
def cube():
    return hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
