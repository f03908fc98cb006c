from __future__ import annotations

import sys

import pytest

from surfstab.generators import corpus, planar_cycle, proj_k4, proj_quad, proj_triangle


@pytest.fixture(scope="session")
def small_corpus():
    return list(corpus(max_n=14, count=200, seed=0))


@pytest.fixture
def triangle():
    return proj_triangle()


@pytest.fixture
def k4():
    return proj_k4()


@pytest.fixture
def c5():
    return planar_cycle(5)


@pytest.fixture
def quad33():
    return proj_quad(3, 3)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            lines.extend(getattr(mod, "RESULTS", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
