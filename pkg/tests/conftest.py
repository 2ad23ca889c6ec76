import numpy as np
import pytest

from shadowinv.povms import pauli6, planar4, triangle3


@pytest.fixture(scope="session")
def p6():
    return pauli6().povm


@pytest.fixture(scope="session")
def p4():
    return planar4().povm


@pytest.fixture(scope="session")
def t3():
    return triangle3().povm


@pytest.fixture(scope="session", params=["pauli6", "planar4", "triangle3"])
def named(request):
    return {"pauli6": pauli6, "planar4": planar4, "triangle3": triangle3}[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one ``PASS``/``FAIL`` line per acceptance criterion."""

    def _record(label, ok, detail):
        line = f"{label}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
