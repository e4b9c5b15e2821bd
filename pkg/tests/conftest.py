import numpy as np
import pytest

from torsionlab.riley import random_riley_points, riley_roots

GOLDEN = (3 + 5 ** 0.5) / 2  # s with s + 1/s = 3


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def figure_eight_point():
    """n = -1, x = 3, u = 2 + 2 sqrt 2."""
    pts = riley_roots(-1, GOLDEN)
    return min(pts, key=lambda p: abs(p.u - (2 + 2 * 2 ** 0.5)))


@pytest.fixture
def riley_sample(rng):
    def draw(n, count=5):
        return random_riley_points(n, rng, count)
    return draw


ACCEPTANCE = {}


@pytest.fixture
def record():
    """record(label, ok, detail) stores one summary line for the terminal report."""
    def _record(label, ok, detail):
        ACCEPTANCE[label] = (ok, detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
