import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from geomint.algebra import so3

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def vectors(max_norm=3.0):
    """3-vectors with components in [-max_norm, max_norm]."""
    comp = st.floats(-max_norm, max_norm, allow_nan=False, allow_infinity=False)
    return st.tuples(comp, comp, comp).map(lambda v: np.array(v, dtype=float))


def ball(radius):
    return vectors(radius).filter(lambda v: np.linalg.norm(v) <= radius)


def rotations():
    comp = st.floats(-1.0, 1.0, allow_nan=False)
    quats = st.tuples(comp, comp, comp, comp).filter(lambda q: np.linalg.norm(q) > 1e-3)

    def to_matrix(q):
        w, x, y, z = np.array(q) / np.linalg.norm(q)
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ]
        )

    return quats.map(to_matrix)


def rz(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


E1, E2, E3 = (so3.basis(i) for i in range(3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
