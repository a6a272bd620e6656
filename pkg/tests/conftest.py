import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from digitalfp.core import CU, DigitalImage, Explicit, interval
from digitalfp.maps import DigitalMap

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def points_in(draw, dim, lo=-2, hi=3, min_size=1, max_size=6):
    coord = st.integers(lo, hi)
    pts = draw(st.lists(st.tuples(*[coord] * dim), min_size=min_size, max_size=max_size, unique=True))
    return pts


@st.composite
def small_images(draw, max_size=6, min_size=1):
    """c_u images in Z^1..Z^3, or an explicit random graph on points of Z."""
    if draw(st.booleans()):
        dim = draw(st.integers(1, 3))
        pts = draw(points_in(dim, min_size=min_size, max_size=max_size))
        u = draw(st.integers(1, dim))
        return DigitalImage(pts, CU(u, dim))
    n = draw(st.integers(min_size, max_size))
    pts = [(i,) for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return DigitalImage(pts, Explicit.from_pairs(chosen, 1))


@st.composite
def maps_between(draw, X, Y):
    idx = draw(st.lists(st.integers(0, len(Y) - 1), min_size=len(X), max_size=len(X)))
    return DigitalMap(X, Y, tuple(idx))


@pytest.fixture
def neg():
    return interval(-1, 1)


@pytest.fixture
def square_c1():
    return DigitalImage([(0, 0), (0, 1), (1, 0), (1, 1)], CU(1, 2))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
