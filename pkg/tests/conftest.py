import math

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from boydkit.piecewise import INF, NotRepresentable, PiecewiseFn, PowerPiece, StepFn, rearrange

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

values = st.floats(0.05, 20.0, allow_nan=False)
widths = st.floats(0.05, 5.0, allow_nan=False)


@st.composite
def step_fns(draw, max_pieces=6, gaps=True):
    n = draw(st.integers(1, max_pieces))
    pieces, x = [], 0.0
    for _ in range(n):
        if gaps and draw(st.booleans()):
            x += draw(widths)
        w = draw(widths)
        pieces.append(PowerPiece(x, x + w, draw(values)))
        x += w
    return StepFn(pieces)


@st.composite
def power_fns(draw, max_pieces=4, tail=True):
    """Unshifted power pieces on a bounded grid, optionally with a decaying tail."""
    n = draw(st.integers(1, max_pieces))
    edges = sorted(set(draw(st.lists(st.floats(0.1, 8.0), min_size=n, max_size=n))))
    edges = [0.0] + edges
    pieces = []
    for a, b in zip(edges[:-1], edges[1:]):
        exp = draw(st.sampled_from([0.0, -0.5, -0.25, 0.5, 1.0, -1.0]))
        if a == 0 and exp <= -1:
            exp = -0.5
        pieces.append(PowerPiece(a, b, draw(values), exp))
    if tail and draw(st.booleans()):
        pieces.append(PowerPiece(edges[-1], INF, draw(values), draw(st.sampled_from([-1.5, -2.0, -3.0]))))
    f = PiecewiseFn(pieces)
    try:
        rearrange(f)
    except NotRepresentable:
        assume(False)
    return f


scales = st.floats(0.01, 100.0, allow_nan=False)


def rel(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


@pytest.fixture
def chi01():
    return PiecewiseFn.indicator(0.0, 1.0)


def approx(x, rel=1e-12, abs=0.0):
    return pytest.approx(x, rel=rel, abs=abs)


__all__ = ["step_fns", "power_fns", "scales", "rel", "approx", "math"]
