"""Named test functions shared by the probes, the acceptance suite and the tests.

All are already nonincreasing and use unshifted pieces, so every finite-``r``
Hardy image has an exact power-log series.
"""

from __future__ import annotations

from boydkit.piecewise import INF, PiecewiseFn, PowerPiece


def capped_power(gamma: float, eps: float, end: float, scale: float = 1.0) -> PiecewiseFn:
    """``min(eps^{-1/gamma}, s^{-1/gamma})`` on ``[0, end)``, times ``scale``."""
    e = -1.0 / gamma
    return PiecewiseFn(
        [
            PowerPiece(0.0, eps, scale * eps ** e),
            PowerPiece(eps, end, scale, e),
        ]
    )


def step(edges, values) -> PiecewiseFn:
    return PiecewiseFn([PowerPiece(a, b, v) for a, b, v in zip(edges[:-1], edges[1:], values)])


CORPUS: dict[str, PiecewiseFn] = {
    "chi01": PiecewiseFn.indicator(0.0, 1.0),
    "half_chi08": PiecewiseFn.indicator(0.0, 8.0, 0.5),
    "two_step": step([0.0, 1.0, 3.0], [2.0, 1.0]),
    "three_step": step([0.0, 0.25, 2.0, 5.0], [3.0, 1.5, 0.5]),
    "sqrt_head": PiecewiseFn.power(0.0, 1.0, 1.0, -0.5),
    "capped_sqrt": capped_power(2.0, 1e-2, 1.0),
    "capped_two_thirds": capped_power(1.5, 1e-3, 1e3),
    "capped_inverse": capped_power(1.0, 1e-2, 1e2),
    "power_then_step": PiecewiseFn(
        [PowerPiece(0.0, 2.0, 1.0, -0.25), PowerPiece(2.0, 6.0, 0.3)]
    ),
    "step_then_tail": PiecewiseFn(
        [PowerPiece(0.0, 1.0, 1.0), PowerPiece(1.0, INF, 1.0, -2.0)]
    ),
}
