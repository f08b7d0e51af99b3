"""Vectorized adaptive quadrature.

Every interval is integrated with a 15-point Gauss-Legendre rule on the
whole interval and on its two halves; the difference is the local error
estimate.  Intervals whose error is small enough are retired, the rest are
bisected, and all live intervals are evaluated in one numpy call.

:func:`integrate_semi` handles intervals with an endpoint at 0, an
integrable algebraic singularity at either end, or an infinite right end by
exponential substitution toward each end.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)

RTOL = 1e-10
ATOL = 1e-14

_settings = {"rtol": RTOL}


def get_rtol() -> float:
    return _settings["rtol"]


def set_rtol(rtol: float) -> None:
    """Process-wide relative target used when a caller passes ``rtol=None``."""
    if not 0 < rtol <= 1e-3:
        raise ValueError("rtol must lie in (0, 1e-3]")
    _settings["rtol"] = float(rtol)


class QuadratureWarning(RuntimeWarning):
    pass


def _rule(fn, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES
    with np.errstate(all="ignore"):
        y = np.asarray(fn(x), dtype=float)
    y = np.where(np.isnan(y), 0.0, y)
    return (y * _WEIGHTS).sum(axis=1) * half


def integrate(fn, a, b, rtol=None, atol=ATOL, initial=4, max_intervals=40000):
    """Integrate a vectorized ``fn`` over the finite interval ``[a, b]``."""
    rtol = get_rtol() if rtol is None else rtol
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate needs finite limits; use integrate_semi")
    if b == a:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = np.linspace(a, b, initial + 1)
    lo, hi = edges[:-1], edges[1:]
    whole = _rule(fn, lo, hi)
    done = 0.0
    err_done = 0.0
    while True:
        mid = 0.5 * (lo + hi)
        left = _rule(fn, lo, mid)
        right = _rule(fn, mid, hi)
        refined = left + right
        total = done + refined.sum()
        if not math.isfinite(total):
            return sign * total
        err = np.abs(refined - whole)
        tol = max(atol, rtol * abs(total))
        if err_done + err.sum() <= tol:
            return sign * total
        n = len(lo)
        if 2 * n > max_intervals:
            warnings.warn(
                f"interval budget exhausted; estimated error {err_done + err.sum():.3g}",
                QuadratureWarning,
                stacklevel=2,
            )
            return sign * total
        keep = err > tol / (4.0 * n)
        done += refined[~keep].sum()
        err_done += err[~keep].sum()
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        left, right = left[keep], right[keep]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        whole = np.concatenate([left, right])


def _halfline(g, rtol, atol):
    # integral of g(y) over [0, inf) in doubling chunks; g must decay.
    # y = 2048 is past every exp(-y) scale a double can carry
    total = integrate(g, 0.0, 1.0, rtol, atol)
    lo, quiet = 1.0, 0
    while lo < 2048.0:
        part = integrate(g, lo, 2.0 * lo, rtol, max(atol, 1e-3 * rtol * abs(total)))
        total += part
        if not math.isfinite(total):
            return total
        quiet = quiet + 1 if abs(part) <= 1e-3 * rtol * abs(total) else 0
        if quiet >= 2:
            return total
        lo *= 2.0
    if quiet < 2 and abs(part) > rtol * abs(total):
        warnings.warn("tail integral truncated at the overflow limit", QuadratureWarning, stacklevel=3)
    return total


def integrate_semi(fn, a, b, rtol=None, atol=ATOL, near_a=None, near_b=None):
    """Integrate ``fn`` over ``[a, b]`` with ``0 <= a < b <= inf``.

    Singular behaviour is allowed at both ends provided it is integrable.
    ``near_a(d)`` and ``near_b(d)``, when given, evaluate the integrand at
    ``a + d`` and ``b - d`` from the exact distance ``d``; pass them when the
    singularity sits at a nonzero endpoint, where ``b - (b - s)`` loses the
    digits that matter.
    """
    if not a < b:
        return 0.0
    rtol = get_rtol() if rtol is None else rtol
    if math.isinf(b):
        m = 2.0 * a if a > 0 else 1.0
    else:
        m = 0.5 * (a + b)
    if near_a is None:
        near_a = lambda d: fn(a + d)  # noqa: E731

    def left(y):
        d = (m - a) * np.exp(-y)
        with np.errstate(all="ignore"):
            out = near_a(d) * d
        return np.where((d == 0) | ((d < 1e-290) & ~np.isfinite(out)), 0.0, out)

    if math.isinf(b):
        def right(y):
            with np.errstate(all="ignore"):
                s = m * np.exp(y)
                out = fn(s) * s
            return np.where(np.isfinite(s), out, 0.0)
    else:
        if near_b is None:
            near_b = lambda d: fn(b - d)  # noqa: E731

        def right(y):
            d = (b - m) * np.exp(-y)
            with np.errstate(all="ignore"):
                out = near_b(d) * d
            return np.where((d == 0) | ((d < 1e-290) & ~np.isfinite(out)), 0.0, out)

    return _halfline(left, rtol, atol) + _halfline(right, rtol, atol)
