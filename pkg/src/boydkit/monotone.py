"""Nonincreasing functions known only through pointwise evaluation.

Hardy operator outputs and truncation remainders leave the piecewise-power
class.  They are nonincreasing, so each is its own decreasing rearrangement;
quasi-norms are computed from pointwise values by quadrature, with
convergence at ``0`` and ``inf`` decided from the analytic asymptotes each
subclass reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from boydkit.piecewise import PiecewiseFn, evaluate, head_exponent


@dataclass(frozen=True)
class Asymptote:
    """``h(t) ~ c * t**exponent * |log t|**logpow`` at one end."""

    exponent: float
    logpow: float = 0.0


class MonotoneFn:
    """Base class: nonincreasing, right-continuous, nonnegative on ``(0, inf)``."""

    #: ``True`` when the value is ``+inf`` at every point.
    divergent = False

    def __call__(self, t):
        raise NotImplementedError

    def breaks(self):
        """Sorted finite positive points where the closed form changes."""
        raise NotImplementedError

    def head(self):
        """Behaviour as ``t -> 0``; ``None`` for the zero function."""
        raise NotImplementedError

    def tail(self):
        """Behaviour as ``t -> inf``; ``None`` when zero past the last break."""
        raise NotImplementedError


class ExcessFn(MonotoneFn):
    """``(f*(t) - level)`` on ``[0, end)``, zero afterwards; ``end`` is where ``f*`` drops to ``level``."""

    def __init__(self, fstar: PiecewiseFn, level: float, end: float):
        self.fstar = fstar
        self.level = level
        self.end = end

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.where(t < self.end, np.asarray(evaluate(self.fstar, t)) - self.level, 0.0)
        out = np.maximum(out, 0.0)
        return float(out) if out.ndim == 0 else out

    def breaks(self):
        return sorted({b for b in self.fstar.breaks() if b < self.end} | {self.end})

    def head(self):
        a0 = head_exponent(self.fstar)
        return Asymptote(min(a0, 0.0))

    def tail(self):
        return None


def segments(h: MonotoneFn):
    """``[(a, b), ...]`` covering the support of ``h``, split at its breaks."""
    pts = list(h.breaks())
    if not pts:
        pts = [1.0]
    edges = [0.0] + pts
    if h.tail() is not None:
        edges.append(math.inf)
    return list(zip(edges[:-1], edges[1:]))


def _sample_sup(fn, a, b, n=48):
    lo = math.log(a) if a > 0 else None
    hi = math.log(b) if math.isfinite(b) else None
    if lo is None:
        lo = hi - 92.0
    if hi is None:
        hi = lo + 92.0
    xs = np.linspace(lo, hi, n)
    # keep the right end just inside the right-open segment
    xs[-1] = hi + math.log1p(-1e-12)
    vals = fn(np.exp(xs))
    i = int(np.nanargmax(vals))
    best = float(vals[i])
    if 0 < i < n - 1:
        from scipy.optimize import minimize_scalar

        res = minimize_scalar(
            lambda x: -float(fn(np.exp(np.array([x])))[0]),
            bounds=(xs[i - 1], xs[i + 1]),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, -float(res.fun))
    return best


def weighted_sup_numeric(h: MonotoneFn, w: float) -> float:
    """``sup_t t**w h(t)`` for a nonincreasing ``h``."""
    if h.divergent:
        return math.inf
    head = h.head()
    if head is None:
        return 0.0
    e0 = head.exponent + w
    if e0 < 0 or (e0 == 0 and head.logpow > 0):
        return math.inf
    tail = h.tail()
    if tail is not None:
        e1 = tail.exponent + w
        if e1 > 0 or (e1 == 0 and tail.logpow > 0):
            return math.inf

    def fn(t):
        with np.errstate(all="ignore"):
            return np.asarray(h(t), dtype=float) * t ** w

    return max(_sample_sup(fn, a, b) for a, b in segments(h))
