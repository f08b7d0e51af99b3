"""Dilation norms, Boyd index estimates and Hardy boundedness probes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from boydkit.corpus import capped_power
from boydkit.hardy import HardyKind, Lower, Upper, apply
from boydkit.parallel import pmap
from boydkit.piecewise import PiecewiseFn, dilate
from boydkit.spaces import InvalidSpec, Lorentz, SpaceSpec, norm


class EmptyFamily(ValueError):
    pass


class DegenerateFit(ValueError):
    pass


class InvalidC(ValueError):
    pass


def default_family(X: SpaceSpec) -> dict[str, PiecewiseFn]:
    """Indicators over twenty octaves plus truncated powers near the space exponent."""
    fam = {f"chi_2^{j}": PiecewiseFn.indicator(0.0, 2.0 ** j) for j in (-10, -5, 0, 5, 10)}
    p = X.p if isinstance(X, Lorentz) else 2.0
    if math.isfinite(p):
        for g in (0.8 * p, 1.25 * p):
            fam[f"head_{g:g}"] = capped_power(g, 1e-4, 1.0)
            fam[f"tail_{g:g}"] = capped_power(g, 1.0, 1e4)
    return fam


def index_family(X: SpaceSpec, grid: Sequence[float]) -> dict[str, PiecewiseFn]:
    """``default_family`` plus indicators reaching two decades past each end of ``grid``.

    Extremal functions for ``||D_a||`` at extreme ``a`` live at scales comparable to ``a``,
    so a fixed family underestimates the norm there and can swap the two index fits.
    """
    fam = default_family(X)
    lo = math.floor(math.log10(min(grid))) - 2
    hi = math.ceil(math.log10(max(grid))) + 2
    for k in range(lo, hi + 1):
        fam[f"chi_1e{k}"] = PiecewiseFn.indicator(0.0, 10.0 ** k)
    return fam


def _family(X, family):
    fam = default_family(X) if family is None else dict(family)
    if not fam:
        raise EmptyFamily("the test family is empty")
    return fam


# -- dilation and indices ------------------------------------------------------


def dilation_norm(X: SpaceSpec, a: float, family: Optional[Mapping[str, PiecewiseFn]] = None) -> float:
    """``||D_a||`` on ``X``: exact ``a^{-1/p}`` for Lorentz, else the best ratio over ``family``."""
    if not a > 0:
        raise ValueError("a must be positive")
    fam = _family(X, family)
    if isinstance(X, Lorentz):
        return 1.0 if math.isinf(X.p) else a ** (-1.0 / X.p)
    best = 0.0
    for f in fam.values():
        base = norm(X, f)
        if base > 0 and math.isfinite(base):
            best = max(best, norm(X, dilate(f, a)) / base)
    return best


@dataclass(frozen=True)
class BoydReport:
    samples: tuple
    lower_index: float
    upper_index: float
    fit_residual: float


def default_a_grid(decades: int = 6, per_decade: int = 4) -> np.ndarray:
    return np.logspace(-decades, decades, 2 * decades * per_decade + 1)


def _slope(points):
    x = np.array([math.log(1.0 / a) for a, _ in points])
    y = np.array([math.log(h) for _, h in points])
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(resid ** 2)))


def _index(slope):
    return math.inf if slope <= 0 else 1.0 / slope


def estimate_indices(X: SpaceSpec, a_grid: Optional[Sequence[float]] = None, family=None) -> BoydReport:
    """Lower and upper Boyd indices from the limiting log-log slope of ``a -> ||D_a||``.

    Only the three decades of ``a_grid`` nearest each end enter the fits.
    """
    grid = sorted(float(a) for a in (default_a_grid() if a_grid is None else a_grid))
    if not (grid[0] < 1 < grid[-1]):
        raise ValueError("a_grid must span both sides of 1")
    fam = _family(X, index_family(X, grid) if family is None else family)
    hs = pmap(lambda a: dilation_norm(X, a, fam), grid)
    samples = tuple(zip(grid, hs))
    if all(abs(h - 1.0) <= 1e-12 for h in hs):
        raise DegenerateFit("every dilation norm is 1")
    small = [s for s in samples if s[0] < 1 and s[0] <= grid[0] * 1e3]
    large = [s for s in samples if s[0] > 1 and s[0] >= grid[-1] * 1e-3]
    if len(small) < 2:
        small = [s for s in samples if s[0] < 1]
    if len(large) < 2:
        large = [s for s in samples if s[0] > 1]
    lo_slope, lo_res = _slope(small)
    hi_slope, hi_res = _slope(large)
    return BoydReport(samples, _index(lo_slope), _index(hi_slope), max(lo_res, hi_res))


# -- boundedness ---------------------------------------------------------------


@dataclass(frozen=True)
class Bounded:
    C: float


@dataclass(frozen=True)
class DivergingWitness:
    function_id: str
    ratios: tuple = ()


Verdict = Union[Bounded, DivergingWitness]


@dataclass(frozen=True)
class BoundednessReport:
    kind: HardyKind
    space: SpaceSpec
    ratios: tuple
    verdict: Verdict


PLATEAU = 0.01


def witness_levels(escalation: int) -> list[int]:
    return [2 ** (j + 3) for j in range(escalation)]


def witnesses(kind: HardyKind, X: Lorentz, escalation: int) -> dict[str, list[tuple[str, PiecewiseFn]]]:
    """Escalating ``min(1, s^{-1/g}) 1_[0, e^k)`` for ``g`` the operator and space exponents.

    By dilation invariance of the ratio these are the truncated critical
    powers for both the head (``Upper``) and the tail (``Lower``) divergence.
    """
    gammas = []
    for g in (kind.index, X.p):
        if math.isfinite(g) and all(abs(g - h) > 1e-12 for h in gammas):
            gammas.append(g)
    out = {}
    for g in gammas:
        key = f"witness_{g:g}"
        out[key] = [(f"{key}_k{k}", capped_power(g, 1.0, math.exp(k))) for k in witness_levels(escalation)]
    return out


def ratio(kind: HardyKind, X: SpaceSpec, f: PiecewiseFn) -> float:
    base = norm(X, f)
    if base == 0:
        return 0.0
    return norm(X, apply(kind, f)) / base


def boundedness_probe(
    kind: HardyKind,
    X: SpaceSpec,
    family: Optional[Mapping[str, PiecewiseFn]] = None,
    escalation: int = 7,
) -> BoundednessReport:
    """Empirical ``||H f||_X / ||f||_X`` over a family plus escalating witnesses.

    ``Bounded(C)`` when every witness sequence has levelled off (last step
    raised it by under 1%); otherwise the first witness that keeps growing,
    or that already has an infinite ratio, is reported.
    """
    if not isinstance(X, Lorentz):
        raise InvalidSpec("boundedness_probe needs a Lorentz space; Hardy images leave the piecewise class")
    if escalation < 2:
        raise ValueError("escalation needs at least two levels")
    fam = _family(X, family)
    seqs = witnesses(kind, X, escalation)
    items = list(fam.items()) + [item for seq in seqs.values() for item in seq]
    values = pmap(lambda item: ratio(kind, X, item[1]), items)
    ratios = tuple(zip([fid for fid, _ in items], values))
    lookup = dict(ratios)
    for fid, val in ratios:
        if math.isinf(val) or math.isnan(val):
            return BoundednessReport(kind, X, ratios, DivergingWitness(fid, (val,)))
    for key, seq in seqs.items():
        vals = [lookup[fid] for fid, _ in seq]
        if vals[-1] > vals[-2] * (1.0 + PLATEAU):
            run = [vals[-1]]
            for v in reversed(vals[:-1]):
                if v < run[0]:
                    run.insert(0, v)
                else:
                    break
            return BoundednessReport(kind, X, ratios, DivergingWitness(key, tuple(run)))
    return BoundednessReport(kind, X, ratios, Bounded(max(values)))


# -- converse of the boundedness theorem ---------------------------------------


@dataclass(frozen=True)
class ConverseBound:
    kappa: float
    k: float


def converse_bound(p: float, r: float, C: float) -> ConverseBound:
    """Index lower bound ``p / (1 - C^{-r})`` and dilation step ``exp(-(p/r) C^r)``."""
    if not C > 1:
        raise InvalidC(f"the bound needs C > 1, got {C}")
    if not (0 < r < math.inf):
        raise ValueError("r must be finite and positive")
    if math.isinf(C):
        return ConverseBound(p, 0.0)
    return ConverseBound(p / (1.0 - C ** (-r)), math.exp(-(p / r) * C ** r))


@dataclass(frozen=True)
class Certificate:
    lhs: float
    rhs: float

    @property
    def holds(self):
        return self.lhs <= self.rhs * (1.0 + 1e-9)


def converse_certificate(p: float, r: float, C: float, X: SpaceSpec, f: PiecewiseFn, n: int) -> Certificate:
    """Both sides of ``||D_a f|| <= C^{n+1} (n! / (a^b log(a^{-b})^n))^{1/r} ||f||`` at ``a = k^n``, ``b = r/p``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    k = converse_bound(p, r, C).k
    beta = r / p
    log_a = n * math.log(k)
    a = math.exp(log_a)
    # a^b (log a^{-b})^n computed in logs: a may underflow for large C
    log_den = beta * log_a + n * math.log(-beta * log_a)
    factor = math.exp((math.lgamma(n + 1) - log_den) / r)
    base = norm(X, f)
    lhs = norm(X, dilate(f, a)) if base > 0 else 0.0
    return Certificate(lhs, C ** (n + 1) * factor * base)
