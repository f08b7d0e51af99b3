"""Rearrangement-invariant quasi-norms: Lorentz, sum and Holmstedt spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from boydkit._quad import get_rtol, integrate_semi
from boydkit.monotone import ExcessFn, MonotoneFn, segments, weighted_sup_numeric
from boydkit.piecewise import (
    INF,
    PiecewiseFn,
    StepFn,
    add_steps,
    cap,
    distribution,
    evaluate,
    power_integral,
    power_sum,
    rearrange,
    weighted_sup,
)


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class Lorentz:
    """``L_{p,q}`` with ``||f|| = (int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}``."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if not (p > 0 and q > 0):
            raise InvalidSpec(f"Lorentz exponents must be positive, got p={p}, q={q}")
        if math.isinf(p) and not math.isinf(q):
            raise InvalidSpec("Lorentz(inf, q) is only defined for q = inf")

    @property
    def normed(self):
        """Whether the defining functional is itself a norm (``1 <= q <= p``)."""
        return 1 <= self.q <= self.p


@dataclass(frozen=True)
class SumSpace:
    x: "SpaceSpec"
    y: "SpaceSpec"
    cut_grid: int = 64

    def __post_init__(self):
        _check(self.x)
        _check(self.y)
        if int(self.cut_grid) < 2:
            raise InvalidSpec("cut_grid must be at least 2")


@dataclass(frozen=True)
class HolmstedtSpace:
    x: "SpaceSpec"
    y: "SpaceSpec"

    def __post_init__(self):
        _check(self.x)
        _check(self.y)


SpaceSpec = Union[Lorentz, SumSpace, HolmstedtSpace]


def _check(X):
    if not isinstance(X, (Lorentz, SumSpace, HolmstedtSpace)):
        raise InvalidSpec(f"not a space spec: {X!r}")


@dataclass(frozen=True)
class QuasiConstants:
    c3: float
    u: float
    c_agg: float


# -- Lorentz -----------------------------------------------------------------


def _lorentz_piecewise(X: Lorentz, f: PiecewiseFn) -> float:
    fstar = rearrange(f)
    if fstar.is_zero:
        return 0.0
    if math.isinf(X.q):
        return weighted_sup(fstar, 0.0 if math.isinf(X.p) else 1.0 / X.p)
    beta = X.q / X.p
    total = power_integral(fstar, X.q, beta)
    if math.isinf(total):
        return INF
    return (total / beta) ** (1.0 / X.q)


def _lorentz_monotone(X: Lorentz, h: MonotoneFn, rtol=None) -> float:
    rtol = get_rtol() if rtol is None else rtol
    if h.divergent:
        return INF
    if isinstance(h, ExcessFn) and X.q == 1 and math.isfinite(X.p):
        # the (p, 1) functional is linear in h
        beta = 1.0 / X.p
        total = power_integral(h.fstar, 1.0, beta, 0.0, h.end)
        return max(total - h.level * h.end ** beta, 0.0) / beta
    head = h.head()
    if head is None:
        return 0.0
    if math.isinf(X.q):
        return weighted_sup_numeric(h, 0.0 if math.isinf(X.p) else 1.0 / X.p)
    w = 1.0 / X.p
    if head.exponent + w <= 0:
        return INF
    tail = h.tail()
    if tail is not None and tail.exponent + w >= 0:
        return INF
    g = _monotone_integrand(h, X.q, X.q / X.p - 1.0)
    parts = []
    for a, b in segments(h):
        # later segments only need accuracy relative to what is already summed
        floor = 1e-3 * rtol * math.fsum(parts)
        parts.append(integrate_semi(g, a, b, rtol=rtol, atol=floor))
    return math.fsum(parts) ** (1.0 / X.q)


def _monotone_integrand(h, q, weight_exp):
    def g(t):
        with np.errstate(all="ignore"):
            ht = np.asarray(h(t), dtype=float)
            out = np.exp(q * np.log(ht) + weight_exp * np.log(t))
        return np.where(ht > 0, out, 0.0)

    return g


# -- decompositions ----------------------------------------------------------


def cut_grid(fstar: PiecewiseFn, n: int, extra: Sequence[float] = ()) -> list[float]:
    """Geometric cut grid over the breaks of ``f*`` widened by 1e3 each way.

    Always contains ``1`` and every point of ``extra``.
    """
    pts = [b for b in fstar.breaks()]
    lo, hi = (min(pts), max(pts)) if pts else (1.0, 1.0)
    grid = np.geomspace(lo * 1e-3, hi * 1e3, int(n))
    return sorted(set(float(u) for u in grid) | {1.0} | {float(u) for u in extra})


def truncation(fstar: PiecewiseFn, u: float):
    """Split ``f* = f' + f''`` at level ``f*(u)``.

    ``f' = (f* - f*(u)) 1_[0,u)`` and ``f'' = min(f*, f*(u))``.
    """
    level = float(evaluate(fstar, u))
    if level == 0:
        return fstar, PiecewiseFn()
    low = cap(fstar, level)
    end = distribution(fstar, level)
    if end == 0:
        return PiecewiseFn(), low
    head = fstar.restrict(0.0, end)
    if head.is_step:
        excess = StepFn([type(p)(p.lo, p.hi, p.coef - level) for p in head.pieces])
    else:
        excess = ExcessFn(fstar, level, end)
    return excess, low


def restriction(fstar: PiecewiseFn, u: float):
    """Split ``f* = f* 1_[0,u) + f* 1_[u,inf)``."""
    return fstar.restrict(0.0, u), fstar.restrict(u)


MODES = ("truncation", "truncation-swapped", "restriction", "restriction-swapped")


def split(fstar: PiecewiseFn, u: float, mode: str):
    """The ``(f', f'')`` pair of one decomposition.

    Swapped modes hand the head to the second space; without them a head that
    only the second space can absorb would price every split at ``inf``.
    """
    base, _, swapped = mode.partition("-")
    f1, f2 = truncation(fstar, u) if base == "truncation" else restriction(fstar, u)
    return (f2, f1) if swapped else (f1, f2)


def candidates(fstar: PiecewiseFn, cuts: Sequence[float]) -> Iterator[tuple[float, str, object, object]]:
    """Every mode of :func:`split` at every cut."""
    for u in cuts:
        for mode in MODES:
            yield (u, mode) + split(fstar, u, mode)


@dataclass(frozen=True)
class SumDecomposition:
    value: float
    cut: float
    mode: str


def best_split(fstar: PiecewiseFn, cost, cuts: Sequence[float], refine: bool = True) -> SumDecomposition:
    """Least ``cost(f', f'')`` over :func:`candidates`, then polished between neighbouring cuts.

    The polish is a bounded search in ``log u`` for the winning mode, so the
    result never exceeds any grid candidate and barely moves when the grid
    is refined.
    """
    cuts = sorted(cuts)
    best = SumDecomposition(INF, math.nan, "none")
    for u, mode, f1, f2 in candidates(fstar, cuts):
        c = cost(f1, f2)
        if c < best.value:
            best = SumDecomposition(c, u, mode)
    if not (refine and math.isfinite(best.value)):
        return best
    from scipy.optimize import minimize_scalar

    i = cuts.index(best.cut)
    lo = math.log(cuts[i - 1]) if i > 0 else math.log(best.cut) - 1.0
    hi = math.log(cuts[i + 1]) if i + 1 < len(cuts) else math.log(best.cut) + 1.0
    res = minimize_scalar(
        lambda x: cost(*split(fstar, math.exp(x), best.mode)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-8},
    )
    if res.fun < best.value:
        best = SumDecomposition(float(res.fun), math.exp(res.x), best.mode)
    return best


def decompose_sum(X, Y, f: PiecewiseFn, cut_count: int = 64, extra: Sequence[float] = ()) -> SumDecomposition:
    """Least ``||f'||_X + ||f''||_Y`` over the cut decompositions of :func:`candidates`."""
    fstar = rearrange(f)
    if fstar.is_zero:
        return SumDecomposition(0.0, 1.0, "zero")
    return best_split(fstar, lambda f1, f2: norm(X, f1) + norm(Y, f2), cut_grid(fstar, cut_count, extra))


# -- public operations -------------------------------------------------------


def norm(X: SpaceSpec, f) -> float:
    """Quasi-norm of ``f`` (a :class:`PiecewiseFn` or nonincreasing :class:`MonotoneFn`)."""
    if isinstance(X, Lorentz):
        if isinstance(f, PiecewiseFn):
            return _lorentz_piecewise(X, f)
        if isinstance(f, MonotoneFn):
            return _lorentz_monotone(X, f)
        raise TypeError(f"cannot take a norm of {type(f).__name__}")
    if isinstance(X, SumSpace):
        return decompose_sum(X.x, X.y, f, X.cut_grid).value
    if isinstance(X, HolmstedtSpace):
        fstar = rearrange(f)
        return norm(X.x, fstar.restrict(0.0, 1.0)) + norm(X.y, fstar.restrict(1.0))
    raise InvalidSpec(f"not a space spec: {X!r}")


def random_step(rng: np.random.Generator, max_pieces: int = 4, span: float = 4.0) -> StepFn:
    """Random nonnegative step function with at most ``max_pieces`` cells."""
    n = int(rng.integers(1, max_pieces + 1))
    edges = np.sort(rng.uniform(0.0, span, n + 1))
    edges = np.unique(edges)
    if len(edges) < 2:
        edges = np.array([0.0, 1.0])
    values = rng.uniform(0.0, 3.0, len(edges) - 1)
    return StepFn.from_grid(list(edges), list(values))


def _unit_pair(rng):
    # two-piece pair on disjoint or overlapping cells, where quasi-norms bite
    a = float(rng.uniform(0.1, 2.0))
    b = float(rng.uniform(0.1, 2.0))
    off = float(rng.uniform(0.0, 2.0 * a))
    f = StepFn.from_grid([0.0, a], [float(rng.uniform(0.5, 2.0))])
    g = StepFn.from_grid([off, off + b], [float(rng.uniform(0.5, 2.0))])
    return f, g


def quasi_triangle_constant(X: SpaceSpec, trials: int = 200, seed: int = 0) -> float:
    """Largest sampled ``||f+g|| / (||f|| + ||g||)``; a lower estimate of the constant.

    Proportional pairs are always among the samples, so the result is at least 1.
    """
    if not isinstance(X, Lorentz):
        raise InvalidSpec("quasi_triangle_constant needs a Lorentz space")
    rng = np.random.default_rng(seed)
    best = 1.0
    for i in range(trials):
        f, g = _unit_pair(rng) if i % 2 == 0 else (random_step(rng), random_step(rng))
        den = norm(X, f) + norm(X, g)
        if den > 0:
            best = max(best, norm(X, add_steps(f, g)) / den)
    return best


@dataclass(frozen=True)
class AggregationCheck:
    lhs: float
    rhs: float


def default_u(X: Lorentz, rho: float) -> float:
    return min(rho, X.p, X.q, 1.0)


def lemma6_check(X: SpaceSpec, rho: float, fs: Sequence[PiecewiseFn], u: float) -> AggregationCheck:
    """Both sides of ``||(sum |f_i|^rho)^{1/rho}|| <= c (sum ||f_i||^u)^{1/u}``."""
    if not 0 < u <= rho:
        raise ValueError("need 0 < u <= rho")
    lhs = norm(X, power_sum(fs, rho))
    rhs = math.fsum(norm(X, f) ** u for f in fs) ** (1.0 / u)
    return AggregationCheck(lhs, rhs)


def lemma6_sweep(X: Lorentz, rho: float, families: int = 200, seed: int = 0, max_len: int = 8) -> float:
    """Largest ``lhs / rhs`` over seeded random families with the default ``u``."""
    rng = np.random.default_rng(seed)
    u = default_u(X, rho)
    worst = 0.0
    for _ in range(families):
        n = int(rng.integers(1, max_len + 1))
        fs = [random_step(rng) for _ in range(n)]
        res = lemma6_check(X, rho, fs, u)
        if res.rhs > 0:
            worst = max(worst, res.lhs / res.rhs)
    return worst


def quasi_constants(X: Lorentz, rho: float, trials: int = 200, seed: int = 0) -> QuasiConstants:
    return QuasiConstants(
        c3=quasi_triangle_constant(X, trials, seed),
        u=default_u(X, rho),
        c_agg=max(1.0, lemma6_sweep(X, rho, seed=seed)),
    )
