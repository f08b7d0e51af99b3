"""K-type infima against Hardy sums, and the sum/Holmstedt norm comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from boydkit.boyd import dilation_norm
from boydkit.hardy import Lower, Upper, apply
from boydkit.parallel import pmap
from boydkit.piecewise import INF, PiecewiseFn, StepFn, evaluate, power_integral, rearrange
from boydkit.spaces import (
    InvalidSpec,
    Lorentz,
    best_split,
    cut_grid,
    decompose_sum,
    norm,
    quasi_triangle_constant,
)


class Divergent(ArithmeticError):
    pass


class HypothesisFailed(ValueError):
    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


# -- K-functional --------------------------------------------------------------


@dataclass(frozen=True)
class KReport:
    t: float
    brute_inf: float
    operator_sum: float
    ratio: float
    arg_cut: float


def _scale(t, p):
    return 1.0 if math.isinf(p) else t ** (-1.0 / p)


def k_bruteforce(f: PiecewiseFn, t: float, p, r, q, s, cut_count: int = 64) -> KReport:
    """Least ``t^{-1/p}||f'||_{p,r} + t^{-1/q}||f''||_{q,s}`` over cut decompositions of ``f*``.

    Cuts form a geometric grid that always contains ``t`` and ``1``; both
    truncation and restriction splits, in both role orders, are tried at
    each cut and the winner is polished between its neighbouring cuts.  The report
    also carries ``H^{(p,r)}f(t) + H_{(q,s)}f(t)``.
    """
    if not 0 < p < q:
        raise InvalidSpec("need 0 < p < q")
    if not t > 0:
        raise ValueError("t must be positive")
    X, Y = Lorentz(p, r), Lorentz(q, s)
    fstar = rearrange(f)
    op = float(apply(Upper(p, r), fstar)(t)) + float(apply(Lower(q, s), fstar)(t))
    if fstar.is_zero:
        return KReport(t, 0.0, op, math.nan, t)
    wx, wy = _scale(t, p), _scale(t, q)
    res = best_split(
        fstar, lambda f1, f2: wx * norm(X, f1) + wy * norm(Y, f2), cut_grid(fstar, cut_count, (t, 1.0))
    )
    best, arg = res.value, res.cut
    if math.isinf(best):
        raise Divergent(f"every decomposition of f has infinite cost at t={t}")
    return KReport(t, best, op, best / op if op > 0 else math.nan, arg)


@dataclass(frozen=True)
class Sweep:
    reports: tuple
    min_ratio: float
    max_ratio: float


def holmstedt_sweep(f: PiecewiseFn, p, r, q, s, t_grid: Sequence[float], cut_count: int = 64) -> Sweep:
    reports = tuple(pmap(lambda t: k_bruteforce(f, float(t), p, r, q, s, cut_count), t_grid))
    ratios = [k.ratio for k in reports if math.isfinite(k.ratio)]
    if not ratios:
        return Sweep(reports, math.nan, math.nan)
    return Sweep(reports, min(ratios), max(ratios))


# -- E and F -------------------------------------------------------------------


def e_operator(f: PiecewiseFn) -> PiecewiseFn:
    """``f 1_[0,1)``."""
    return f.restrict(0.0, 1.0)


def _cell_average(f, n):
    val = power_integral(f, 1.0, 1.0, float(n), float(n + 1))
    if math.isinf(val):
        raise Divergent(f"f is not integrable on [{n}, {n + 1})")
    return val


def f_operator(f: PiecewiseFn, cells: Optional[int] = None) -> StepFn:
    """Averages of ``f`` over the cells ``[n, n+1)``, ``n >= 1``; zero on ``[0, 1)``.

    Infinite support needs ``cells``, the number of cells to keep.
    """
    end = f.support_end
    if math.isinf(end) and cells is None:
        raise ValueError("f has infinite support; pass cells= to truncate")
    last = int(math.ceil(end)) - 1 if math.isfinite(end) else cells
    if cells is not None:
        last = min(last, cells)
    edges = [float(n) for n in range(1, max(last, 0) + 2)]
    values = [_cell_average(f, n) for n in range(1, max(last, 0) + 1)]
    if len(edges) < 2:
        return StepFn()
    return StepFn.from_grid(edges, values)


def ef_value(fstar: PiecewiseFn, x):
    """``(E + F) f*`` at the points ``x``, without building the whole step function."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xs)
    for i, v in enumerate(xs):
        out[i] = float(evaluate(fstar, v)) if v < 1 else _cell_average(fstar, int(math.floor(v)))
    return out


def default_grid(n: int = 200) -> np.ndarray:
    return np.geomspace(1e-3, 1e3, n)


def sandwich_check(f: PiecewiseFn, grid: Optional[Sequence[float]] = None) -> bool:
    """``f*(2x) <= (E + F) f*(x) <= f*(x/2)`` at every grid point."""
    xs = default_grid() if grid is None else np.asarray(grid, dtype=float)
    fstar = rearrange(f)
    mid = ef_value(fstar, xs)
    lo = np.asarray(evaluate(fstar, 2.0 * xs), dtype=float)
    hi = np.asarray(evaluate(fstar, 0.5 * xs), dtype=float)
    slack = 1e-12
    return bool(np.all(lo <= mid * (1 + slack) + 1e-300) and np.all(mid <= hi * (1 + slack) + 1e-300))


# -- sum space against the Holmstedt space -------------------------------------


def hypothesis_corpus() -> dict[str, dict[str, PiecewiseFn]]:
    """Functions living in ``[0, 1]`` and integer-cell steps on ``[1, inf)``."""
    head = {f"chi_0_{2.0 ** -j:g}": PiecewiseFn.indicator(0.0, 2.0 ** -j) for j in range(0, 11)}
    head["chi_quarter_half"] = PiecewiseFn.indicator(0.25, 0.5)
    head["step_0_1"] = StepFn.from_grid([0.0, 0.1, 0.5, 1.0], [3.0, 1.0, 0.2])
    cells = {f"chi_1_{1 + n}": StepFn.from_grid([1.0, 1.0 + n], [1.0]) for n in (1, 2, 4, 16, 64)}
    cells["cells_decreasing"] = StepFn.from_grid([1.0, 2.0, 3.0, 5.0], [2.0, 1.0, 0.5])
    cells["cells_tall"] = StepFn.from_grid([3.0, 4.0], [10.0])
    return {"head": head, "cells": cells}


HYPOTHESES = ("stated", "proof")


def embedding_constant(X, Y, corpus=None, hypotheses: str = "stated") -> float:
    """Measured ``c1`` for the two embedding hypotheses.

    ``"stated"``: ``||g||_Y <= c1 ||g||_X`` on ``[0, 1]`` and ``||g||_X <= c1 ||g||_Y``
    on integer-cell steps.  ``"proof"``: the transposed pair, which is what the
    argument through ``E`` and ``F`` actually consumes.

    Raises :class:`HypothesisFailed` when a ratio is infinite or the thin
    indicators show it growing without bound.
    """
    if hypotheses not in HYPOTHESES:
        raise ValueError(f"hypotheses must be one of {HYPOTHESES}")
    corpus = hypothesis_corpus() if corpus is None else corpus
    pairs = {"head": (X, Y), "cells": (Y, X)}
    if hypotheses == "proof":
        pairs = {"head": (Y, X), "cells": (X, Y)}
    best = 0.0
    for group, (A, B) in pairs.items():
        prev = None
        for name, g in corpus[group].items():
            den = norm(A, g)
            val = norm(B, g) / den if den > 0 else INF
            if not math.isfinite(val):
                raise HypothesisFailed(f"embedding ratio is infinite on {name}", name)
            if group == "head" and name.startswith("chi_0_"):
                if prev is not None and val > prev * 1.01 and val > 1.0:
                    raise HypothesisFailed(f"embedding ratio grows on {name}: {prev:g} -> {val:g}", name)
                prev = val
            best = max(best, val)
    return best


@dataclass(frozen=True)
class Theorem7Report:
    c1: float
    c2: float
    c3: float
    norm_sum: float
    norm_h: float
    chain_ok: bool
    corpus: tuple = field(default=(), compare=False)

    @property
    def bound(self):
        return 2.0 * self.c1 * self.c2 * self.c3


def holmstedt_norm(X, Y, f: PiecewiseFn) -> float:
    fstar = rearrange(f)
    return norm(X, fstar.restrict(0.0, 1.0)) + norm(Y, fstar.restrict(1.0))


def theorem7_verify(
    X, Y, f: PiecewiseFn, cut_count: int = 64, corpus=None, trials: int = 200, hypotheses: str = "stated"
) -> Theorem7Report:
    """Both inequalities ``||f||_{X+Y} <= ||f||_H <= 2 c1 c2 c3 ||f||_{X+Y}`` with measured constants.

    ``chain_ok`` is an honest evaluation: under the stated hypotheses the
    right inequality can fail (a head in ``Y`` but not in ``X`` has finite
    sum norm and infinite ``H`` norm).
    """
    if not (isinstance(X, Lorentz) and isinstance(Y, Lorentz)):
        raise InvalidSpec("theorem7_verify needs Lorentz X and Y")
    corpus = hypothesis_corpus() if corpus is None else corpus
    c1 = embedding_constant(X, Y, corpus, hypotheses)
    c2 = max(dilation_norm(X, 0.25, {"one": PiecewiseFn.indicator(0.0, 1.0)}),
             dilation_norm(Y, 0.25, {"one": PiecewiseFn.indicator(0.0, 1.0)}))
    c3 = max(quasi_triangle_constant(X, trials), quasi_triangle_constant(Y, trials))
    n_sum = decompose_sum(X, Y, f, cut_count).value
    n_h = holmstedt_norm(X, Y, f)
    tol = 1e-12
    ok = n_sum <= n_h * (1 + tol) and n_h <= 2 * c1 * c2 * c3 * n_sum * (1 + tol)
    names = tuple(sorted(k for grp in corpus.values() for k in grp))
    return Theorem7Report(c1, c2, c3, n_sum, n_h, ok, names)
