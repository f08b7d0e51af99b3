"""Piecewise-power functions on the half line.

A :class:`PiecewiseFn` is a finite collection of :class:`PowerPiece` objects
on disjoint right-open intervals.  A piece carries the value
``coef * |s - shift|**exp`` on ``[lo, hi)``; ``shift`` lies outside the open
interval, so every piece is monotone.  The shift is what keeps the class
closed under rearrangement: the rearrangement of ``s**-0.5`` on ``[1, 4)`` is
``(s + 1)**-0.5`` on ``[0, 3)``.

Everything here is exact floating point arithmetic on closed forms, apart
from :func:`power_integral` on shifted non-constant pieces with a measure
``d(s**beta)``, ``beta != 1``, which has no elementary antiderivative and
falls back to adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from boydkit._quad import integrate_semi

INF = math.inf
EQ_TOL = 1e-12


class NonVanishing(ValueError):
    """The distribution function is infinite at a positive level."""


class NotRepresentable(ValueError):
    """The rearrangement leaves the piecewise-power class."""


def _pow(x, y):
    with np.errstate(all="ignore"):
        return float(np.float64(x) ** y)


def _close(x, y, tol=EQ_TOL):
    if x == y:
        return True
    if math.isinf(x) or math.isinf(y):
        return False
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class PowerPiece:
    lo: float
    hi: float
    coef: float
    exp: float = 0.0
    shift: float = 0.0

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "coef", float(self.coef))
        object.__setattr__(self, "exp", float(self.exp))
        object.__setattr__(self, "shift", float(self.shift))
        if not (lo >= 0 and math.isfinite(lo)):
            raise ValueError(f"piece lower end must be finite and >= 0, got {lo}")
        if not lo < hi:
            raise ValueError(f"empty piece [{lo}, {hi})")
        if not self.coef >= 0 or math.isinf(self.coef):
            raise ValueError(f"piece coefficient must be finite and >= 0, got {self.coef}")
        if math.isinf(hi) and self.coef > 0 and self.exp >= 0:
            raise ValueError("a piece reaching infinity must decay (exp < 0)")
        if self.exp != 0 and lo < self.shift < hi:
            raise ValueError(f"shift {self.shift} lies inside [{lo}, {hi})")

    @property
    def mirrored(self):
        return self.exp != 0 and self.shift >= self.hi

    @property
    def is_constant(self):
        return self.exp == 0 or self.coef == 0

    def value(self, s):
        s = np.asarray(s, dtype=float)
        if self.is_constant:
            return np.full_like(s, self.coef)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return self.coef * np.abs(s - self.shift) ** self.exp

    def distances(self):
        """Range ``(dlo, dhi)`` of ``|s - shift|`` over the piece."""
        if self.mirrored:
            return self.shift - self.hi, self.shift - self.lo
        return self.lo - self.shift, self.hi - self.shift

    def value_range(self):
        """``(inf, sup)`` of the piece values."""
        if self.is_constant:
            return self.coef, self.coef
        dlo, dhi = self.distances()
        at_lo = self.coef * _pow(dlo, self.exp) if dlo > 0 else (INF if self.exp < 0 else 0.0)
        at_hi = self.coef * _pow(dhi, self.exp) if math.isfinite(dhi) else 0.0
        return (at_hi, at_lo) if self.exp < 0 else (at_lo, at_hi)

    def measure_above(self, level):
        """Lebesgue measure of ``{s in [lo, hi): value(s) > level}``."""
        if level <= 0:
            return self.hi - self.lo if self.coef > 0 else 0.0
        if self.is_constant:
            return self.hi - self.lo if self.coef > level else 0.0
        dlo, dhi = self.distances()
        d = _pow(level / self.coef, 1.0 / self.exp)
        d = min(max(d, dlo), dhi)
        return d - dlo if self.exp < 0 else dhi - d

    def dilate(self, a):
        coef = self.coef if self.is_constant else self.coef * _pow(a, self.exp)
        return PowerPiece(self.lo / a, self.hi / a, coef, self.exp, self.shift / a)

    def clip(self, lo, hi):
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        if not lo < hi:
            return None
        return PowerPiece(lo, hi, self.coef, self.exp, self.shift)


def _canonical(pieces):
    out = []
    for p in sorted(pieces, key=lambda p: p.lo):
        if p.coef == 0:
            continue
        if p.is_constant and p.shift != 0:
            p = PowerPiece(p.lo, p.hi, p.coef, 0.0, 0.0)
        if out:
            q = out[-1]
            if p.lo < q.hi and not _close(p.lo, q.hi):
                raise ValueError(f"pieces [{q.lo}, {q.hi}) and [{p.lo}, {p.hi}) overlap")
            # constant pieces merge only when exactly equal, keeping step
            # rearrangements measure-exact; power pieces merge across rounding
            if p.lo == q.hi and p.coef == q.coef and p.is_constant and q.is_constant:
                out[-1] = PowerPiece(q.lo, p.hi, q.coef)
                continue
            # a mirrored piece keeps the right-hand shift so it stays past the merged end
            shift = p.shift if q.mirrored else q.shift
            if (
                not p.is_constant
                and _close(p.lo, q.hi)
                and _close(p.coef, q.coef)
                and p.exp == q.exp
                and _close(p.shift, q.shift)
                and not q.lo < shift < p.hi
            ):
                out[-1] = PowerPiece(q.lo, p.hi, q.coef, q.exp, shift)
                continue
        out.append(p)
    return tuple(out)


def _without_slivers(pieces, scale):
    """``(lo, hi, coef, exp, shift)`` tuples with pieces a few ulps of ``scale`` wide removed and their gaps closed."""

    def sliver(lo, hi):
        return math.isfinite(hi) and hi - lo <= 4 * math.ulp(scale)

    out = []
    for p in pieces:
        if sliver(p.lo, p.hi):
            continue
        if out:
            lo, hi, coef, exp, shift = out[-1]
            if (sliver(hi, p.lo) or hi == p.lo) and exp == p.exp and _close(coef, p.coef) and _close(shift, p.shift):
                out[-1] = (lo, p.hi, coef, exp, shift)
                continue
        out.append((p.lo, p.hi, p.coef, p.exp, p.shift))
    return out


class PiecewiseFn:
    """Nonnegative piecewise-power function on ``(0, inf)``; zero off its pieces."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[PowerPiece] = ()):
        object.__setattr__(self, "pieces", _canonical(list(pieces)))

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseFn is immutable")

    @classmethod
    def power(cls, lo, hi, coef=1.0, exp=0.0, shift=0.0):
        return cls([PowerPiece(lo, hi, coef, exp, shift)])

    @classmethod
    def indicator(cls, lo, hi, height=1.0):
        return cls([PowerPiece(lo, hi, height)])

    @property
    def is_step(self):
        return all(p.is_constant for p in self.pieces)

    @property
    def is_zero(self):
        return not self.pieces

    @property
    def support_end(self):
        return self.pieces[-1].hi if self.pieces else 0.0

    def breaks(self):
        """Sorted finite positive piece endpoints."""
        pts = set()
        for p in self.pieces:
            pts.update(x for x in (p.lo, p.hi) if 0 < x < INF)
        return sorted(pts)

    def __call__(self, s):
        return evaluate(self, s)

    def __eq__(self, other):
        """Equal as functions up to rounding: matching pieces, ignoring slivers a few ulps wide."""
        if not isinstance(other, PiecewiseFn):
            return NotImplemented
        ends = [x for p in self.pieces + other.pieces for x in (p.lo, p.hi) if math.isfinite(x)]
        scale = max(ends, default=0.0)
        mine, theirs = _without_slivers(self.pieces, scale), _without_slivers(other.pieces, scale)
        if len(mine) != len(theirs):
            return False
        return all(_close(x, y) for p, q in zip(mine, theirs) for x, y in zip(p, q))

    __hash__ = None

    def __repr__(self):
        body = ", ".join(
            f"[{p.lo:g},{p.hi:g}):{p.coef:g}" + (f"|s-{p.shift:g}|^{p.exp:g}" if not p.is_constant else "")
            for p in self.pieces
        )
        return f"PiecewiseFn({body})"

    def scale(self, lam):
        if lam < 0:
            raise ValueError("only nonnegative scalings are supported")
        return PiecewiseFn(PowerPiece(p.lo, p.hi, p.coef * lam, p.exp, p.shift) for p in self.pieces)

    def restrict(self, lo, hi=INF):
        """Multiply by the indicator of ``[lo, hi)``."""
        return PiecewiseFn(q for p in self.pieces if (q := p.clip(lo, hi)) is not None)


class StepFn(PiecewiseFn):
    """A :class:`PiecewiseFn` whose pieces are all constant."""

    __slots__ = ()

    def __init__(self, pieces: Iterable[PowerPiece] = ()):
        super().__init__(pieces)
        if not self.is_step:
            raise ValueError("StepFn pieces must all be constant")

    @classmethod
    def from_grid(cls, edges: Sequence[float], values: Sequence[float]):
        if len(edges) != len(values) + 1:
            raise ValueError("need one more edge than values")
        return cls(PowerPiece(edges[i], edges[i + 1], v) for i, v in enumerate(values) if v != 0)


def as_step(f: PiecewiseFn) -> StepFn:
    return f if isinstance(f, StepFn) else StepFn(f.pieces)


def evaluate(f: PiecewiseFn, s):
    """Value of ``f`` at ``s`` (scalar or array); right-open intervals."""
    s_arr = np.asarray(s, dtype=float)
    out = np.zeros_like(s_arr)
    for p in f.pieces:
        mask = (s_arr >= p.lo) & (s_arr < p.hi)
        if mask.any():
            out[mask] = p.value(s_arr[mask])
    return float(out) if out.ndim == 0 else out


def _length(p) -> Fraction | float:
    """Exact length of a piece's interval."""
    return INF if math.isinf(p.hi) else Fraction(p.hi) - Fraction(p.lo)


def _exact_sum(terms) -> float:
    """Correctly rounded sum of floats and exact fractions."""
    total = Fraction(0)
    for t in terms:
        if isinstance(t, float) and math.isinf(t):
            return INF
        total += Fraction(t)
    return float(total)


def distribution(f: PiecewiseFn, level: float) -> float:
    """Measure of ``{s : f(s) > level}``."""
    if level < 0:
        raise ValueError("level must be >= 0")
    return _exact_sum(
        (_length(p) if p.coef > level else 0.0) if p.is_constant else p.measure_above(level) for p in f.pieces
    )


def dilate(f: PiecewiseFn, a: float) -> PiecewiseFn:
    """``(D_a f)(t) = f(a t)``."""
    if not a > 0:
        raise ValueError("dilation parameter must be positive")
    if a == 1:
        return f
    # a piece a few ulps wide can round to an empty interval; it carries no measure
    out = PiecewiseFn(p.dilate(a) for p in f.pieces if p.lo / a < p.hi / a)
    return StepFn(out.pieces) if isinstance(f, StepFn) else out


def _snap_levels(values, exact=False):
    # merge levels that agree to EQ_TOL so that continuous joins do not leave slivers;
    # step functions have no joins and keep every distinct level
    levels = []
    for v in sorted(set(values), reverse=True):
        if levels and (levels[-1] == v if exact else _close(levels[-1], v)):
            continue
        levels.append(v)
    return levels


def _level_index(levels, v):
    for i, w in enumerate(levels):
        if w == v:
            return i
    for i, w in enumerate(levels):
        if _close(w, v):
            return i
    raise AssertionError("level missing")


def _join_error(p: PowerPiece, x: float, scale: float) -> float:
    """Relative rounding error of ``p`` at its endpoint ``x`` when positions carry errors of order ``eps * scale``."""
    if p.is_constant:
        return 0.0
    d = abs(x - p.shift)
    if d == 0 or math.isinf(x):
        return 0.0
    # endpoint and shift each carry a few ulps of the largest coordinate
    return abs(p.exp) * 16 * np.finfo(float).eps * max(abs(x), abs(p.shift), scale) / d


def _is_rearranged(f: PiecewiseFn) -> bool:
    # contiguous from 0, every piece nonincreasing, no upward jump at a join
    prev = None
    for p in f.pieces:
        if p.lo != (0.0 if prev is None else prev.hi):
            return False
        if not (p.is_constant or (p.exp < 0 and p.shift <= p.lo) or (p.exp > 0 and p.mirrored)):
            return False
        below, above = prev.value_range()[0] if prev else INF, p.value_range()[1]
        # power pieces get rounding slack at joins; steps must not rise at all
        if below < above:
            if p.is_constant and (prev is None or prev.is_constant):
                return False
            scale = max((abs(v) for q in f.pieces for v in (q.lo, q.hi, q.shift) if math.isfinite(v)), default=0.0)
            slack = EQ_TOL + _join_error(p, p.lo, scale) + (_join_error(prev, prev.hi, scale) if prev else 0.0)
            if not _close(below, above, slack):
                return False
        prev = p
    return True


def rearrange(f: PiecewiseFn) -> PiecewiseFn:
    """Decreasing rearrangement ``f*(s) = inf{t >= 0 : distribution(f, t) <= s}``.

    Within a band of values where several non-constant pieces are active they
    must share one exponent; otherwise the result is not a piecewise power
    and :class:`NotRepresentable` is raised.
    """
    if f.is_zero:
        return StepFn() if isinstance(f, StepFn) else PiecewiseFn()
    if _is_rearranged(f):
        return f if isinstance(f, StepFn) or not f.is_step else StepFn(f.pieces)
    ranges = [p.value_range() for p in f.pieces]
    levels = _snap_levels([v for r in ranges for v in r] + [0.0], exact=f.is_step)
    idx = [(_level_index(levels, vmax), _level_index(levels, vmin)) for vmin, vmax in ranges]
    out = []
    s = 0.0
    for j, level in enumerate(levels):
        if math.isfinite(level) and level > 0:
            # a power piece whose value range snaps to one level counts as part of the atom
            atom = _exact_sum(
                _length(p) for p, (imax, imin) in zip(f.pieces, idx) if imax == j and (p.is_constant or imin == j)
            )
            if math.isinf(atom):
                raise NonVanishing(f"level {level} has infinite measure")
            if atom > 0:
                # right end is the measure of {f >= level}, summed exactly and rounded once
                end = _exact_sum(
                    _length(p) if (p.is_constant or imin <= j) else p.measure_above(level)
                    for p, (imax, imin) in zip(f.pieces, idx)
                    if imax <= j
                )
                # an atom narrower than the spacing of floats near s has no width to occupy
                if end > s:
                    out.append(PowerPiece(s, end, level))
                    s = end
        if j + 1 >= len(levels):
            break
        active = [p for p, (imax, imin) in zip(f.pieces, idx) if not p.is_constant and imax <= j and imin >= j + 1]
        if not active:
            continue
        alpha = active[0].exp
        if any(p.exp != alpha for p in active):
            raise NotRepresentable(
                f"pieces with exponents {sorted({p.exp for p in active})} overlap in value on "
                f"({levels[j + 1]:g}, {level:g})"
            )
        full = math.fsum(
            p.hi - p.lo
            for p, (imax, imin) in zip(f.pieces, idx)
            if (p.is_constant and imax <= j) or (not p.is_constant and imin <= j)
        )
        k0_terms, k = [full], 0.0
        for p in active:
            dlo, dhi = p.distances()
            w = _pow(p.coef, -1.0 / alpha)
            if alpha < 0:
                k += w
                k0_terms.append(-dlo)
            else:
                k -= w
                k0_terms.append(dhi)
        k0 = math.fsum(k0_terms)
        low = levels[j + 1]
        if low == 0:
            end = INF if alpha < 0 else k0
        else:
            end = k0 + k * _pow(low, 1.0 / alpha)
        if abs(k0) <= EQ_TOL * max(1.0, abs(s)):
            k0 = 0.0
        # shift must stay outside [s, end)
        k0 = min(k0, s) if alpha < 0 else max(k0, end)
        if end > s:
            out.append(PowerPiece(s, end, _pow(abs(k), -alpha), alpha, k0))
            s = end
    result = PiecewiseFn(out)
    return StepFn(result.pieces) if result.is_step else result


def _log_ratio_power(a, b, e):
    # (b**e - a**e) / e, accurate for small e; 0 < a < b < inf
    return math.exp(e * math.log(a)) * math.expm1(e * math.log(b / a)) / e


def _power_segment(c, kappa, beta, a, b):
    # c * w * integral_a^b s**(kappa + beta - 1) ds with w = beta (or 1 when beta == 0)
    w = beta if beta != 0 else 1.0
    e = kappa + beta
    if e == 0:
        if a == 0 or math.isinf(b):
            return INF
        return c * w * math.log(b / a)
    if e > 0:
        if math.isinf(b):
            return INF
        if a == 0:
            return c * w * b ** e / e
        return c * w * _log_ratio_power(a, b, e)
    if a == 0:
        return INF
    if math.isinf(b):
        return c * w * a ** e / (-e)
    return c * w * _log_ratio_power(a, b, e)


def _piece_integral(p: PowerPiece, r, beta, a, b):
    if p.coef == 0:
        return 0.0
    cr = _pow(p.coef, r)
    kappa = 0.0 if p.is_constant else p.exp * r
    if kappa == 0:
        if beta == 0:
            return _power_segment(cr, 0.0, 0.0, a, b)
        if math.isinf(b):
            return INF
        return cr * (b ** beta - a ** beta) if a == 0 else cr * _log_ratio_power(a, b, beta) * beta
    if p.shift == 0:
        return _power_segment(cr, kappa, beta, a, b)
    sig = p.shift
    if beta == 1:
        ulo, uhi = sorted((abs(a - sig), abs(b - sig)))
        return _power_segment(cr, kappa, 1.0, ulo, uhi)
    # numeric fallback; decide divergence from endpoint exponents first
    touches_shift = (a == sig) or (b == sig)
    if touches_shift and kappa <= -1:
        return INF
    if a == 0 and beta == 0:
        return INF
    if math.isinf(b) and kappa + beta >= 0:
        return INF
    c = cr * (beta if beta != 0 else 1.0)
    return c * (_shifted_left(kappa, beta, sig, a, b) + _shifted_right(kappa, beta, sig, a, b))


# Shifted pieces: integral of |s - sig|**kappa * s**(beta - 1) split at a midpoint.
# At a singular end the leading power is integrated in closed form and only the
# remainder, one power smaller, goes to quadrature; exponential substitution
# alone cannot sample below the underflow threshold, which loses whole digits
# when the endpoint exponent is close to -1.


def _midpoint(a, b):
    return (2.0 * a if a > 0 else 1.0) if math.isinf(b) else 0.5 * (a + b)


def _shifted_left(kappa, beta, sig, a, b):
    D = _midpoint(a, b) - a
    be = beta - 1.0
    if a == sig:
        main = sig ** be * D ** (kappa + 1.0) / (kappa + 1.0)

        def rem(d):
            return d ** kappa * sig ** be * np.expm1(be * np.log1p(d / sig))
    elif a == 0:
        main = abs(sig) ** kappa * D ** beta / beta

        def rem(d):
            return d ** be * abs(sig) ** kappa * np.expm1(kappa * np.log1p(-d / sig))
    else:
        main = 0.0

        def rem(d):
            return np.abs(a + d - sig) ** kappa * (a + d) ** be
    return main + integrate_semi(rem, 0.0, D)


def _shifted_right(kappa, beta, sig, a, b):
    m = _midpoint(a, b)
    be = beta - 1.0
    if math.isinf(b):
        e = kappa + beta
        main = m ** e / (-e)

        def rem(s):
            return s ** (e - 1.0) * np.expm1(kappa * np.log1p(-sig / s))
        return main + integrate_semi(rem, m, INF)
    D = b - m
    if b == sig:
        main = sig ** be * D ** (kappa + 1.0) / (kappa + 1.0)

        def rem(d):
            return d ** kappa * sig ** be * np.expm1(be * np.log1p(-d / sig))
    else:
        main = 0.0

        def rem(d):
            return np.abs(b - d - sig) ** kappa * (b - d) ** be
    return main + integrate_semi(rem, 0.0, D)


def power_integral(f: PiecewiseFn, r: float, beta: float, lo: float = 0.0, hi: float = INF) -> float:
    """``integral_lo^hi f(s)**r d(s**beta)``, i.e. ``beta * integral f**r s**(beta-1) ds``.

    ``beta == 0`` selects the logarithmic measure ``ds / s``.  Divergent
    integrals return ``inf``.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    if beta < 0:
        raise ValueError("beta must be >= 0 (0 selects ds/s)")
    if not lo < hi:
        return 0.0
    parts = []
    for p in f.pieces:
        a, b = max(lo, p.lo), min(hi, p.hi)
        if a < b:
            parts.append(_piece_integral(p, r, beta, a, b))
    if any(math.isinf(x) for x in parts):
        return INF
    return math.fsum(parts)


def _phi_log(p: PowerPiece, w, s):
    # log of s**w * value(s), with limits at s = 0, s = shift and s = inf
    if p.coef == 0:
        return -INF
    lc = math.log(p.coef)
    alpha = 0.0 if p.is_constant else p.exp
    sig = 0.0 if p.is_constant else p.shift
    if math.isinf(s):
        e = w + alpha
        return INF if e > 0 else (lc if e == 0 else -INF)
    if sig == 0:
        e = w + alpha
        if s == 0:
            return -INF if e > 0 else (lc if e == 0 else INF)
        return lc + e * math.log(s)
    out = lc
    if w != 0:
        out += w * math.log(s) if s > 0 else -INF
    if alpha != 0:
        d = abs(s - sig)
        out += alpha * math.log(d) if d > 0 else (-INF if alpha > 0 else INF)
    return out


def _piece_weighted_sup_log(p: PowerPiece, w, x, y):
    cands = [_phi_log(p, w, x), _phi_log(p, w, y)]
    if not p.is_constant and p.shift != 0 and w + p.exp != 0:
        crit = w * p.shift / (w + p.exp)
        if x < crit < y:
            cands.append(_phi_log(p, w, crit))
    return max(cands)


def weighted_sup(f: PiecewiseFn, w: float, a: float = 0.0, b: float = INF) -> float:
    """``sup_{a < s < b} s**w f(s)``, one-sided limits included, located analytically."""
    best = -INF
    for p in f.pieces:
        x, y = max(a, p.lo), min(b, p.hi)
        if x < y:
            best = max(best, _piece_weighted_sup_log(p, w, x, y))
    if best == -INF:
        return 0.0
    return INF if best == INF else math.exp(best)


def power_sum(fs: Sequence[PiecewiseFn], rho: float) -> StepFn:
    """Pointwise ``(sum_i f_i**rho)**(1/rho)`` of step functions on their common grid."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    fs = [as_step(f) for f in fs]
    if len(fs) == 1:
        return fs[0]
    edges = sorted({x for f in fs for p in f.pieces for x in (p.lo, p.hi)})
    if not edges:
        return StepFn()
    mids = [0.5 * (edges[i] + edges[i + 1]) for i in range(len(edges) - 1)]
    vals = np.zeros(len(mids))
    for f in fs:
        vals += np.asarray(evaluate(f, np.array(mids)), dtype=float) ** rho
    return StepFn.from_grid(edges, list(vals ** (1.0 / rho)))


def add_steps(f: PiecewiseFn, g: PiecewiseFn) -> StepFn:
    """Pointwise sum of two step functions."""
    return power_sum([f, g], 1.0)


def cap(fstar: PiecewiseFn, level: float) -> PiecewiseFn:
    """``min(f*, level)`` for a nonincreasing ``f*``."""
    if level <= 0:
        return PiecewiseFn()
    start = distribution(fstar, level)
    head = [PowerPiece(0.0, start, level)] if start > 0 else []
    return PiecewiseFn(head + list(fstar.restrict(start).pieces))


def head_exponent(fstar: PiecewiseFn) -> float:
    """Exponent ``a`` with ``f*(s) ~ c s**a`` as ``s -> 0``."""
    if fstar.is_zero:
        return 0.0
    p = fstar.pieces[0]
    if p.lo > 0 or p.is_constant or p.shift != 0:
        return 0.0
    return p.exp


def tail_exponent(fstar: PiecewiseFn):
    """Exponent at infinity, or ``None`` for bounded support."""
    if fstar.is_zero or math.isfinite(fstar.pieces[-1].hi):
        return None
    return fstar.pieces[-1].exp
