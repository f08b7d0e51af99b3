"""The six Hardy operators and the closed form of their iterates.

For finite ``r`` every variant is a linear map on ``g = (f*)**r``::

    Upper(p, r):  (Hf)^r(t) = t^{-b} int_0^t g(s) d(s^b),    b = r/p
    Lower(q, r):  (Hf)^r(t) = t^{-b} int_t^inf g(s) d(s^b),  b = r/q
    Lower(inf,r): (Hf)^r(t) = int_t^inf g(s) ds/s

and both maps send piecewise sums of ``c t^g (log t)^j`` to sums of the
same shape.  When ``f*`` has no shifted pieces the output is therefore
carried exactly as a :class:`PowerLogFn`, and applying the operator again
stays exact.  Sup variants are evaluated pointwise by locating the supremum
analytically on each piece.  Anything else goes through quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from boydkit._quad import integrate_semi
from boydkit.monotone import Asymptote, MonotoneFn
from boydkit.piecewise import (
    INF,
    PiecewiseFn,
    evaluate,
    head_exponent,
    power_integral,
    rearrange,
    tail_exponent,
    weighted_sup,
)

_E_TOL = 1e-12


@dataclass(frozen=True)
class Upper:
    """``H^{(p,r)}``; ``r = inf`` is the sup variant."""

    p: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "r", float(self.r))
        if not (0 < self.p < INF):
            raise ValueError("Upper needs 0 < p < inf")
        if not self.r > 0:
            raise ValueError("r must be positive")

    @property
    def index(self):
        return self.p


@dataclass(frozen=True)
class Lower:
    """``H_{(q,r)}``; ``q = inf`` and ``r = inf`` are allowed."""

    q: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "r", float(self.r))
        if not self.q > 0:
            raise ValueError("q must be positive or inf")
        if not self.r > 0:
            raise ValueError("r must be positive")

    @property
    def index(self):
        return self.q


HardyKind = Union[Upper, Lower]


def _inv(x):
    return 0.0 if math.isinf(x) else 1.0 / x


# -- power-log series ----------------------------------------------------------


def _merge(terms):
    out = []
    for c, g, j in sorted(terms, key=lambda x: (x[1], x[2])):
        if c == 0:
            continue
        if out and abs(out[-1][1] - g) <= _E_TOL * max(1.0, abs(g)) and out[-1][2] == j:
            out[-1] = (out[-1][0] + c, out[-1][1], j)
            continue
        out.append((c, g, j))
    return [t for t in out if t[0] != 0]


def _eval_terms(terms, t):
    lt = math.log(t)
    return math.fsum(c * math.exp(g * lt) * lt ** j for c, g, j in terms)


def _antiderivative(terms, beta):
    # weighted antiderivative of sum c s^g (ln s)^j against w s^(beta-1) ds
    w = beta if beta != 0 else 1.0
    out = []
    for c, g, j in terms:
        e = g + beta
        if abs(e) <= _E_TOL:
            out.append((c * w / (j + 1), 0.0, j + 1))
            continue
        fact = 1.0
        for i in range(j + 1):
            # c s^e sum_i (-1)^i j!/(j-i)! (ln s)^(j-i) / e^(i+1)
            out.append(((-1) ** i * c * w * fact / e ** (i + 1), e, j - i))
            fact *= j - i
    return _merge(out)


def _exponents_ok_at_zero(terms, beta):
    return all(g + beta > _E_TOL for _, g, _ in terms)


def _exponents_ok_at_inf(terms, beta):
    return all(g + beta < -_E_TOL for _, g, _ in terms)


class PowerLogFn(MonotoneFn):
    """``h(t) = S(t)**(1/m)`` with ``S`` a piecewise sum of ``c t^g (log t)^j``.

    ``edges`` are the finite positive breaks ``b_1 < ... < b_K``; segment
    ``k`` covers ``[b_k, b_{k+1})`` with ``b_0 = 0`` and ``b_{K+1} = inf``.
    """

    def __init__(self, edges, segs, m, divergent=False):
        self.edges = tuple(float(b) for b in edges)
        self.segs = tuple(tuple(s) for s in segs)
        self.m = float(m)
        self.divergent = divergent
        if not divergent and len(self.segs) != len(self.edges) + 1:
            raise ValueError("need one segment more than edges")

    @classmethod
    def from_fstar(cls, fstar: PiecewiseFn, r: float):
        """Series for ``g = f*^r``; requires unshifted pieces."""
        edges, segs = [], []
        for p in fstar.pieces:
            if not p.is_constant and p.shift != 0:
                raise ValueError("shifted pieces have no power-log series")
            kappa = 0.0 if p.is_constant else p.exp * r
            segs.append([(p.coef ** r, kappa, 0)])
            if math.isfinite(p.hi):
                edges.append(p.hi)
        if not fstar.pieces or math.isfinite(fstar.pieces[-1].hi):
            segs.append([])
        return cls(edges, segs, r)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if self.divergent:
            out = np.full_like(t_arr, INF)
            return float(out) if out.ndim == 0 else out
        flat = np.atleast_1d(t_arr).ravel()
        seg = np.searchsorted(np.asarray(self.edges), flat, side="right")
        out = np.zeros_like(flat)
        with np.errstate(all="ignore"):
            lt = np.log(flat)
            for k in np.unique(seg):
                mask = seg == k
                x = lt[mask]
                acc = np.zeros_like(x)
                for c, g, j in self.segs[k]:
                    acc += c * np.exp(g * x) * x ** j
                out[mask] = acc
            out = np.maximum(out, 0.0) ** (1.0 / self.m)
        out = out.reshape(t_arr.shape)
        return float(out) if out.ndim == 0 else out

    def breaks(self):
        return list(self.edges)

    def head(self):
        if self.divergent:
            return Asymptote(-INF)
        terms = self.segs[0]
        if not terms:
            return None
        _, g, j = min(terms, key=lambda x: (x[1], -x[2]))
        return Asymptote(g / self.m, j / self.m)

    def tail(self):
        if self.divergent:
            return Asymptote(INF)
        terms = self.segs[-1]
        if not terms:
            return None
        _, g, j = max(terms, key=lambda x: (x[1], x[2]))
        return Asymptote(g / self.m, j / self.m)

    def power_series(self, r):
        """Segments of ``h**r`` as power-log sums, or ``None`` if not representable."""
        if abs(r - self.m) <= _E_TOL * self.m:
            return [list(s) for s in self.segs]
        out = []
        for s in self.segs:
            if len(s) > 1 or (s and s[0][2] != 0):
                return None
            out.append([(s[0][0] ** (r / self.m), s[0][1] * r / self.m, 0)] if s else [])
        return out


def _upper_series(edges, segs, beta, r):
    if segs[0] and not _exponents_ok_at_zero(segs[0], beta):
        return PowerLogFn(edges, [], r, divergent=True)
    lows = [0.0] + list(edges)
    cum = 0.0
    out = []
    for k, terms in enumerate(segs):
        anti = _antiderivative(terms, beta)
        base = 0.0 if k == 0 or not anti else _eval_terms(anti, lows[k])
        new = [(cum - base, -beta, 0)] + [(c, e - beta, j) for c, e, j in anti]
        out.append(_merge(new))
        if k + 1 < len(segs):
            top = _eval_terms(anti, edges[k]) if anti else 0.0
            cum += top - base
    return PowerLogFn(edges, out, r)


def _lower_series(edges, segs, beta, r):
    last = segs[-1]
    if last and not _exponents_ok_at_inf(last, beta):
        return PowerLogFn(edges, [], r, divergent=True)
    lows = [0.0] + list(edges)
    out = [None] * len(segs)
    above = 0.0  # weighted integral of g above the current segment
    for k in range(len(segs) - 1, -1, -1):
        anti = _antiderivative(segs[k], beta)
        const = above
        if k < len(segs) - 1 and anti:
            const += _eval_terms(anti, edges[k])
        out[k] = _merge([(const, -beta, 0)] + [(-c, e - beta, j) for c, e, j in anti])
        if k > 0:
            above = const - (_eval_terms(anti, lows[k]) if anti else 0.0)
    return PowerLogFn(edges, out, r)


# -- pointwise variants --------------------------------------------------------


def _ends(source):
    """``(head exponent, tail exponent or None)`` of a nonincreasing source."""
    if isinstance(source, PiecewiseFn):
        return head_exponent(source), tail_exponent(source)
    h, t = source.head(), source.tail()
    return (0.0 if h is None else h.exponent), (None if t is None else t.exponent)


def _asymptotes(kind, source):
    """``(divergent, head, tail)`` for a Hardy output from the source's end exponents."""
    a0, a_inf = _ends(source)
    r = kind.r
    if isinstance(kind, Upper):
        w = 1.0 / kind.p
        if a0 + w < 0 or (math.isfinite(r) and a0 + w <= 0):
            return True, None, None
        head = Asymptote(a0)
        if a_inf is None:
            tail = Asymptote(-w)
        elif a_inf + w > 0:
            tail = Asymptote(a_inf)
        elif a_inf + w < 0 or math.isinf(r):
            tail = Asymptote(-w)
        else:
            tail = Asymptote(-w, 1.0 / r)
        return False, head, tail
    w = _inv(kind.q)
    if a_inf is not None and (a_inf + w > 0 or (math.isfinite(r) and a_inf + w >= 0)):
        return True, None, None
    tail = None if a_inf is None else Asymptote(a_inf)
    if math.isinf(r):
        head = Asymptote(min(a0, -w))
    elif a0 + w > 0:
        head = Asymptote(-w)
    elif a0 + w < 0:
        head = Asymptote(a0)
    else:
        head = Asymptote(-w, 1.0 / r)
    return False, head, tail


class _PointwiseHardy(MonotoneFn):
    def __init__(self, kind, source):
        self.kind = kind
        self.source = source
        self.divergent, self._head, self._tail = _asymptotes(kind, source)

    def head(self):
        return self._head

    def tail(self):
        return self._tail

    def breaks(self):
        src = self.source
        return list(src.breaks())

    def _point(self, t):
        raise NotImplementedError

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if self.divergent:
            out = np.full_like(t_arr, INF)
        else:
            out = np.array([self._point(float(x)) for x in t_arr.ravel()]).reshape(t_arr.shape)
        return float(out) if out.ndim == 0 else out


class SupHardyFn(_PointwiseHardy):
    """``Upper(p, inf)`` and ``Lower(q, inf)`` evaluated by exact piecewise suprema."""

    def _point(self, t):
        if isinstance(self.kind, Upper):
            w = 1.0 / self.kind.p
            m = weighted_sup(self.source, w, 0.0, t)
        else:
            w = _inv(self.kind.q)
            m = weighted_sup(self.source, w, t, INF)
        return m * t ** (-w) if m > 0 else 0.0


def _inner_numeric(source, r, beta, a, b):
    w = beta if beta != 0 else 1.0
    if isinstance(source, PiecewiseFn):
        return power_integral(source, r, beta, a, b)
    pts = [a] + [x for x in source.breaks() if a < x < b] + [b]

    def g(s):
        return np.asarray(source(s), dtype=float) ** r * w * s ** (beta - 1.0)

    return math.fsum(integrate_semi(g, x, y) for x, y in zip(pts[:-1], pts[1:]))


class NumericHardyFn(_PointwiseHardy):
    """Finite-``r`` variants by quadrature, for sources without a power-log series."""

    def _point(self, t):
        kind, r = self.kind, self.kind.r
        if isinstance(kind, Upper):
            beta = r / kind.p
            inner = _inner_numeric(self.source, r, beta, 0.0, t)
        else:
            beta = r * _inv(kind.q)
            inner = _inner_numeric(self.source, r, beta, t, INF)
        if math.isinf(inner):
            return INF
        return t ** (-beta / r) * max(inner, 0.0) ** (1.0 / r)


# -- public operations ---------------------------------------------------------


def _beta(kind):
    return kind.r / kind.p if isinstance(kind, Upper) else kind.r * _inv(kind.q)


def apply(kind: HardyKind, f):
    """``H f`` as an evaluable nonincreasing function of ``t``.

    ``f`` may be a :class:`PiecewiseFn` (rearranged first) or a
    nonincreasing :class:`MonotoneFn`.  ``Lower(inf, inf)`` returns ``f*``
    itself.  Divergence shows up as ``+inf`` values, never as an exception.
    """
    if isinstance(f, PiecewiseFn):
        source = rearrange(f)
    elif isinstance(f, MonotoneFn):
        source = f
    else:
        raise TypeError(f"cannot apply a Hardy operator to {type(f).__name__}")
    if isinstance(kind, Lower) and math.isinf(kind.q) and math.isinf(kind.r):
        return source
    if getattr(source, "divergent", False):
        return PowerLogFn([], [], kind.r, divergent=True)
    if math.isinf(kind.r):
        if not isinstance(source, PiecewiseFn):
            raise TypeError("sup variants need a piecewise-power input")
        return SupHardyFn(kind, source)
    series = None
    if isinstance(source, PiecewiseFn):
        if all(p.is_constant or p.shift == 0 for p in source.pieces):
            base = PowerLogFn.from_fstar(source, kind.r)
            edges, series = base.edges, base.power_series(kind.r)
    elif isinstance(source, PowerLogFn) and not source.divergent:
        edges, series = source.edges, source.power_series(kind.r)
    if series is None:
        return NumericHardyFn(kind, source)
    beta = _beta(kind)
    if isinstance(kind, Upper):
        return _upper_series(edges, series, beta, kind.r)
    return _lower_series(edges, series, beta, kind.r)


class IteratedHardyFn:
    """``(H^{(p,r)})^{n+1} f`` from the log-kernel integral, by quadrature."""

    def __init__(self, p, r, n, fstar: PiecewiseFn):
        self.p, self.r, self.n = float(p), float(r), int(n)
        self.fstar = fstar
        self.beta = self.r / self.p
        self.divergent = _asymptotes(Upper(p, r), fstar)[0]

    def _point(self, t):
        beta, n, r = self.beta, self.n, self.r
        norm = math.factorial(n)
        parts = []
        for p in self.fstar.pieces:
            a, b = p.lo, min(p.hi, t)
            if not a < b:
                continue

            def kernel(s, p=p):
                return (
                    np.asarray(p.value(s), dtype=float) ** r
                    * (beta * np.log(t / s)) ** n / norm
                    * beta * s ** (beta - 1.0)
                )

            sig = p.shift

            def near_a(d, p=p, a=a, sig=sig):
                s = a + d
                val = p.coef * np.abs((a - sig) + d) ** p.exp if not p.is_constant else p.coef
                return val ** r * (beta * np.log(t / s)) ** n / norm * beta * s ** (beta - 1.0)

            parts.append(integrate_semi(kernel, a, b, near_a=near_a))
        inner = math.fsum(parts)
        return t ** (-1.0 / self.p) * max(inner, 0.0) ** (1.0 / r)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if self.divergent:
            out = np.full_like(t_arr, INF)
        else:
            out = np.array([self._point(float(x)) for x in t_arr.ravel()]).reshape(t_arr.shape)
        return float(out) if out.ndim == 0 else out


def iterated_apply(p: float, r: float, n: int, f: PiecewiseFn) -> IteratedHardyFn:
    """``(H^{(p,r)})^{n+1} f`` via ``t^{-1/p} (int_0^t (log (t/s)^{r/p})^n / n! f*^r d s^{r/p})^{1/r}``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not (0 < r < INF):
        raise ValueError("the iteration formula needs finite r")
    return IteratedHardyFn(p, r, n, rearrange(f))


def dilation_minorant(p: float, r: float, n: int, a: float, f: PiecewiseFn, t: float) -> float:
    """``(a^{r/p} (log a^{-r/p})^n / n!)^{1/r} f*(a t)``, a lower bound for the ``(n+1)``-th iterate at ``t``."""
    if not 0 < a < 1:
        raise ValueError("need 0 < a < 1")
    beta = r / p
    fstar = rearrange(f)
    weight = a ** beta * (-beta * math.log(a)) ** n / math.factorial(n)
    return weight ** (1.0 / r) * float(evaluate(fstar, a * t))
