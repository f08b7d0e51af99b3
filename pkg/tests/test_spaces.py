import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from boydkit.piecewise import INF, PiecewiseFn, PowerPiece, StepFn, dilate, evaluate, rearrange
from boydkit.spaces import (
    MODES,
    HolmstedtSpace,
    InvalidSpec,
    Lorentz,
    SumSpace,
    best_split,
    cut_grid,
    decompose_sum,
    lemma6_check,
    norm,
    quasi_triangle_constant,
    split,
)
from conftest import power_fns, rel, step_fns

CHI01 = PiecewiseFn.indicator(0.0, 1.0)
lorentz = st.builds(
    Lorentz,
    st.sampled_from([0.5, 1.0, 1.5, 2.0, 4.0]),
    st.sampled_from([0.5, 1.0, 2.0, 3.0, INF]),
)


def quad_lorentz(X, f):
    """Lorentz norm of a step function by scipy quadrature of t^{q/p - 1} f*(t)^q."""
    fs = rearrange(f)
    if math.isinf(X.q):
        ts = np.linspace(1e-9, fs.support_end, 20001)
        return float(np.max(ts ** (1 / X.p) * np.asarray(evaluate(fs, ts))))
    total = 0.0
    for p in fs.pieces:
        val, _ = quad(lambda t: t ** (X.q / X.p - 1) * p.coef ** X.q, p.lo, p.hi, epsrel=1e-13)
        total += val
    return total ** (1 / X.q)


class TestNormExamples:
    def test_l22_indicator(self):
        assert norm(Lorentz(2, 2), PiecewiseFn.indicator(0, 4)) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 7.0])
    def test_weak_type_indicator(self, p):
        assert norm(Lorentz(p, INF), CHI01) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("X", [Lorentz(2, 1), Lorentz(INF, INF), SumSpace(Lorentz(1, 1), Lorentz(2, 2))])
    def test_zero(self, X):
        assert norm(X, PiecewiseFn()) == 0.0

    def test_l11_tail(self):
        assert norm(Lorentz(1, 1), PiecewiseFn.power(1.0, INF, 1.0, -2.0)) == pytest.approx(1.0, rel=1e-14)

    def test_divergent_is_inf(self):
        assert norm(Lorentz(1, 1), PiecewiseFn.power(1.0, INF, 1.0, -1.0)) == INF

    def test_sup_norm(self):
        assert norm(Lorentz(INF, INF), PiecewiseFn.power(1.0, 2.0, 3.0, -1.0)) == pytest.approx(3.0)

    def test_holmstedt_space(self):
        f = PiecewiseFn([PowerPiece(0, 1, 2.0), PowerPiece(1, 3, 1.0)])
        H = HolmstedtSpace(Lorentz(2, 2), Lorentz(1, 1))
        assert norm(H, f) == pytest.approx(2.0 + 2.0, rel=1e-14)

    def test_invalid(self):
        with pytest.raises(InvalidSpec):
            Lorentz(INF, 2)
        with pytest.raises(InvalidSpec):
            Lorentz(-1, 2)


class TestQuasiTriangle:
    @pytest.mark.parametrize("X", [Lorentz(2, 2), Lorentz(1, 1)])
    def test_normed(self, X):
        assert quasi_triangle_constant(X) == pytest.approx(1.0, abs=1e-9)

    def test_half(self):
        c = quasi_triangle_constant(Lorentz(0.5, 0.5))
        assert 1.0 < c <= 2.0


class TestAggregationExamples:
    def test_single(self):
        f = StepFn([PowerPiece(0, 1, 3.0), PowerPiece(2, 5, 1.0)])
        res = lemma6_check(Lorentz(2, 1), 1.0, [f], 0.5)
        assert res.lhs == pytest.approx(res.rhs, rel=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_square_function(self, n):
        res = lemma6_check(Lorentz(2, 2), 2.0, [CHI01] * n, 2.0)
        assert res.lhs == pytest.approx(math.sqrt(n), rel=1e-14)
        assert res.rhs == pytest.approx(math.sqrt(n), rel=1e-14)

    def test_disjoint(self):
        res = lemma6_check(Lorentz(1, 1), 1.0, [CHI01, PiecewiseFn.indicator(1, 2)], 1.0)
        assert (res.lhs, res.rhs) == (pytest.approx(2.0), pytest.approx(2.0))

    def test_u_range(self):
        with pytest.raises(ValueError):
            lemma6_check(Lorentz(2, 2), 1.0, [CHI01], 2.0)


class TestSumSpace:
    def test_cut_at_one_in_family(self):
        f = PiecewiseFn([PowerPiece(0, 1, 2.0), PowerPiece(1, 3, 1.0)])
        X, Y = Lorentz(2, 2), Lorentz(1, 1)
        assert 1.0 in cut_grid(rearrange(f), 64, (1.0,))
        dec = decompose_sum(X, Y, f)
        assert dec.value <= norm(HolmstedtSpace(X, Y), f) * (1 + 1e-12)

    @given(power_fns(tail=False), st.floats(0.05, 5.0), st.sampled_from(MODES))
    def test_splits_add_up(self, f, u, mode):
        fs = rearrange(f)
        f1, f2 = split(fs, u, mode)
        s = np.geomspace(1e-3, 10, 200)
        assert np.allclose(np.asarray(f1(s)) + np.asarray(f2(s)), np.asarray(fs(s)), rtol=1e-12, atol=0)

    def test_best_split_refines_between_cuts(self):
        fs = rearrange(PiecewiseFn.power(0.0, 4.0, 1.0, -0.5))
        cost = lambda a, b: norm(Lorentz(1, 1), a) + 2 * norm(Lorentz(INF, INF), b)  # noqa: E731
        coarse = best_split(fs, cost, cut_grid(fs, 8), refine=False)
        fine = best_split(fs, cost, cut_grid(fs, 8))
        assert fine.value <= coarse.value


# -- properties ----------------------------------------------------------------


@given(step_fns(), lorentz)
def test_matches_quadrature_oracle(f, X):
    tol = 1e-3 if math.isinf(X.q) else 1e-10
    assert rel(norm(X, f), quad_lorentz(X, f)) <= tol


@given(power_fns(), lorentz)
def test_rearrangement_invariance(f, X):
    assert norm(X, f) == norm(X, rearrange(f))


@given(power_fns(), lorentz, st.floats(0.01, 100.0))
def test_homogeneity(f, X, lam):
    n = norm(X, f)
    if math.isfinite(n):
        assert rel(norm(X, f.scale(lam)), lam * n) <= 1e-12


@given(power_fns(), lorentz, st.floats(0.05, 20.0))
def test_dilation_law(f, X, a):
    n = norm(X, f)
    if math.isfinite(n):
        assert rel(norm(X, dilate(f, a)), a ** (-1.0 / X.p) * n) <= 1e-10


@given(step_fns(), lorentz, st.floats(0.0, 1.0))
def test_monotone_under_truncation(f, X, frac):
    fs = rearrange(f)
    level = frac * fs.pieces[0].coef
    g = PiecewiseFn(PowerPiece(p.lo, p.hi, min(p.coef, level)) for p in fs.pieces)
    assert norm(X, g) <= norm(X, f) * (1 + 1e-12)


@pytest.mark.parametrize("X", [Lorentz(1, 1), Lorentz(2, 1), Lorentz(0.5, 3), Lorentz(3, INF)])
def test_shrinking_indicators_vanish(X):
    vals = [norm(X, PiecewiseFn.indicator(0, 1 / n)) for n in (1, 10, 100, 1000, 10**6)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-1
