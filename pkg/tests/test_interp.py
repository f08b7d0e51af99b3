import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boydkit.calibration import HOLMSTEDT_BANDS, THEOREM7_REGRESSION
from boydkit.corpus import CORPUS
from boydkit.interp import (
    HypothesisFailed,
    e_operator,
    embedding_constant,
    f_operator,
    holmstedt_norm,
    holmstedt_sweep,
    k_bruteforce,
    sandwich_check,
    theorem7_verify,
)
from boydkit.piecewise import INF, PiecewiseFn, PowerPiece, StepFn, power_integral, rearrange
from boydkit.spaces import InvalidSpec, Lorentz, SumSpace, norm
from conftest import rel, step_fns

CHI01 = PiecewiseFn.indicator(0.0, 1.0)
L22, L11 = Lorentz(2, 2), Lorentz(1, 1)
T_GRID = np.geomspace(1e-3, 1e3, 13)


def k_closed_form(t):
    """``t^{-1} K(t, chi_[0,1); L1, Linf) = min(1, 1/t)``."""
    return min(1.0, 1.0 / t)


class TestK:
    def test_zero(self):
        k = k_bruteforce(PiecewiseFn(), 0.5, 1, 1, INF, INF)
        assert k.brute_inf == 0.0 and k.operator_sum == 0.0

    def test_indicator_below_one(self):
        k = k_bruteforce(CHI01, 0.5, 1, 1, INF, INF)
        assert k.brute_inf == pytest.approx(1.0, rel=1e-12)
        assert k.operator_sum == pytest.approx(2.0, rel=1e-12)
        assert k.ratio == pytest.approx(0.5, rel=1e-12)

    def test_indicator_above_one(self):
        k = k_bruteforce(CHI01, 4.0, 1, 1, INF, INF)
        assert k.brute_inf == pytest.approx(0.25, rel=1e-12)
        assert k.operator_sum == pytest.approx(0.25, rel=1e-12)
        assert k.ratio == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("t", list(T_GRID))
    def test_matches_classical_identity(self, t):
        assert k_bruteforce(CHI01, float(t), 1, 1, INF, INF).brute_inf == pytest.approx(k_closed_form(t), rel=1e-10)

    def test_invalid_exponents(self):
        with pytest.raises(InvalidSpec):
            k_bruteforce(CHI01, 1.0, 2, 1, 1, 1)

    @pytest.mark.parametrize("name", ["two_step", "capped_sqrt", "power_then_step"])
    @pytest.mark.parametrize("t", [0.01, 1.0, 7.0])
    def test_infimum_below_structural_cuts(self, name, t):
        # cutting f* at u = t and u = 1 (head in L1, tail in Linf) is always a candidate
        fs = rearrange(CORPUS[name])
        k = k_bruteforce(fs, t, 1, 1, INF, INF)
        for u in (t, 1.0):
            head, tail = fs.restrict(0.0, u), fs.restrict(u)
            cost = norm(L11, head) / t + norm(Lorentz(INF, INF), tail)
            assert k.brute_inf <= cost * (1 + 1e-12)


class TestSweep:
    def test_indicator_band(self):
        sw = holmstedt_sweep(CHI01, 1, 1, INF, INF, T_GRID)
        assert 0.5 - 1e-12 <= sw.min_ratio and sw.max_ratio <= 1 + 1e-12
        for k in sw.reports:
            expected = k_closed_form(k.t) / (k_closed_form(k.t) + (1.0 if k.t < 1 else 0.0))
            assert k.ratio == pytest.approx(expected, rel=1e-10)

    def test_sqrt_head_lower_band(self):
        f = PiecewiseFn.power(1e-3, 1.0, 1.0, -0.5)
        sw = holmstedt_sweep(f, 1, 1, INF, INF, T_GRID)
        assert sw.min_ratio > 0.1 and sw.max_ratio <= 1 + 1e-9

    @pytest.mark.parametrize("key", sorted(HOLMSTEDT_BANDS, key=str))
    def test_frozen_bands(self, key):
        lo, hi = HOLMSTEDT_BANDS[key]
        for name in ("chi01", "two_step", "capped_sqrt"):
            sw = holmstedt_sweep(CORPUS[name], *key, T_GRID)
            assert lo <= sw.min_ratio and sw.max_ratio <= hi, name


@given(st.sampled_from(["chi01", "two_step", "three_step", "capped_sqrt"]), st.floats(0.01, 100.0))
def test_sweep_ratios_are_homogeneous(name, lam):
    f = CORPUS[name]
    ts = [0.01, 0.5, 3.0]
    a = [k.ratio for k in holmstedt_sweep(f, 1, 1, INF, INF, ts).reports]
    b = [k.ratio for k in holmstedt_sweep(f.scale(lam), 1, 1, INF, INF, ts).reports]
    assert np.allclose(a, b, rtol=1e-10, atol=0)


class TestEF:
    def test_e_examples(self):
        assert e_operator(PiecewiseFn.indicator(0.0, 2.0)) == CHI01
        assert e_operator(PiecewiseFn.indicator(1.0, 3.0)).is_zero
        assert e_operator(PiecewiseFn.power(0.5, 2.0, 1.0, -1.0)) == PiecewiseFn.power(0.5, 1.0, 1.0, -1.0)

    def test_f_examples(self):
        assert f_operator(PiecewiseFn.indicator(1.0, 2.0)) == PiecewiseFn.indicator(1.0, 2.0)
        g = f_operator(PiecewiseFn.power(1.0, 2.0, 1.0, -1.0))
        assert len(g.pieces) == 1 and g.pieces[0].coef == pytest.approx(math.log(2), rel=1e-15)
        assert f_operator(CHI01).is_zero

    def test_f_needs_cells_for_infinite_support(self):
        tail = PiecewiseFn.power(1.0, INF, 1.0, -2.0)
        with pytest.raises(ValueError):
            f_operator(tail)
        # cell n averages s^-2 to 1/n - 1/(n+1)
        g = f_operator(tail, cells=5)
        assert [p.coef for p in g.pieces] == pytest.approx([1 / n - 1 / (n + 1) for n in range(1, 6)], rel=1e-14)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_mass_preserved(self, name):
        f = CORPUS[name]
        end = f.support_end
        cells = None if math.isfinite(end) else 50
        stop = end if math.isfinite(end) else 51.0
        if stop <= 1:
            assert f_operator(f, cells).is_zero
            return
        mass = power_integral(f, 1.0, 1.0, 1.0, stop)
        assert power_integral(f_operator(f, cells), 1.0, 1.0) == pytest.approx(mass, rel=1e-12)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_sandwich_on_corpus(self, name):
        assert sandwich_check(CORPUS[name])

    def test_sandwich_examples(self):
        assert sandwich_check(CHI01)
        assert sandwich_check(PiecewiseFn.power(1e-2, 1e2, 1.0, -1.0))
        assert sandwich_check(StepFn([PowerPiece(0, 1, 2.0), PowerPiece(1, 3, 1.0)]))


@given(step_fns())
def test_f_mass_property(f):
    end = f.support_end
    if end > 1:
        mass = power_integral(f, 1.0, 1.0, 1.0, end)
        assert rel(power_integral(f_operator(f), 1.0, 1.0), mass) <= 1e-12


@given(step_fns())
def test_sandwich_property(f):
    assert sandwich_check(f)


class TestTheorem7:
    def test_indicator(self):
        rep = theorem7_verify(L22, L11, CHI01)
        assert rep.norm_h == pytest.approx(1.0, rel=1e-14)
        assert rep.norm_sum == pytest.approx(1.0, rel=1e-12)
        assert rep.chain_ok

    def test_zero(self):
        rep = theorem7_verify(L22, L11, PiecewiseFn())
        assert rep.norm_sum == 0.0 and rep.norm_h == 0.0 and rep.chain_ok

    def test_report_carries_corpus(self):
        assert "chi_0_1" in theorem7_verify(L22, L11, CHI01).corpus

    def test_regression(self):
        frozen = THEOREM7_REGRESSION["capped_two_thirds"]
        rep = theorem7_verify(L22, L11, CORPUS["capped_two_thirds"])
        assert rep.norm_sum == pytest.approx(frozen["norm_sum"], rel=1e-9)
        assert rep.norm_h == pytest.approx(frozen["norm_h"], rel=1e-9)

    def test_stated_orientation_admits_counterexample(self):
        # the head lies in L1 but not in L2: finite sum norm, infinite H norm
        rep = theorem7_verify(L22, L11, CORPUS["sqrt_head"])
        assert math.isfinite(rep.norm_sum) and rep.norm_h == INF and not rep.chain_ok

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_transposed_hypotheses_close_the_chain(self, name):
        rep = theorem7_verify(L11, L22, CORPUS[name], hypotheses="proof")
        assert rep.chain_ok, (rep.norm_sum, rep.norm_h, rep.bound)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_left_inequality_is_structural(self, name):
        rep = theorem7_verify(L22, L11, CORPUS[name])
        assert rep.norm_sum <= rep.norm_h * (1 + 1e-12)

    def test_swapped_spaces_fail_stated_hypotheses(self):
        with pytest.raises(HypothesisFailed) as info:
            embedding_constant(L11, L22)
        assert info.value.element is not None

    def test_stated_constant_on_l22_l11(self):
        # the thin heads are fine for ||.||_1 <= c ||.||_2 on [0, 1]; cells fine for ||.||_2 <= c ||.||_1
        assert embedding_constant(L22, L11) == pytest.approx(1.0, rel=1e-12)

    def test_holmstedt_norm_matches_definition(self):
        f = StepFn([PowerPiece(0, 1, 2.0), PowerPiece(1, 3, 1.0)])
        assert holmstedt_norm(L22, L11, f) == pytest.approx(2.0 + 2.0, rel=1e-14)

    def test_non_lorentz_rejected(self):
        with pytest.raises(InvalidSpec):
            theorem7_verify(SumSpace(L11, L22), L11, CHI01)

    def test_unknown_hypotheses(self):
        with pytest.raises(ValueError):
            embedding_constant(L22, L11, hypotheses="other")
