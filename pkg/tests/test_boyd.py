import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boydkit.boyd import (
    Bounded,
    DegenerateFit,
    DivergingWitness,
    EmptyFamily,
    InvalidC,
    boundedness_probe,
    converse_bound,
    converse_certificate,
    default_a_grid,
    default_family,
    dilation_norm,
    estimate_indices,
    index_family,
    witnesses,
)
from boydkit.hardy import Lower, Upper
from boydkit.piecewise import INF, PiecewiseFn, dilate, rearrange
from boydkit.spaces import InvalidSpec, Lorentz, SumSpace, norm

CHI01 = PiecewiseFn.indicator(0.0, 1.0)
E = math.e


class TestDilationNorm:
    @pytest.mark.parametrize("X", [Lorentz(2, 2), Lorentz(0.5, INF), SumSpace(Lorentz(1, 1), Lorentz(2, 2))])
    def test_identity(self, X):
        assert dilation_norm(X, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_closed_forms(self):
        assert dilation_norm(Lorentz(2, 2), 0.5) == pytest.approx(math.sqrt(2), rel=1e-15)
        assert dilation_norm(Lorentz(4, 1), 16.0) == pytest.approx(0.5, rel=1e-15)

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            dilation_norm(SumSpace(Lorentz(1, 1), Lorentz(2, 2)), 2.0, {})

    def test_family_path_agrees_with_law_on_lorentz_members(self):
        X = Lorentz(1.5, 2)
        for f in default_family(X).values():
            assert norm(X, dilate(f, 0.3)) == pytest.approx(0.3 ** (-1 / 1.5) * norm(X, f), rel=1e-10)


@given(st.sampled_from([0.5, 1.0, 2.0, 4.0]), st.sampled_from([1.0, 2.0, INF]),
       st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_submultiplicative_exact_path(p, q, a, b):
    X = Lorentz(p, q)
    assert dilation_norm(X, a * b) == pytest.approx(dilation_norm(X, a) * dilation_norm(X, b), rel=1e-12)


class TestIndices:
    @pytest.mark.parametrize("p", [0.5, 1.0, 1.5, 2.0, 4.0])
    @pytest.mark.parametrize("q", [1.0, 2.0, INF])
    def test_lorentz_ground_truth(self, p, q):
        rep = estimate_indices(Lorentz(p, q))
        assert abs(rep.lower_index - p) <= 0.05 and abs(rep.upper_index - p) <= 0.05
        assert rep.fit_residual < 1e-6
        h1 = [h for a, h in rep.samples if a == 1.0]
        assert h1 and abs(h1[0] - 1.0) <= 1e-9

    def test_single_indicator_family(self):
        rep = estimate_indices(Lorentz(2, 2), family={"chi": CHI01})
        assert rep.lower_index == pytest.approx(2.0, abs=1e-9)

    def test_sum_space_indices_are_the_summand_exponents(self):
        # L1 + L2: spreading favours the L1 part, compressing the L2 part
        rep = estimate_indices(SumSpace(Lorentz(1, 1), Lorentz(2, 2), 32), default_a_grid(6, 1))
        assert rep.lower_index == pytest.approx(1.0, abs=0.02)
        assert rep.upper_index == pytest.approx(2.0, abs=0.02)

    def test_index_family_reaches_past_grid(self):
        fam = index_family(Lorentz(2, 2), [1e-3, 1e3])
        lengths = {f.support_end for k, f in fam.items() if k.startswith("chi")}
        assert min(lengths) <= 1e-5 and max(lengths) >= 1e5

    def test_degenerate(self):
        flat = {"one": CHI01}
        X = SumSpace(Lorentz(INF, INF), Lorentz(INF, INF), 16)
        with pytest.raises(DegenerateFit):
            estimate_indices(X, family=flat)


class TestProbe:
    def test_sharp_hardy(self):
        rep = boundedness_probe(Upper(1, 1), Lorentz(2, 2))
        assert isinstance(rep.verdict, Bounded)
        assert rep.verdict.C <= 2 * (1 + 1e-6)

    def test_critical_case_diverges(self):
        rep = boundedness_probe(Upper(2, 2), Lorentz(2, 2))
        assert isinstance(rep.verdict, DivergingWitness)
        seq = rep.verdict.ratios
        assert all(b > a for a, b in zip(seq, seq[1:]))

    @pytest.mark.parametrize("X", [Lorentz(2, 2), Lorentz(0.5, INF), Lorentz(3, 1)])
    def test_identity_kind(self, X):
        rep = boundedness_probe(Lower(INF, INF), X)
        assert isinstance(rep.verdict, Bounded) and rep.verdict.C == pytest.approx(1.0, abs=1e-12)

    def test_weak_type_counterexample(self):
        for kind in (Upper(2, INF), Lower(2, INF)):
            assert isinstance(boundedness_probe(kind, Lorentz(2, INF)).verdict, Bounded)

    def test_non_lorentz_rejected(self):
        with pytest.raises(InvalidSpec):
            boundedness_probe(Upper(1, 1), SumSpace(Lorentz(1, 1), Lorentz(2, 2)))

    def test_witnesses_are_rearranged(self):
        for group in witnesses(Upper(1, 1), Lorentz(2, 2), 3).values():
            for _, f in group:
                assert rearrange(f) == f

    def test_converse_bound_consistent_with_indices(self):
        for P in (1.5, 2.0, 3.0):
            X = Lorentz(P, P)
            rep = boundedness_probe(Upper(1, 1), X)
            kappa = converse_bound(1.0, 1.0, rep.verdict.C).kappa
            assert estimate_indices(X).lower_index >= kappa - 0.05


class TestConverse:
    def test_bound_examples(self):
        assert converse_bound(1, 1, 2).kappa == pytest.approx(2.0)
        assert converse_bound(1, 1, 1e12).kappa == pytest.approx(1.0, rel=1e-9)
        res = converse_bound(2, 2, 2)
        assert res.kappa == pytest.approx(8 / 3) and res.k == pytest.approx(math.exp(-4))

    @pytest.mark.parametrize("C", [1.0, 0.5])
    def test_invalid_c(self, C):
        with pytest.raises(InvalidC):
            converse_bound(1, 1, C)

    def test_certificate_examples(self):
        X = Lorentz(2, 2)
        one = converse_certificate(1, 1, 2, X, CHI01, 1)
        assert one.lhs == pytest.approx(E) and one.rhs == pytest.approx(2 * E ** 2)
        assert one.holds
        two = converse_certificate(1, 1, 2, X, CHI01, 2)
        assert two.lhs == pytest.approx(E ** 2) and two.rhs == pytest.approx(E ** 4)
        zero = converse_certificate(1, 1, 2, X, PiecewiseFn(), 3)
        assert zero.lhs == 0 and zero.holds

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    @pytest.mark.parametrize("P", [1.5, 2.0, 3.0])
    def test_certificate_with_measured_constant(self, n, P):
        X = Lorentz(P, P)
        C = boundedness_probe(Upper(1, 1), X).verdict.C
        for f in default_family(X).values():
            assert converse_certificate(1, 1, C, X, f, n).holds
