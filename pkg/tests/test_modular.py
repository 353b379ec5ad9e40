"""Modular integrals, Luxemburg norms, convergence reports, 1-D embeddings."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import orlicz as oz
from orlicz.corpus import interval_vanishing_corpus, unit_ball_corpus
from orlicz.modular import constant_function, sup_norm, trajectory_converges
from orlicz.nemytskii import singular_log_field
from orlicz.young import INF

UNIT_1D = oz.BoxDomain.interval(0.0, 1.0)


def neglog_field():
    return oz.TestFunction(
        lambda x: -math.log(x[0]) if x[0] > 0 else INF,
        lambda x: np.array([-1.0 / x[0]]),
        label="neglog",
    )


class TestModularIntegral:
    def test_constant_linear(self):
        u = constant_function(3.5, 1)
        assert oz.modular_integral(u, oz.linear(), 1.0, UNIT_1D) == pytest.approx(3.5)

    def test_zero_function(self):
        z = constant_function(0.0, 1)
        for y in (oz.linear(), oz.Power(2), oz.PowerExp(1)):
            for lam in (0.25, 1.0, 7.0):
                assert oz.modular_integral(z, y, lam, UNIT_1D) == 0.0

    def test_log_singularity_closed_form(self):
        # antiderivative oracle: int_0^1 (-log x) dx = [x - x log x]_0^1 = 1
        box = oz.BoxDomain.interval(0.0, 1.0, singular=((0, "lower"),))
        v = oz.modular_integral(neglog_field(), oz.linear(), 1.0, box)
        assert v == pytest.approx(1.0, rel=1e-7)

    def test_non_increasing_in_lambda(self):
        box = oz.BoxDomain.interval(0.0, 1.0, singular=((0, "lower"),))
        u = neglog_field()
        vals = [oz.modular_integral(u, oz.Power(2), lam, box)
                for lam in (0.5, 1.0, 2.0, 4.0)]
        assert all(vals[i + 1] <= vals[i] * (1 + 1e-9) for i in range(len(vals) - 1))

    def test_certified_divergence(self):
        # int_0^1 dx / x has no finite value; the panel trend certifies it
        box = oz.BoxDomain.interval(0.0, 1.0, singular=((0, "lower"),))
        u = oz.TestFunction(lambda x: 1.0 / x[0] if x[0] > 0 else INF,
                            lambda x: np.array([-1.0 / x[0] ** 2]), "inv")
        assert oz.modular_integral(u, oz.linear(), 1.0, box) == INF

    def test_infinite_box_refused(self):
        box = oz.BoxDomain((0.0,), (INF,))
        with pytest.raises(Exception):
            oz.modular_integral(constant_function(1.0, 1), oz.linear(), 1.0, box)

    def test_infinite_box_with_truncation(self):
        box = oz.BoxDomain((0.0,), (INF,))
        u = oz.TestFunction(lambda x: math.exp(-x[0]),
                            lambda x: np.array([-math.exp(-x[0])]), "decay")
        v = oz.modular_integral(u, oz.linear(), 1.0, box, truncation_radius=40.0)
        assert v == pytest.approx(1.0, rel=1e-8)

    def test_convergence_invariant_under_equivalent_functions(self):
        # a sequence converging modularly for A keeps converging for any
        # equivalent function (probed on a parametric pair)
        base = constant_function(0.0, 1)
        ks = [2 ** j for j in range(1, 11)]
        seq = [constant_function(1.0 / k, 1) for k in ks]
        lams = (0.5, 1.0, 2.0)
        rep_a = oz.modular_convergence(seq, base, oz.Power(2), UNIT_1D, lams,
                                       indices=ks)
        rep_b = oz.modular_convergence(seq, base, oz.Power(2, scale=3.0),
                                       UNIT_1D, lams, indices=ks)
        assert rep_a.converging_lambdas == rep_b.converging_lambdas


class TestLuxemburg:
    def test_constant_linear(self):
        u = constant_function(7.0, 1)
        assert oz.luxemburg_norm(u, oz.linear(), UNIT_1D) == pytest.approx(7.0, rel=1e-9)

    def test_unit_power2(self):
        u = constant_function(1.0, 1)
        assert oz.luxemburg_norm(u, oz.Power(2), UNIT_1D) == pytest.approx(1.0, rel=1e-9)

    def test_zero_function(self):
        assert oz.luxemburg_norm(constant_function(0.0, 1), oz.Power(2), UNIT_1D) == 0.0

    def test_homogeneity(self):
        u = oz.TestFunction(lambda x: math.sin(math.pi * x[0]),
                            lambda x: np.array([math.pi * math.cos(math.pi * x[0])]),
                            "sine")
        base = oz.luxemburg_norm(u, oz.PowerLog(2, 1), UNIT_1D)
        doubled = oz.luxemburg_norm(u.scaled(2.0), oz.PowerLog(2, 1), UNIT_1D)
        assert doubled == pytest.approx(2.0 * base, rel=1e-8)

    @settings(max_examples=10, deadline=None)
    @given(c=st.floats(0.3, 5.0))
    def test_homogeneity_property(self, c):
        u = constant_function(1.3, 1)
        base = oz.luxemburg_norm(u, oz.Power(2), UNIT_1D)
        assert oz.luxemburg_norm(u.scaled(c), oz.Power(2), UNIT_1D) == \
            pytest.approx(c * base, rel=1e-8)

    def test_unit_ball_property(self):
        # |u| <= 1 iff the modular at lambda = 1 is at most 1
        for y in (oz.Power(2), oz.PowerLog(2, 1)):
            for u, box in unit_ball_corpus():
                norm = oz.luxemburg_norm(u, y, box)
                modular = oz.modular_integral(u, y, 1.0, box)
                if norm <= 1.0 - 1e-9:
                    assert modular <= 1.0 + 1e-7
                elif norm >= 1.0 + 1e-9:
                    assert modular >= 1.0 - 1e-7


class TestW1A:
    def test_coordinate_gradient_norm(self):
        u = oz.TestFunction(lambda x: float(x[0]), lambda x: np.ones(1), "x")
        q = oz.w1a_quantities(u, oz.linear(), UNIT_1D)
        assert q.norm_gradient == pytest.approx(1.0, rel=1e-9)

    def test_zero_field(self):
        q = oz.w1a_quantities(constant_function(0.0, 1), oz.Power(2), UNIT_1D)
        assert q.norm_value == 0.0 and q.norm_gradient == 0.0

    def test_counterexample_gradient_modular(self):
        # A(|grad u|/2) = -(1/2) x^{-1/2} log x; oracle:
        # int_0^1 x^a log x dx = -1/(a+1)^2 gives the closed family
        # lambda / (lambda - 1)^2, hence the value 2 at lambda = 2
        box = oz.BoxDomain.unit(1, singular=((0, "lower"),))
        u = singular_log_field(1)
        q = oz.w1a_quantities(u, oz.PowerExp(1), box)
        assert q.modular_gradient(2.0) == pytest.approx(2.0, rel=1e-7)
        lam = 3.0
        assert q.modular_gradient(lam) == pytest.approx(lam / (lam - 1) ** 2,
                                                        rel=1e-7)
        assert q.modular_gradient(1.0) == INF


class TestConvergence:
    def test_constant_shifts_converge_everywhere(self):
        base = constant_function(0.3, 1)
        ks = [2 ** j for j in range(1, 11)]
        seq = [constant_function(0.3 + 1.0 / k, 1) for k in ks]
        lams = (0.25, 0.5, 1.0, 2.0, 4.0)
        rep = oz.modular_convergence(seq, base, oz.Power(2), UNIT_1D, lams,
                                     indices=ks)
        # oracle: the modular equals (1/(k lambda))^2 |box|
        assert rep.value_modulars[0, 2] == pytest.approx((1.0 / (2 * 1.0)) ** 2,
                                                         rel=1e-9)
        assert rep.norm_convergence
        assert rep.converging_lambdas == lams
        assert rep.smallest_converging_lambda == 0.25

    def test_identical_sequence(self):
        base = constant_function(1.0, 1)
        seq = [constant_function(1.0, 1) for _ in range(6)]
        rep = oz.modular_convergence(seq, base, oz.Power(2), UNIT_1D, (1.0, 2.0))
        assert rep.norm_convergence
        assert np.all(rep.modular_values == 0.0)

    def test_rows_non_increasing(self):
        base = constant_function(0.0, 1)
        ks = [2, 4, 8, 16]
        seq = [constant_function(1.0 / k, 1) for k in ks]
        rep = oz.modular_convergence(seq, base, oz.PowerExp(1), UNIT_1D,
                                     (0.5, 1.0, 2.0), indices=ks)
        assert rep.rows_non_increasing_in_lambda()

    def test_trajectory_rule(self):
        assert trajectory_converges([1.0, 0.1, 0.01, 0.0005])
        assert not trajectory_converges([1.0, 0.1, 0.01, 0.002])
        assert not trajectory_converges([1.0, 0.5, INF, 0.0001])
        assert trajectory_converges([0.0, 0.0, 0.0])
        assert not trajectory_converges([0.0, 0.0, 0.5])


class TestOneDimensionalEmbeddings:
    @pytest.mark.parametrize("y", [oz.Power(2), oz.PowerLog(2, 1), oz.PowerExp(1)])
    def test_sup_bound_via_inverse(self, y):
        # |u|_inf <= |I| A^{-1}( (1/|I|) int A(|u'|) ) for fields vanishing
        # at both interval endpoints
        for u, box in interval_vanishing_corpus():
            sup = sup_norm(u, box)
            mod = oz.modular_integral_gradient(u, y, 1.0, box)
            bound = box.measure * y.inverse(mod / box.measure)
            assert sup <= bound * (1 + 1e-6)

    def test_linear_near_zero_bound(self):
        # for A with A(t) ~ t near zero: |u|_inf <= c int A(|u'|) with
        # c = sup t / A(t), attained as t -> 0
        y = oz.linear()
        c = 1.0
        worst = 0.0
        for u, box in interval_vanishing_corpus():
            sup = sup_norm(u, box)
            mod = oz.modular_integral_gradient(u, y, 1.0, box)
            assert sup <= c * mod * (1 + 1e-6)
            worst = max(worst, sup / mod)
        assert 0.0 < worst <= c * (1 + 1e-6)


class TestTestFunction:
    def test_gradient_consistency(self):
        for u, box in interval_vanishing_corpus():
            if u.label == "tent":
                continue  # kink breaks central differences at one point
            assert u.gradient_consistent(box)

    def test_difference(self):
        u = constant_function(3.0, 1)
        v = constant_function(1.0, 1)
        d = u - v
        assert d.value(np.array([0.4])) == 2.0
        assert d.gradient(np.array([0.4]))[0] == 0.0
