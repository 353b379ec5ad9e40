"""Vector Young functions: reduction, rearrangement, conjugates, theta."""

import math

import numpy as np
import pytest
import scipy.special as sp

import orlicz as oz
from orlicz.aniso import _phi_circ_young
from orlicz.young import INF


def pball_volume(p: float, n: int, level: float) -> float:
    # closed form: |{sum |x_i|^p <= 1}| = 2^n Gamma(1+1/p)^n / Gamma(1+n/p)
    unit = 2.0 ** n * sp.gamma(1 + 1 / p) ** n / sp.gamma(1 + n / p)
    return unit * level ** (n / p)


class TestBar:
    def test_bar_p_exact(self):
        assert oz.bar_p([1, 4]) == 1.6
        assert oz.bar_p([2, 2, 2]) == 2.0
        assert oz.bar_p([3.0, 3.0]) == 3.0

    def test_geometric_mean_exponent(self):
        # oracle: inverse exponent is the average of the 1/p_i
        bar = oz.orthotropic_bar([oz.Power(1), oz.Power(4)])
        for t in (0.5, 2.0, 16.0):
            assert bar.inverse(t) == pytest.approx(t ** ((1 + 0.25) / 2), rel=1e-9)
        assert bar(2.0) == pytest.approx(2.0 ** 1.6, rel=1e-9)

    def test_inverse_at_zero(self):
        bar = oz.orthotropic_bar([oz.Power(2), oz.Power(3)])
        assert bar.inverse(0.0) == 0.0

    def test_equal_components_identity(self):
        bar = oz.orthotropic_bar([oz.Power(2)] * 3)
        v = oz.equivalent(bar, oz.Power(2), oz.Regime.everywhere())
        assert v.equivalent and v.constant <= 1.0 + 1e-3

    def test_degenerate_component_rejected(self):
        dead = oz.Custom(lambda t: 0.0, label="dead")
        with pytest.raises(oz.YoungError):
            oz.orthotropic_bar([oz.Power(2), dead])


class TestVolume:
    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    def test_pball_grid(self, p):
        phi = oz.Orthotropic((oz.Power(p), oz.Power(p)))
        vol, err = oz.sublevel_volume(phi, 1.0)
        assert vol == pytest.approx(pball_volume(p, 2, 1.0), rel=1.5e-3)

    def test_monte_carlo(self):
        phi = oz.Orthotropic((oz.Power(2), oz.Power(2)))
        vol, se = oz.sublevel_volume(phi, 1.0, method="mc", mc_samples=200_000,
                                     seed=3)
        assert abs(vol - math.pi) <= 5 * se

    def test_three_dimensional(self):
        phi = oz.Isotropic(oz.Power(2), 3)
        vol, err = oz.sublevel_volume(phi, 1.0, max_depth=6)
        assert vol == pytest.approx(4 * math.pi / 3, rel=6e-2)
        assert abs(vol - 4 * math.pi / 3) <= 1.5 * err + 1e-12

    def test_unbounded_sublevel_rejected(self):
        flat = oz.BlackBox(lambda xi: xi[0] ** 2, 2)  # no growth along x2
        with pytest.raises(oz.YoungError):
            oz.sublevel_volume(flat, 1.0)


class TestPhiCirc:
    def test_isotropic_is_inverse(self):
        phi = oz.Isotropic(oz.PowerLog(2, 1), 2)
        for t in (0.1, 1.0, 30.0):
            assert oz.phi_circ(phi, t) == pytest.approx(
                oz.PowerLog(2, 1).inverse(t), rel=1e-9)

    def test_zero_level(self):
        assert oz.phi_circ(oz.Isotropic(oz.Power(2), 2), 0.0) == 0.0
        assert oz.phi_circ(oz.Orthotropic((oz.Power(2), oz.Power(3))), 0.0) == 0.0

    def test_orthotropic_volume_agreement(self):
        # measure rearrangement of the p-ball against the reduced function;
        # the two differ by a bounded factor only
        for p in (1.0, 2.0, 4.0):
            phi = oz.Orthotropic((oz.Power(p), oz.Power(p)))
            for t in (1.0, 5.0):
                direct = oz.phi_circ(phi, t, method="volume", max_depth=10)
                reduced = oz.phi_circ(phi, t)
                expect = (pball_volume(p, 2, t) / math.pi) ** 0.5
                assert direct == pytest.approx(expect, rel=5e-3)
                assert 0.5 <= direct / reduced <= 2.0

    def test_non_decreasing(self):
        phi = oz.Orthotropic((oz.Power(2), oz.Power(4)))
        ts = np.geomspace(1e-2, 1e2, 21)
        vals = [oz.phi_circ(phi, float(t)) for t in ts]
        assert all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))


class TestPhiN:
    def test_orthotropic_exponent(self):
        # bar exponent oracle: 1/pbar = mean(1/p_i); conjugate exponent
        # n pbar / (n - pbar)
        phi = oz.Orthotropic((oz.Power(1), oz.Power(4)))
        conj = oz.phi_n(phi)
        pbar = oz.bar_p([1, 4])
        expect = 2 * pbar / (2 - pbar)
        lo, hi = conj.an_value(1e2), conj.an_value(1e6)
        slope = (math.log(hi) - math.log(lo)) / (4 * math.log(10))
        assert slope == pytest.approx(expect, abs=1e-3)

    def test_equal_components_match_isotropic(self):
        iso = oz.phi_n(oz.Isotropic(oz.Power(2), 3))
        orth = oz.phi_n(oz.Orthotropic((oz.Power(2),) * 3))
        for t in np.geomspace(1e-1, 1e2, 9):
            assert orth.an_value(float(t)) == pytest.approx(
                iso.an_value(float(t)), rel=1e-5)

    def test_isotropic_reduces_to_scalar(self):
        direct = oz.sobolev_conjugate(oz.Power(2), 2)
        via = oz.phi_n(oz.Isotropic(oz.Power(2), 2))
        assert via.an_value(3.0) == pytest.approx(direct.an_value(3.0), rel=1e-12)

    def test_volume_route_equivalent(self):
        # direct sublevel volumes against the geometric-mean reduction
        phi = oz.Orthotropic((oz.Power(2), oz.Power(4)))
        vol_conj = oz.phi_n(phi, method="volume", max_depth=9, rel_tol=5e-3,
                            points=17, t_lo=1e-2, t_hi=1e3)
        bar_conj = oz.phi_n(phi)
        v = oz.equivalent(
            oz.Custom(lambda t: vol_conj.an_value(t), label="volume-route"),
            oz.Custom(lambda t: bar_conj.an_value(t), label="reduced-route"),
            oz.Regime.everywhere(), c_max=1e3)
        assert v.equivalent and v.constant <= 4.0

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(oz.YoungError):
            oz.phi_n(oz.Isotropic(oz.Power(2), 2), 3)


class TestVectorYoungShape:
    def vector_corpus(self):
        return [
            oz.Isotropic(oz.Power(2), 2),
            oz.Orthotropic((oz.Power(1.5), oz.Power(3))),
            oz.LinearImage(((np.array([[1.0, -1.0], [0.0, 1.0]]), oz.Power(2)),),
                           n=2),
        ]

    def test_origin_even_and_growth(self):
        rng = np.random.default_rng(5)
        for phi in self.vector_corpus():
            assert phi(np.zeros(phi.n)) == 0.0
            for _ in range(16):
                xi = rng.normal(size=phi.n) * 3.0
                assert phi(xi) == pytest.approx(phi(-xi), rel=1e-12)
            d = rng.normal(size=phi.n)
            d /= np.linalg.norm(d)
            assert phi(1e6 * d) > 1e6

    def test_convexity_on_random_segments(self):
        rng = np.random.default_rng(6)
        for phi in self.vector_corpus():
            for _ in range(64):
                a = rng.normal(size=phi.n) * 10 ** rng.uniform(-1, 1)
                b = rng.normal(size=phi.n) * 10 ** rng.uniform(-1, 1)
                mid = phi(0.5 * (a + b))
                assert mid <= 0.5 * (phi(a) + phi(b)) + 1e-9 * (1 + phi(b))

    def test_nondegeneracy_probe(self):
        for phi in self.vector_corpus():
            assert phi.nondegenerate()
        assert not oz.Orthotropic((oz.Power(2), oz.gate(1.0))).nondegenerate()


class TestTheta:
    def test_zero_vector(self):
        solver = oz.ThetaSolver(oz.Isotropic(oz.Power(2), 3),
                                oz.Envelope.power(1.0), 3)
        assert solver.solve(np.zeros(3)) == 0.0

    def test_recover_inversion(self):
        # the scalar reduction satisfies theta^{-1}(s) = H^{-1}(s) E(s);
        # closed form for A = t^2, n = 3: H^{-1}(s) = (s/C)^3 with C = 2^{2/3}
        solver = oz.ThetaSolver(oz.Isotropic(oz.Power(2), 3),
                                oz.Envelope.power(1.0), 3)
        C = (2.0) ** (2.0 / 3.0)
        for s in np.geomspace(0.05, 8.0, 25):
            s = float(s)
            xi = np.array([(s / C) ** 3 * s, 0.0, 0.0])
            assert solver.solve(xi) == pytest.approx(s, rel=1e-6)

    def test_residual_invariant(self):
        rng = np.random.default_rng(11)
        # mean exponent 12/7 stays below the dimension, so the conjugate is
        # strictly increasing to infinity and theta exists
        phi = oz.Orthotropic((oz.Power(1.5), oz.Power(2)))
        env = oz.Envelope.power(0.5)
        solver = oz.ThetaSolver(phi, env, 2)
        for _ in range(100):
            xi = rng.normal(size=2) * 10.0 ** rng.uniform(-2, 2)
            theta = solver.solve(xi)
            lhs = solver.conj.an_value(theta)
            rhs = phi(xi / env(theta))
            assert abs(lhs - rhs) <= 1e-6 * (1.0 + lhs)

    def test_monotone_in_radius(self):
        solver = oz.ThetaSolver(oz.Isotropic(oz.Power(2), 2),
                                oz.Envelope.power(1.0), 2)
        d = np.array([0.6, 0.8])
        thetas = [solver.solve(r * d) for r in (0.1, 1.0, 10.0, 100.0)]
        assert all(thetas[i] <= thetas[i + 1] + 1e-12 for i in range(3))

    def test_saturating_conjugate_rejected(self):
        # p > n gives a finite-level conjugate, no strictly increasing map
        with pytest.raises(oz.YoungError):
            oz.ThetaSolver(oz.Isotropic(oz.Power(3), 2), oz.Envelope.one(), 2)
