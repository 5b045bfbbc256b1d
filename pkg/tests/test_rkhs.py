import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from spectralpairs.lambda_sets import c_m_constant, from_points, generate
from spectralpairs.measures import AtomicMeasure
from spectralpairs.rkhs import (
    BochnerDistribution,
    FLambda,
    RKHSElement,
    SingularGramError,
    TestFunction,
    bochner_check,
    coefficient_levels,
    convolve,
    is_positive_definite,
    membership_test,
    pairing,
    quadratic_form_bound,
    rkhs_norm,
    seminorm,
    sobolev_norm_check,
    tempered_bound_check,
)

SQRT_2PI = math.sqrt(2 * math.pi)
gauss = TestFunction.gaussian()


def quad_complex(f, a=-np.inf, b=np.inf):
    re = integrate.quad(lambda x: f(x).real, a, b, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
    im = integrate.quad(lambda x: f(x).imag, a, b, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
    return re + 1j * im


class TestTestFunction:
    @pytest.mark.parametrize(
        "phi",
        [
            TestFunction.gaussian(),
            TestFunction.gaussian(center=0.7, width=0.5, amplitude=2.0),
            TestFunction.trig([1.0, -0.5j], [0.0, 3.0], width=0.8),
            TestFunction.gaussian_sum([1.0, -1.0], [0.0, 2 * math.pi]),
        ],
    )
    @pytest.mark.parametrize("lam", [0.0, 0.9, -2.3, 4.0])
    def test_transform_against_quadrature(self, phi, lam):
        oracle = quad_complex(lambda x: phi(x) * np.exp(-1j * lam * x), -30, 30)
        assert abs(phi.transform(lam) - oracle) < 1e-10

    def test_derivative_transform(self):
        phi = TestFunction.gaussian(center=0.3, width=1.2)
        h = 1e-5
        dphi = lambda x: (phi(x + h) - phi(x - h)) / (2 * h)  # noqa: E731
        oracle = quad_complex(lambda x: dphi(x) * np.exp(-1j * 1.5 * x), -30, 30)
        assert abs(phi.derivative_transform(1.5) - oracle) < 1e-8

    def test_from_dict(self):
        phi = TestFunction.from_dict({"family": "gaussian", "center": 0, "width": 1})
        assert phi.transform(0.0) == pytest.approx(SQRT_2PI)
        with pytest.raises(ValueError):
            TestFunction.from_dict({"family": "bump"})


class TestPairing:
    def test_singleton(self):
        assert pairing(FLambda(from_points([0])), gauss) == pytest.approx(SQRT_2PI, abs=1e-14)

    def test_two_points(self):
        val = pairing(FLambda(from_points([0, 1])), gauss)
        assert val == pytest.approx(SQRT_2PI * (1 + math.exp(-0.5)), abs=1e-14)
        assert abs(val - 4.027) < 1e-3

    def test_bochner_delta0_is_integral(self):
        phi = TestFunction.gaussian(center=1.3, width=0.4, amplitude=3.0)
        F = BochnerDistribution(AtomicMeasure([0.0], [1.0]))
        assert abs(pairing(F, phi) - quad_complex(phi, -20, 20)) < 1e-10

    def test_pairing_is_integral_for_shifted_phi(self):
        phi = TestFunction.gaussian(center=0.6)
        F = FLambda(from_points([0, 1, 4]))
        oracle = quad_complex(lambda x: F(x) * phi(x), -30, 30)
        assert abs(pairing(F, phi) - oracle) < 1e-9

    def test_linear_and_additive(self):
        a, b = TestFunction.gaussian(), TestFunction.gaussian(center=1.0)
        F = FLambda(generate(4, {0, 1}, 3))
        combo = TestFunction.gaussian_sum([2.0, -3.0], [0.0, 1.0])
        assert pairing(F, combo) == pytest.approx(2 * pairing(F, a) - 3 * pairing(F, b), abs=1e-14)
        assert pairing(F, a.scaled(2.0)) == 2 * pairing(F, a)
        left, right = from_points([0, 1, 4]), from_points([5, 16])
        whole = from_points([0, 1, 4, 5, 16])
        assert pairing(FLambda(whole), gauss) == pytest.approx(
            pairing(FLambda(left), gauss) + pairing(FLambda(right), gauss), abs=1e-15
        )

    def test_levels(self):
        F = FLambda(generate(4, {0, 1}, 6))
        assert pairing(F, gauss, 0) == pytest.approx(SQRT_2PI)
        assert pairing(F, gauss, 1) == pytest.approx(SQRT_2PI * (1 + math.exp(-0.5)))


class TestConvolve:
    def test_singleton_constant(self):
        F = FLambda(from_points([0]))
        np.testing.assert_allclose(convolve(F, gauss, np.linspace(-3, 3, 7)), SQRT_2PI, atol=1e-14)

    def test_against_quadrature(self):
        F = FLambda(from_points([0, 1, 4]))
        for x in (0.0, 0.8, -2.1):
            oracle = quad_complex(lambda y: gauss(y) * F(x - y), -40, 40)
            assert abs(convolve(F, gauss, x) - oracle) < 1e-6
        assert abs(convolve(F, gauss, 0.0) - SQRT_2PI * sum(math.exp(-l * l / 2) for l in (0, 1, 4))) < 1e-14

    def test_vanishing_transform(self):
        phi = TestFunction.gaussian_sum([1.0, -1.0], [0.0, 2 * math.pi])
        F = FLambda(from_points(range(-3, 4)))
        np.testing.assert_allclose(convolve(F, phi, np.linspace(0, 5, 6)), 0, atol=1e-12)


class TestNorm:
    def test_zero(self):
        assert rkhs_norm(RKHSElement(np.array([0.0, 1.0]), np.zeros(2))) == 0

    def test_gaussian_two_points(self):
        e = RKHSElement.from_test_function(gauss, FLambda(from_points([0, 1])))
        assert e.norm == pytest.approx(math.sqrt(2 * math.pi * (1 + math.exp(-1))), abs=1e-14)
        assert abs(e.norm - 2.932) < 1e-3

    def test_unit(self):
        assert rkhs_norm(np.array([1j])) == 1.0

    def test_double_integral(self):
        F = FLambda(from_points([0, 1, 4]))
        h = 0.02
        x = np.arange(-10, 10 + h / 2, h)
        phi = gauss(x)
        K = F(np.subtract.outer(x, x))
        oracle = (h * h * phi @ K @ phi.conj()).real
        e = RKHSElement.from_test_function(gauss, F)
        assert abs(e.norm**2 - oracle) < 1e-5

    def test_element_evaluates_as_convolution(self):
        F = FLambda(from_points([0, 1, 4]))
        e = RKHSElement.from_test_function(gauss, F)
        x = np.linspace(-2, 2, 5)
        np.testing.assert_allclose(e(x), convolve(F, gauss, x), atol=1e-14)


class TestMembership:
    def test_zero(self):
        assert membership_test([np.zeros(2**m) for m in range(6)], 1.0).member

    def test_gaussian_converges(self):
        F = FLambda(generate(4, {0, 1}, 8))
        rep = membership_test(coefficient_levels(gauss, F, range(9)), 10.0)
        assert rep.member
        assert all(b >= a for a, b in zip(rep.partial_sums, rep.partial_sums[1:]))
        assert rep.partial_sums[-1] - rep.partial_sums[-2] < 1e-12

    def test_constant_coefficients_diverge(self):
        rep = membership_test([np.ones(2**m) for m in range(9)], 100.0)
        assert not rep.member
        assert rep.partial_sums[-1] == 256


class TestBochner:
    def test_delta0(self):
        b = bochner_check(AtomicMeasure([0.0], [1.0]), gauss)
        assert b.defect < 1e-8
        assert b.rhs == pytest.approx(SQRT_2PI)

    def test_symmetric_pair(self):
        b = bochner_check(AtomicMeasure([-1.0, 1.0], [0.5, 0.5]), gauss)
        assert b.rhs == pytest.approx(SQRT_2PI * math.exp(-0.5), abs=1e-15)
        assert b.defect < 1e-8

    def test_linearity(self):
        mu = AtomicMeasure([-0.3, 1.2, 2.0], [0.2, 0.5, 0.3])
        b1, b2 = bochner_check(mu, gauss), bochner_check(mu.scaled(2.0), gauss)
        assert b2.rhs == pytest.approx(2 * b1.rhs)
        assert b2.lhs == pytest.approx(2 * b1.lhs)

    def test_shifted_phi(self):
        b = bochner_check(AtomicMeasure([0.5, 2.0], [1.0, 0.3]), TestFunction.gaussian(center=0.4))
        assert b.defect < 1e-8

    def test_coarse_grid_reported(self):
        b = bochner_check(AtomicMeasure([0.0], [1.0]), gauss, grid=np.linspace(-1, 1, 3))
        assert b.defect > 1e-2


class TestSobolev:
    def test_delta0(self):
        s = sobolev_norm_check(AtomicMeasure([0.0], [1.0]), gauss)
        assert s.weighted == s.plain == pytest.approx(2 * math.pi)
        assert s.defect == 0

    def test_delta1(self):
        s = sobolev_norm_check(AtomicMeasure([1.0], [1.0]), gauss)
        assert s.plain == pytest.approx(abs(gauss.transform(1.0)) ** 2)
        assert s.defect < 1e-12

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_five_atoms(self, seed):
        rng = np.random.default_rng(seed)
        mu = AtomicMeasure(rng.uniform(-4, 4, 5), rng.uniform(0.1, 2, 5))
        assert sobolev_norm_check(mu, TestFunction.gaussian(width=rng.uniform(0.3, 2))).defect < 1e-12


class TestTemperedBound:
    def test_singleton(self):
        tb = tempered_bound_check(from_points([0]), gauss, M=1)
        assert tb.holds
        assert tb.pairings[0] <= tb.seminorm

    def test_seminorm_value(self):
        # sup (1 + x^2) sqrt(2 pi) exp(-x^2/2) is at x = 1: 2 sqrt(2 pi) exp(-1/2)
        assert seminorm(gauss, 1) == pytest.approx(2 * SQRT_2PI * math.exp(-0.5), rel=1e-3)

    def test_lambda4_levels(self):
        tb = tempered_bound_check(generate(4, {0, 1}, 6), gauss, 1, levels=range(1, 7))
        assert tb.holds
        for m, p, c in zip(tb.levels, tb.pairings, tb.constants):
            assert c == c_m_constant(generate(4, {0, 1}, m), 1)
            assert p == abs(pairing(FLambda(generate(4, {0, 1}, m)), gauss))

    def test_homogeneous(self):
        spec = generate(4, {0, 1}, 4)
        a = tempered_bound_check(spec, gauss, 1, levels=[4])
        b = tempered_bound_check(spec, gauss.scaled(3.0), 1, levels=[4])
        assert b.seminorm == pytest.approx(3 * a.seminorm)
        assert b.pairings[0] == pytest.approx(3 * a.pairings[0])


class TestQuadraticFormBound:
    cosF = staticmethod(lambda x: np.cos(x))

    def test_cosine_identity_gram(self):
        pts = [0.0, math.pi / 2]
        assert quadratic_form_bound(self.cosF, np.cos, pts) == pytest.approx(1.0, abs=1e-15)

    def test_zero(self):
        assert quadratic_form_bound(self.cosF, lambda x: np.zeros_like(x), [0.0, math.pi / 2]) == 0

    def test_reproducing_kernel_bound(self):
        F = FLambda(from_points([0, 1, 4]))
        pts = np.linspace(0, 1, 3)
        for x0 in pts:
            a0 = quadratic_form_bound(F, lambda x: F(x - x0), pts)
            assert a0 <= F(0).real + 1e-9
            assert a0 == pytest.approx(3.0)

    def test_homogeneous(self):
        F = FLambda(from_points([0, 1, 4]))
        pts = np.array([0.0, 0.4, 1.1])
        xi = np.array([1.0, -0.5j, 0.25])
        assert quadratic_form_bound(F, 3 * xi, pts) == pytest.approx(9 * quadratic_form_bound(F, xi, pts))

    def test_bound_holds_for_random_coefficients(self):
        F = FLambda(from_points([0, 1, 4]))
        pts = np.array([0.0, 0.4, 1.1])
        xi = np.array([1.0, -0.5j, 0.25])
        a0 = quadratic_form_bound(F, xi, pts)
        G = F(np.subtract.outer(pts, pts))
        rng = np.random.default_rng(2)
        for _ in range(200):
            c = rng.normal(size=3) + 1j * rng.normal(size=3)
            lhs = abs(np.sum(c * xi)) ** 2
            rhs = a0 * np.real(c @ G @ c.conj())
            assert lhs <= rhs * (1 + 1e-9)

    def test_singular(self):
        F = FLambda(from_points([0]))
        with pytest.raises(SingularGramError):
            quadratic_form_bound(F, np.ones(2), [0.0, 1.0])

    def test_positive_definite_checker(self):
        assert is_positive_definite(FLambda(from_points([0, 1, 4])), np.linspace(-3, 3, 9))
        assert not is_positive_definite(lambda x: np.cos(x) - 0.5, [0.0, math.pi])
