import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import mpmath as mp
from scipy.special import loggamma as scipy_loggamma

from indexwhittaker import (AccuracyWarning, bessel_k, kummer_psi, ln_gamma,
                            parabolic_d, parabolic_d_scaled, whittaker_w)

from conftest import rel_err

mp.mp.dps = 30

# values frozen from the high-precision oracles in this file's classes
PSI_HALF_1_1 = 0.85988663964100864808       # quadrature of the Laplace integral
W_M03_04I_15 = 0.29926746914005233461       # high-precision Whittaker evaluation
D_M06_12 = 0.52435754220125433959           # high-precision cylinder evaluation
K_2I_1 = 0.08061699762236597857             # quadrature of the cosh representation


class TestLnGamma:
    def test_at_one(self):
        assert abs(ln_gamma(1.0)) <= 1e-14

    def test_at_half(self):
        assert rel_err(ln_gamma(0.5), 0.5 * np.log(np.pi)) <= 1e-14

    def test_gamma_half_plus_i_reflection(self):
        # |Gamma(1/2 + i)|^2 == pi / cosh(pi)
        val = np.exp(2.0 * np.real(ln_gamma(0.5 + 1j)))
        assert rel_err(val, np.pi / np.cosh(np.pi)) <= 1e-13

    def test_against_scipy_grid(self):
        rng = np.random.default_rng(3)
        z = rng.uniform(-18, 18, 500) + 1j * rng.uniform(-18, 18, 500)
        z = z[np.abs(z - np.round(z.real)) > 1e-6]
        got = ln_gamma(z)
        ref = scipy_loggamma(z)
        assert np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1.0)) <= 5e-14

    def test_exp_recovers_gamma(self):
        from scipy.special import gamma as scipy_gamma
        rng = np.random.default_rng(4)
        z = rng.uniform(-8, 8, 300) + 1j * rng.uniform(-8, 8, 300)
        z = z[np.abs(z - np.round(z.real)) > 1e-3]
        got = np.exp(ln_gamma(z))
        ref = scipy_gamma(z)
        assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-13

    def test_pole_raises(self):
        with pytest.raises(ValueError, match="pole at -3"):
            ln_gamma(-3.0 + 1e-13j)

    @given(st.floats(0.6, 15.0), st.floats(0.1, 15.0))
    @settings(max_examples=25, deadline=None)
    def test_conjugate_symmetry(self, re, im):
        z = complex(re, im)
        assert abs(ln_gamma(np.conj(z)) - np.conj(ln_gamma(z))) <= 1e-12 * abs(ln_gamma(z))


class TestKummerPsi:
    def test_power_reduction(self):
        # Psi(2a, 1+2a; x) == x^{-2a} at a = 1, x = 2
        assert rel_err(kummer_psi(2.0, 3.0, 2.0), 0.25) <= 1e-12

    def test_parameter_reflection(self):
        a, nu, x = 0.7, 0.3, 1.5
        lhs = x ** (a + nu) * kummer_psi(a + nu, 1 + 2 * nu, x)
        rhs = x ** (a - nu) * kummer_psi(a - nu, 1 - 2 * nu, x)
        assert rel_err(lhs, rhs) <= 1e-12

    def test_log_case_frozen_oracle(self):
        assert rel_err(kummer_psi(0.5, 1.0, 1.0), PSI_HALF_1_1) <= 1e-12

    def test_oracle_regeneration(self):
        # the frozen value comes from the Laplace representation at high precision
        val = mp.quad(lambda t: mp.exp(-t) / mp.sqrt(t) / mp.sqrt(1 + t),
                      [0, 1, mp.inf]) / mp.gamma(mp.mpf('0.5'))
        assert abs(float(val) - PSI_HALF_1_1) <= 1e-15

    @pytest.mark.parametrize("a,b", [
        (0.5 + 2.0j, 1.0 + 4.0j),
        (1.5 + 8.0j, 1.0 + 16.0j),
        (2.5 + 0.3j, 1.0 + 0.6j),
        (0.5, 0.0),
        (0.5, -1.0),
        (-0.3, 2.0),
        (-4.6, 1.0),
        (3.0, -2.5),
    ])
    def test_against_mpmath(self, a, b):
        for x in (1e-3, 0.3, 2.0, 10.0, 45.0):
            ref = complex(mp.hyperu(mp.mpc(a), mp.mpc(b), mp.mpf(x)))
            assert rel_err(kummer_psi(a, b, x), ref) <= 1e-10

    def test_polynomial_case(self):
        # Psi(-2, b; x) = x^2 - 2(b+1)x + b(b+1), exactly
        b = 3.0
        for x in (0.2, 1.0, 7.0):
            want = x**2 - 2 * (b + 1) * x + b * (b + 1)
            assert rel_err(kummer_psi(-2.0, b, x), want) <= 1e-13

    def test_random_envelope_unflagged_accuracy(self):
        import warnings
        rng = np.random.default_rng(11)
        checked = 0
        for _ in range(60):
            a = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
            b = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
            x = float(10 ** rng.uniform(-2.5, 1.6))
            with warnings.catch_warnings(record=True) as rec:
                warnings.simplefilter("always")
                got = kummer_psi(a, b, x)
            if any(issubclass(w.category, AccuracyWarning) for w in rec):
                continue
            ref = complex(mp.hyperu(mp.mpc(a), mp.mpc(b), mp.mpf(x)))
            if ref != 0:
                assert rel_err(got, ref) <= 1e-9, (a, b, x)
                checked += 1
        assert checked >= 30

    def test_warning_outside_envelope(self):
        with pytest.warns(AccuracyWarning):
            kummer_psi(25.0, 1.0, 1.0)

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(ValueError):
            kummer_psi(1.0, 1.0, -2.0)


class TestWhittakerW:
    def test_elementary_case(self):
        # W_{1/2+nu, nu}(x) = x^{1/2+nu} e^{-x/2} at nu = 1, x = 2
        assert rel_err(whittaker_w(1.5, 1.0, 2.0), 2.0**1.5 * np.exp(-1.0)) <= 1e-12

    def test_bessel_half_order(self):
        assert rel_err(whittaker_w(0.0, 0.5, 2.0), np.exp(-1.0)) <= 1e-12

    def test_complex_order_frozen_oracle(self):
        got = whittaker_w(-0.3, 0.4j, 1.5)
        assert rel_err(got, W_M03_04I_15) <= 1e-11
        ref = complex(mp.whitw(mp.mpf('-0.3'), mp.mpc(0, '0.4'), mp.mpf('1.5')))
        assert abs(ref.real - W_M03_04I_15) <= 1e-15

    def test_realness_imaginary_order(self):
        rng = np.random.default_rng(5)
        for _ in range(12):
            alpha = rng.uniform(-2.0, 0.4)
            tau = rng.uniform(0.0, 6.0)
            x = 10 ** rng.uniform(-2, 1.5)
            w = whittaker_w(alpha, 1j * tau, x)
            assert abs(w.imag) <= 1e-12 * max(abs(w), 1e-300)

    def test_consistency_with_psi(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            alpha = rng.uniform(-2, 1.2)
            nu = complex(rng.uniform(0, 1.5), rng.uniform(-1, 1))
            x = 10 ** rng.uniform(-1.5, 1.5)
            lhs = whittaker_w(alpha, nu, x)
            rhs = (np.exp(-x / 2.0) * x ** (0.5 + nu)
                   * kummer_psi(0.5 - alpha + nu, 1 + 2 * nu, x))
            assert rel_err(lhs, rhs) <= 1e-10

    def test_recurrence(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            alpha = rng.uniform(-1.5, 0.4)
            nu = rng.uniform(0.2, 1.5)
            x = 10 ** rng.uniform(-1, 1.3)
            lhs = np.sqrt(x) * whittaker_w(alpha + 0.5, nu + 0.5, x)
            rhs = ((x + 2 * nu) * whittaker_w(alpha, nu, x)
                   + (0.5 - alpha - nu) * np.sqrt(x) * whittaker_w(alpha - 0.5, nu - 0.5, x))
            scale = max(abs(lhs), abs(rhs))
            assert abs(lhs - rhs) <= 1e-9 * scale

    def test_large_argument_law(self):
        x, alpha, nu = 200.0, -0.4, 0.3
        with np.errstate(all="ignore"):
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", AccuracyWarning)
                ratio = whittaker_w(alpha, nu, x) / (x**alpha * np.exp(-x / 2.0))
        assert 0.99 <= ratio.real <= 1.01

    def test_large_index_law(self):
        # leading oscillatory asymptotic for W_{alpha, i tau}(x), tau -> inf
        alpha, x = -0.4, 2.0
        devs = []
        for tau in (20.0, 40.0, 80.0):
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", AccuracyWarning)
                w = whittaker_w(alpha, 1j * tau, x).real
            lead = ((2 * x) ** 0.5 * tau ** (alpha - 0.5) * np.exp(-np.pi * tau / 2.0)
                    * np.cos(tau * np.log(x / (4.0 * tau))
                             + np.pi / 2.0 * (0.5 - alpha) + tau))
            devs.append(abs(w / lead - 1.0))
        assert devs[0] > devs[1] > devs[2]
        for dev, tau in zip(devs, (20.0, 40.0, 80.0)):
            assert dev <= 5.0 / tau

    def test_strip_bound(self):
        # |x^{a+nu} Psi(a+nu, 1+2nu; x)| <= 1 on the strip 0 <= Re nu <= a
        for a in (0.3, 1.0, 2.5):
            for re in np.linspace(0.0, a, 4):
                for im in (-3.0, -0.7, 0.8, 2.5):
                    nu = complex(re, im)
                    x = np.geomspace(1e-2, 30.0, 8)
                    vals = np.abs(np.exp((a + nu) * np.log(x))
                                  * kummer_psi(a + nu, 1 + 2 * nu, x))
                    assert np.all(vals <= 1.0 + 1e-10)


class TestParabolicD:
    def test_exponential_case(self):
        assert rel_err(parabolic_d(0.0, 2.0), np.exp(-1.0)) <= 1e-12

    def test_recurrence_case(self):
        # D_1(1) = 1*D_0(1) - 0*D_{-1}(1) = e^{-1/4}
        assert rel_err(parabolic_d(1.0, 1.0), np.exp(-0.25)) <= 1e-12

    def test_frozen_oracle(self):
        assert rel_err(parabolic_d(-0.6, 1.2), D_M06_12) <= 1e-11
        ref = complex(mp.pcfd(mp.mpf('-0.6'), mp.mpf('1.2')))
        assert abs(ref.real - D_M06_12) <= 1e-15

    def test_relation_to_whittaker(self):
        rng = np.random.default_rng(8)
        for _ in range(8):
            mu = complex(rng.uniform(-3, 0.8), rng.uniform(-1, 1))
            z = 10 ** rng.uniform(-0.5, 0.8)
            lhs = parabolic_d(mu, z)
            rhs = (2 ** (mu / 2 + 0.25) * z**-0.5
                   * whittaker_w(mu / 2 + 0.25, 0.25, z**2 / 2.0))
            assert rel_err(lhs, rhs) <= 1e-10

    def test_upward_recurrence_consistency(self):
        for mu, z in ((3.3, 0.7), (2.0, 1.9), (4.7, 2.5)):
            got = parabolic_d(mu, z)
            ref = complex(mp.pcfd(mp.mpf(mu), mp.mpf(z)))
            assert rel_err(got, ref) <= 1e-10

    def test_scaled_variant(self):
        z = np.array([0.5, 2.0, 8.0])
        lhs = parabolic_d_scaled(-0.8, z)
        rhs = np.exp(z**2 / 4.0) * parabolic_d(-0.8, z)
        assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) <= 1e-12


class TestBesselK:
    def test_elementary_half_order(self):
        assert rel_err(bessel_k(0.5, 1.0), np.sqrt(np.pi / 2.0) * np.exp(-1.0)) <= 1e-12

    def test_whittaker_reduction(self):
        # pi^{-1/2} (2x)^{1/2} K_nu(x) == W_{0,nu}(2x) at nu = 0.3i, x = 1
        nu, x = 0.3j, 1.0
        lhs = np.pi**-0.5 * (2 * x) ** 0.5 * bessel_k(nu, x)
        rhs = whittaker_w(0.0, nu, 2 * x)
        assert rel_err(lhs, rhs) <= 1e-11

    def test_imaginary_order_frozen_oracle(self):
        assert rel_err(bessel_k(2j, 1.0), K_2I_1) <= 1e-11
        # tail beyond t=8 is below exp(-cosh(8)) ~ 1e-647
        ref = complex(mp.quad(lambda t: mp.exp(-mp.cosh(t)) * mp.cos(2 * t), [0, 4, 8]))
        assert abs(ref.real - K_2I_1) <= 1e-12
