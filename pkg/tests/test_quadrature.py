import numpy as np
import pytest

from indexwhittaker import (QuadratureConfig, integrate_halfline,
                            integrate_index, kernel_q, weight_m)
from indexwhittaker.quadrature import default_tau_max, halfline_nodes

from conftest import rel_err

SQRT_PI = np.sqrt(np.pi)
# closed form of int_0^inf (2/pi) t sinh(pi t) exp(-2 pi t) dt, evaluated from the
# antiderivative (difference of two Gamma(2)-type integrals): 8 / (9 pi^3)
INDEX_EXP_SINH_EXACT = 8.0 / (9.0 * np.pi**3)


class TestHalfline:
    def test_exponential(self, cfg):
        est = integrate_halfline(lambda x: np.exp(-x), cfg)
        assert est.converged
        assert abs(est.value - 1.0) <= 1e-12

    def test_gamma_half(self, cfg):
        est = integrate_halfline(lambda x: x**-0.5 * np.exp(-x), cfg,
                                 power_at_zero=-0.5)
        assert est.converged
        assert abs(est.value - SQRT_PI) <= 1e-10

    def test_translation_normalization(self, cfg):
        # the confluent product-formula kernel integrates to 1 against its weight
        est = integrate_halfline(lambda xi: kernel_q(0.5, 1.0, 1.0, xi)
                                 * weight_m(0.5, xi), cfg)
        assert est.converged
        assert abs(est.value - 1.0) <= 1e-8

    def test_complex_and_scaled(self, cfg):
        a = 0.7 + 3.0j
        est = integrate_halfline(lambda x: x**(a - 1) * np.exp(-x), cfg,
                                 power_at_zero=a.real - 1.0)
        from scipy.special import gamma
        assert rel_err(est.value, complex(gamma(a))) <= 1e-11

    def test_linearity(self, cfg):
        rng = np.random.default_rng(42)
        for _ in range(5):
            al, be = rng.uniform(-2, 2, 2)

            def f(x):
                return x**2 * np.exp(-x)

            def g(x):
                return np.sqrt(x) * np.exp(-2.0 * x)

            lhs = integrate_halfline(lambda x: al * f(x) + be * g(x), cfg).value
            rhs = (al * integrate_halfline(f, cfg).value
                   + be * integrate_halfline(g, cfg).value)
            scale = max(abs(lhs), abs(rhs), 1.0)
            assert abs(lhs - rhs) <= 10.0 * cfg.rel_tol * scale

    def test_refinement_monotonicity(self):
        errs = []
        for levels in (2, 3, 4, 5):
            cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-30,
                                   max_refinement_levels=levels)
            est = integrate_halfline(lambda x: x**-0.5 * np.exp(-x), cfg,
                                     power_at_zero=-0.5)
            errs.append(est.error_estimate)
        assert all(e2 <= e1 * (1 + 1e-12) for e1, e2 in zip(errs, errs[1:]))

    def test_determinism(self, cfg):
        def f(x):
            return np.sin(x) * np.exp(-x) / np.sqrt(x)

        a = integrate_halfline(f, cfg, power_at_zero=-0.5)
        b = integrate_halfline(f, cfg, power_at_zero=-0.5)
        assert a.value == b.value and a.error_estimate == b.error_estimate

    def test_nan_aborts_with_diagnostic(self, cfg):
        def f(x):
            out = np.exp(-x)
            out[x > 5.0] = np.nan
            return out

        with pytest.raises(FloatingPointError, match="non-finite"):
            integrate_halfline(f, cfg)

    def test_nonconvergence_flagged(self):
        cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-300,
                               max_refinement_levels=1)
        est = integrate_halfline(lambda x: np.cos(7.0 * x) * np.exp(-x), cfg)
        assert not est.converged

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureConfig(max_refinement_levels=0)
        with pytest.raises(ValueError):
            QuadratureConfig(tau_max=-1.0)

    def test_endpoint_hint_validation(self):
        with pytest.raises(ValueError):
            halfline_nodes(0, power_at_zero=-1.0)


class TestIndex:
    def test_exponential(self, cfg):
        est = integrate_index(lambda t: np.exp(-np.pi * t), cfg, a=1.0)
        assert est.converged
        assert abs(est.value - 1.0 / np.pi) <= 1e-10

    def test_density_weighted_decay(self, cfg):
        est = integrate_index(
            lambda t: 2.0 / np.pi * t * np.sinh(np.pi * t) * np.exp(-2.0 * np.pi * t),
            cfg, a=0.5)
        assert est.converged
        assert rel_err(est.value, INDEX_EXP_SINH_EXACT) <= 1e-10

    def test_tail_bound_recorded(self):
        cfg = QuadratureConfig(tau_max=8.0)
        est = integrate_index(lambda t: np.exp(-t), cfg)
        # truncated mass e^-8 must be covered by the reported error
        assert est.error_estimate >= np.exp(-8.0) * 0.5
        assert abs(est.value - (1.0 - np.exp(-8.0))) <= 1e-10

    def test_default_tau_max_envelope(self):
        for a in (0.5, 1.0, 2.5):
            T = default_tau_max(a, 1e-14)
            m = max(5.0 * a - 1.5, 0.0)
            assert T**m * np.exp(-np.pi * T / 2.0) <= 1.1e-14
