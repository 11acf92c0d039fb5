"""Product-formula kernels, the measure weight, envelope bounds, and the
spectral representation of the confluent kernel.

The central objects are

* ``k_alpha(x, y, xi)`` — the kernel of the Whittaker product formula
  ``W(x) W(y) = int W(xi) k_alpha(x,y,xi) xi^{-2} dxi``, and
* ``q_a(x, y, xi) = (x y xi)^{a-1/2} e^{(x+y+xi)/2} k_{1/2-a}(x, y, xi)`` —
  its confluent-form counterpart paired with the weight
  ``m_a(xi) = xi^{-2a-1} e^{-xi}``, strictly positive for ``a >= 0``.

Every exponential is assembled from the algebraically reduced exponent

    (x + y + xi)/2 - t^2/2 = -(xy/(4 xi) + x xi/(4 y) + y xi/(4 x)),
    t = (xy + x xi + y xi) / sqrt(2 x y xi),

together with the scaled cylinder function ``e^{t^2/4} D(t)``, so no factor
over- or underflows before it is combined.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .quadrature import IntegralEstimate, QuadratureConfig, integrate_index
from .specfun import parabolic_d_scaled

__all__ = [
    "weight_m", "log_weight_m", "kernel_k", "kernel_q", "log_kernel_q",
    "kernel_envelope", "envelope_coefficient", "kernel_q_spectral",
    "xi_upper_cutoff",
]

_SQRT_PI = math.sqrt(math.pi)
_LN_SQRT_PI = 0.5 * math.log(math.pi)
_LN2 = math.log(2.0)


def _pos(name, *vals):
    for v in vals:
        if np.any(np.asarray(v) <= 0.0) or not np.all(np.isfinite(np.asarray(v))):
            raise ValueError(f"{name}: arguments must be strictly positive and finite")


def weight_m(a: float, xi):
    """Measure weight ``m_a(xi) = xi**(-2a-1) * exp(-xi)``."""
    _pos("weight_m", xi)
    xi = np.asarray(xi, dtype=float)
    return np.exp(-(2.0 * a + 1.0) * np.log(xi) - xi)


def log_weight_m(a: float, xi):
    xi = np.asarray(xi, dtype=float)
    return -(2.0 * a + 1.0) * np.log(xi) - xi


def _t_arg(x, y, xi):
    return (x * y + x * xi + y * xi) / np.sqrt(2.0 * x * y * xi)


def _reduced_exponent(x, y, xi):
    """(x+y+xi)/2 - t^2/2  ==  -(xy/4xi + x xi/4y + y xi/4x)."""
    return -(x * y / (4.0 * xi) + x * xi / (4.0 * y) + y * xi / (4.0 * x))


def kernel_k(alpha, x, y, xi):
    """Product-formula kernel ``k_alpha(x, y, xi)`` (complex order allowed).

    Arguments broadcast; the kernel is fully symmetric in (x, y, xi).
    """
    _pos("kernel_k", x, y, xi)
    alpha = complex(alpha)
    x, y, xi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, xi)))
    t = _t_arg(x, y, xi)
    # k = 2^{-1-alpha} pi^{-1/2} (xy xi)^{1/2} e^{(x+y+xi)/2 - t^2/4} D_{2 alpha}(t)
    #   = 2^{-1-alpha} pi^{-1/2} (xy xi)^{1/2} e^{reduced} [e^{t^2/4} D_{2 alpha}(t)]
    logmag = 0.5 * np.log(x * y * xi) + _reduced_exponent(x, y, xi)
    pref = 2.0 ** (-1.0 - alpha) / _SQRT_PI
    flat = np.ravel(t)
    dvals = np.reshape(parabolic_d_scaled(2.0 * alpha, flat), t.shape)
    out = pref * np.exp(logmag) * dvals
    return out if out.shape else complex(out)


def kernel_q(a: float, x, y, xi):
    """Confluent-form kernel ``q_a(x, y, xi)``; strictly positive for a >= 0."""
    out = np.exp(log_kernel_q(a, x, y, xi))
    return out if np.ndim(out) else float(out)


def log_kernel_q(a: float, x, y, xi):
    """``log q_a(x, y, xi)`` for real ``a >= 0`` (overflow-safe form)."""
    _pos("kernel_q", x, y, xi)
    if a < 0.0:
        raise ValueError("kernel_q: positivity regime requires a >= 0")
    x, y, xi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, xi)))
    t = _t_arg(x, y, xi)
    flat = np.ravel(t)
    dvals = np.real(np.reshape(parabolic_d_scaled(1.0 - 2.0 * a, flat), t.shape))
    # q = 2^{a-3/2} pi^{-1/2} (xy xi)^a e^{(x+y+xi)/2 + reduced} [e^{t^2/4} D_{1-2a}(t)]
    return ((a - 1.5) * _LN2 - _LN_SQRT_PI + a * np.log(x * y * xi)
            + 0.5 * (x + y + xi) + _reduced_exponent(x, y, xi) + np.log(dvals))


@lru_cache(maxsize=256)
def envelope_coefficient(a: float, y: float) -> float:
    """Coefficient ``A(y)`` of the envelope bound for ``q_a``.

    ``A(y) = 2**(2a-2) * pi**(-1/2) * sup_{t >= sqrt(y)} g(t)`` with
    ``g(t) = t**(2a-1) e^{t^2/4} D_{1-2a}(t)``.  On the kernel's reachable set
    ``t >= sqrt(y)`` holds, and ``g -> 1`` at infinity, so the supremum is
    found on a grid plus a golden-section polish and floored at the limit.
    """
    t_lo = math.sqrt(y)
    t_hi = t_lo + 45.0
    grid = np.geomspace(max(t_lo, 1e-8), t_hi, 600)
    g = grid ** (2.0 * a - 1.0) * np.real(parabolic_d_scaled(1.0 - 2.0 * a, grid))
    k = int(np.argmax(g))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0

    def gf(t):
        return float(t ** (2.0 * a - 1.0)
                     * np.real(parabolic_d_scaled(1.0 - 2.0 * a, np.array([t]))[0]))

    c, d = hi - phi * (hi - lo), lo + phi * (hi - lo)
    fc, fd = gf(c), gf(d)
    for _ in range(60):
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + phi * (hi - lo)
            fd = gf(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - phi * (hi - lo)
            fc = gf(c)
    sup = max(float(g.max()), gf(0.5 * (lo + hi)), 1.0)
    return 2.0 ** (2.0 * a - 2.0) / _SQRT_PI * sup


def kernel_envelope(a: float, x, y, xi):
    """Upper bound for ``|q_a(x, y, xi)|``:

    ``A(y) (x y xi)^{2a-1/2} (xy + x xi + y xi)^{1-2a}
    exp(xi - (x(xi-y) + y xi)^2 / (4 x y xi))``.
    """
    _pos("kernel_envelope", x, y, xi)
    A = envelope_coefficient(float(a), float(y))
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    s = x * y + x * xi + y * xi
    expo = xi - (x * (xi - y) + y * xi) ** 2 / (4.0 * x * y * xi)
    out = A * np.exp((2.0 * a - 0.5) * np.log(x * y * xi)
                     + (1.0 - 2.0 * a) * np.log(s) + expo)
    return out if np.ndim(out) else float(out)


def log_kernel_envelope(a: float, x: float, y: float, xi):
    A = envelope_coefficient(float(a), float(y))
    xi = np.asarray(xi, dtype=float)
    s = x * y + x * xi + y * xi
    expo = xi - (x * (xi - y) + y * xi) ** 2 / (4.0 * x * y * xi)
    return (np.log(A) + (2.0 * a - 0.5) * np.log(x * y * xi)
            + (1.0 - 2.0 * a) * np.log(s) + expo)


def xi_upper_cutoff(a: float, x: float, y: float, tol: float = 1e-16) -> float:
    """Abscissa beyond which ``envelope * m_a`` certifiably stays below tol.

    Used to truncate translation integrals; the envelope decays at least like
    ``exp(-c xi)`` with ``c = (x-y)^2/(4xy) + something``, so a bisection on
    the log-envelope terminates quickly.
    """
    hi = 10.0
    for _ in range(200):
        val = float(log_kernel_envelope(a, x, y, np.array([hi]))[0]
                    + log_weight_m(a, np.array([hi]))[0])
        if val < math.log(tol):
            return hi
        hi *= 1.3
        if hi > 1e6:
            return hi
    return hi


def kernel_q_spectral(a: float, x: float, y: float, xi: float,
                      cfg: QuadratureConfig | None = None) -> IntegralEstimate:
    """``q_a`` evaluated through its index-integral representation.

    ``q_a(x,y,xi) = int_0^inf K(x,tau) K(y,tau) K(xi,tau) rho_a(tau) dtau``
    with ``K`` the spectral kernel; serves as an internal oracle for
    :func:`kernel_q`.  Requires ``a > 0``.
    """
    if a <= 0.0:
        raise ValueError("kernel_q_spectral: requires a > 0")
    _pos("kernel_q_spectral", x, y, xi)
    from .transform import density_rho, spectral_kernel

    cfg = cfg or QuadratureConfig()
    pts = np.array([x, y, xi], dtype=float)

    def integrand(tau):
        out = np.empty(np.asarray(tau).size, dtype=float)
        for i, t in enumerate(np.atleast_1d(tau)):
            out[i] = (float(np.prod(spectral_kernel(a, float(t), pts)))
                      * density_rho(a, float(t)))
        return out

    return integrate_index(integrand, cfg, a=a)
