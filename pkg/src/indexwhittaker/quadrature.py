"""Adaptive double-exponential quadrature on the half line and on index intervals.

Two engines are provided:

* :func:`integrate_halfline` handles integrals over (0, inf) whose integrands
  combine an algebraic endpoint weight at 0 with exponential (or faster) decay
  at infinity.  Nodes come from the substitution ``x = exp(s * sinh(v))``,
  i.e. a double-exponential rule applied after mapping the half line to the
  real axis; the optional ``power_at_zero`` hint sets the stretching ``s`` so
  that an ``x**p`` endpoint weight is absorbed analytically.

* :func:`integrate_index` handles integrals over the spectral variable
  ``tau in [0, inf)`` whose integrands decay at least like ``exp(-c*tau)``
  beyond a truncation point.  The finite part uses a tanh-sinh rule; the
  truncated tail is bounded analytically and added to the error estimate.

Both engines refine by halving the trapezoid step, estimate the error as the
difference between consecutive refinement levels, and sum nodes in a fixed
order so results are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

# Hard limits of the node maps: |log x| never exceeds LOG_CAP so the abscissae
# stay representable in double precision.
LOG_CAP = 688.0
_V_MAX = 4.3
_H0 = 0.5


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation limits shared by all integration engines.

    Parameters
    ----------
    rel_tol, abs_tol : float
        Convergence targets; an estimate is accepted once consecutive
        refinement levels differ by at most ``max(abs_tol, rel_tol*|I|)``.
    max_refinement_levels : int
        Number of step-halvings attempted before giving up.
    x_truncation_bound : float
        Upper cutoff for half-line abscissae; nodes beyond it are dropped
        (used when a kernel envelope certifies the discarded tail).
    tau_max : float
        Truncation point of index integrals.  ``0`` selects an automatic
        value from the spectral envelope, see :func:`default_tau_max`.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_refinement_levels: int = 8
    x_truncation_bound: float = 1e300
    tau_max: float = 0.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_refinement_levels < 1:
            raise ValueError("max_refinement_levels must be >= 1")
        if self.tau_max < 0.0:
            raise ValueError("tau_max must be positive (or 0 for automatic)")

    def with_(self, **kw) -> "QuadratureConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class IntegralEstimate:
    """Result of one adaptive integration."""

    value: complex
    error_estimate: float
    nodes_used: int
    converged: bool

    @property
    def real(self) -> float:
        return self.value.real


def halfline_nodes(level: int, power_at_zero: float = 0.0,
                   x_cap: float = 1e300) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the half-line rule at a refinement level.

    The rule integrates ``f`` over (0, inf) as ``sum(w * f(x))``.  Node sets
    are fixed per level (level ``k`` uses step ``0.5 / 2**k``), which is what
    makes repeated calls reproducible and lets callers reuse evaluations.
    """
    if power_at_zero <= -1.0:
        raise ValueError("power_at_zero must exceed -1 for an integrable endpoint")
    s = max(1.0, 1.0 / (1.0 + power_at_zero))
    h = _H0 / 2**level
    cap = min(_V_MAX, float(np.arcsinh(LOG_CAP / s)))
    n = int(np.floor(cap / h))
    v = np.arange(-n, n + 1) * h
    x = np.exp(s * np.sinh(v))
    w = s * x * np.cosh(v) * h
    if x_cap < 1e300:
        # upper truncation only: the left (endpoint) range must stay intact
        keep = x <= x_cap
        x, w = x[keep], w[keep]
    return x, w


def _finite_nodes(level: int, upper: float) -> tuple[np.ndarray, np.ndarray]:
    """tanh-sinh nodes/weights on [0, upper]."""
    h = _H0 / 2**level
    n = int(np.floor(3.8 / h))
    v = np.arange(-n, n + 1) * h
    u = np.tanh(0.5 * np.pi * np.sinh(v))
    x = 0.5 * upper * (1.0 + u)
    w = 0.5 * upper * 0.5 * np.pi * np.cosh(v) / np.cosh(0.5 * np.pi * np.sinh(v)) ** 2 * h
    return x, w


def _check_finite(vals: np.ndarray, x: np.ndarray, where: str) -> None:
    bad = ~np.isfinite(vals)
    if np.any(bad):
        raise FloatingPointError(
            f"non-finite integrand sample in {where} at node(s) "
            f"{np.asarray(x)[bad][:3]!r}")


def integrate_halfline(f: Callable[[np.ndarray], np.ndarray],
                       cfg: QuadratureConfig | None = None,
                       power_at_zero: float = 0.0) -> IntegralEstimate:
    """Integrate ``f`` over (0, inf).

    Parameters
    ----------
    f : callable
        Vectorized integrand; must return finite values at every sampled
        abscissa (non-finite samples abort with :class:`FloatingPointError`).
    cfg : QuadratureConfig, optional
    power_at_zero : float
        Leading power ``p`` of the integrand at 0 (``f ~ C x**p``); only the
        singular range ``-1 < p < 0`` changes the rule.

    Returns
    -------
    IntegralEstimate
        ``converged`` is False when the refinement budget was exhausted; the
        best estimate and its error gap are still returned.
    """
    cfg = cfg or QuadratureConfig()
    prev = None
    est = 0.0 + 0.0j
    err = np.inf
    n_used = 0
    for level in range(cfg.max_refinement_levels + 1):
        x, w = halfline_nodes(level, power_at_zero, cfg.x_truncation_bound)
        vals = np.asarray(f(x)) * w
        _check_finite(vals, x, "integrate_halfline")
        est = complex(vals.sum())
        n_used += x.size
        if prev is not None:
            err = abs(est - prev)
            if err <= max(cfg.abs_tol, cfg.rel_tol * abs(est)):
                return IntegralEstimate(est, err, n_used, True)
        prev = est
    return IntegralEstimate(est, err, n_used, False)


def integrate_halfline_many(f: Callable[[np.ndarray], np.ndarray],
                            cfg: QuadratureConfig | None = None,
                            power_at_zero: float = 0.0,
                            ) -> tuple[np.ndarray, np.ndarray, bool]:
    """Vector-valued variant of :func:`integrate_halfline`.

    ``f(x)`` must return an array of shape ``(..., x.size)``; each leading
    slot is integrated with the shared node set.  Returns
    ``(values, error_estimates, all_converged)``.
    """
    cfg = cfg or QuadratureConfig()
    prev = None
    est = None
    err = None
    for level in range(cfg.max_refinement_levels + 1):
        x, w = halfline_nodes(level, power_at_zero, cfg.x_truncation_bound)
        vals = np.asarray(f(x))
        _check_finite(vals, np.broadcast_to(x, vals.shape), "integrate_halfline_many")
        est = vals @ w
        if prev is not None:
            err = np.abs(est - prev)
            if np.all(err <= np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(est))):
                return est, err, True
        prev = est
    return est, err if err is not None else np.full(np.shape(est), np.inf), False


def integrate_index_many(g: Callable[[np.ndarray], np.ndarray],
                         cfg: QuadratureConfig | None = None,
                         a: float | None = None,
                         tau_cap: float | None = None,
                         ) -> tuple[np.ndarray, np.ndarray, bool]:
    """Vector-valued variant of :func:`integrate_index` (shared tau nodes)."""
    cfg = cfg or QuadratureConfig()
    T = cfg.tau_max if cfg.tau_max > 0.0 else default_tau_max(a if a is not None else 1.0,
                                                              cfg.abs_tol)
    if tau_cap is not None:
        T = min(T, tau_cap)
    prev = None
    est = None
    err = None
    for level in range(cfg.max_refinement_levels + 1):
        t, w = _finite_nodes(level, T)
        vals = np.asarray(g(t))
        _check_finite(vals, np.broadcast_to(t, vals.shape), "integrate_index_many")
        est = vals @ w
        if prev is not None:
            err = np.abs(est - prev)
            if np.all(err <= np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(est))):
                return est, err, True
        prev = est
    return est, err if err is not None else np.full(np.shape(est), np.inf), False


def default_tau_max(a: float, abs_tol: float = 1e-14) -> float:
    """Truncation point for index integrals of the spectral calculus of order ``a``.

    Solves ``tau**m * exp(-pi*tau/2) = abs_tol`` for the envelope exponent
    ``m = max(5a - 3/2, 0)``, the growth left over when the Plancherel weight
    meets the ``exp(-pi*tau/2)`` kernel decay.
    """
    m = max(5.0 * a - 1.5, 0.0)
    tau = 2.0 / np.pi * (-np.log(abs_tol))
    for _ in range(4):
        tau = 2.0 / np.pi * (m * np.log(max(tau, 1.0)) - np.log(abs_tol))
    return float(max(tau, 5.0))


def index_tail_bound(g_at_T: float, T: float, m: float = 2.0) -> float:
    """Bound ``int_T^inf C tau^m exp(-pi tau/2) dtau`` given the integrand at T."""
    rate = 0.5 * np.pi - m / max(T, 1.0)
    if rate <= 0.0:
        rate = 0.5 * np.pi
    return abs(g_at_T) / rate


def integrate_index(g: Callable[[np.ndarray], np.ndarray],
                    cfg: QuadratureConfig | None = None,
                    a: float | None = None) -> IntegralEstimate:
    """Integrate ``g`` over [0, inf) in the index variable.

    The integral is truncated at ``cfg.tau_max`` (or the automatic point for
    order ``a``); the analytic tail bound is added to ``error_estimate``.
    """
    cfg = cfg or QuadratureConfig()
    T = cfg.tau_max if cfg.tau_max > 0.0 else default_tau_max(a if a is not None else 1.0,
                                                              cfg.abs_tol)
    prev = None
    est = 0.0 + 0.0j
    err = np.inf
    n_used = 0
    for level in range(cfg.max_refinement_levels + 1):
        t, w = _finite_nodes(level, T)
        vals = np.asarray(g(t)) * w
        _check_finite(vals, t, "integrate_index")
        est = complex(vals.sum())
        n_used += t.size
        if prev is not None:
            err = abs(est - prev)
            if err <= max(cfg.abs_tol, cfg.rel_tol * abs(est)):
                tail = index_tail_bound(abs(complex(np.asarray(g(np.array([T])))[0])), T)
                return IntegralEstimate(est, err + tail, n_used, True)
        prev = est
    tail = index_tail_bound(abs(complex(np.asarray(g(np.array([T])))[0])), T)
    return IntegralEstimate(est, err + tail, n_used, False)
