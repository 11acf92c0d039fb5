"""Functions on (0, inf) represented by values on a log-spaced grid.

A :class:`GridFunction` couples node values with a cubic interpolant in
``log x`` and a declared tail behavior (:class:`DecayClass`), so that
integrals against the weighted measures of the transform calculus can extend
beyond the node range with controlled error.  Instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline, make_interp_spline

__all__ = ["DecayClass", "GridFunction", "default_grid"]


@dataclass(frozen=True)
class DecayClass:
    """Declared behavior beyond the grid.

    ``f(x) ~ C x**power_at_zero`` as x -> 0 and
    ``f(x) ~ C x**power_at_inf * exp(-exp_rate_at_inf * x)`` as x -> inf.
    """

    power_at_zero: float
    power_at_inf: float = 0.0
    exp_rate_at_inf: float = 0.0

    def shifted(self, dp0: float = 0.0, dpinf: float = 0.0, dq: float = 0.0) -> "DecayClass":
        return DecayClass(self.power_at_zero + dp0,
                          self.power_at_inf + dpinf,
                          self.exp_rate_at_inf + dq)


def default_grid(lo: float = 1e-3, hi: float = 60.0, n: int = 160) -> np.ndarray:
    """Log-spaced evaluation grid used throughout the package."""
    return np.geomspace(lo, hi, n)


class GridFunction:
    """Complex-valued function on (0, inf) sampled on ascending positive nodes.

    Between nodes the function is the cubic spline in ``t = log x``; outside
    the node range the declared :class:`DecayClass` extrapolates from the
    endpoint values.
    """

    __slots__ = ("nodes", "values", "decay", "_spline", "_log_nodes")

    def __init__(self, nodes, values, decay: DecayClass):
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values, dtype=complex)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("GridFunction: need at least two nodes")
        if np.any(nodes <= 0.0) or np.any(np.diff(nodes) <= 0.0):
            raise ValueError("GridFunction: nodes must be positive and strictly increasing")
        if values.shape != nodes.shape:
            raise ValueError("GridFunction: values/nodes shape mismatch")
        if not np.all(np.isfinite(values)):
            raise ValueError("GridFunction: values must be finite")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "decay", decay)
        object.__setattr__(self, "_log_nodes", np.log(nodes))
        if nodes.size >= 4:
            spline = CubicSpline(self._log_nodes, values)
        else:
            spline = make_interp_spline(self._log_nodes, values, k=nodes.size - 1)
        object.__setattr__(self, "_spline", spline)

    def __setattr__(self, *a):  # immutability, see the concurrency notes
        raise AttributeError("GridFunction is immutable")

    @classmethod
    def from_callable(cls, f, nodes, decay: DecayClass) -> "GridFunction":
        nodes = np.asarray(nodes, dtype=float)
        return cls(nodes, np.asarray(f(nodes), dtype=complex), decay)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x):
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x_arr.shape, dtype=complex)
        lo, hi = self.nodes[0], self.nodes[-1]
        mid = (x_arr >= lo) & (x_arr <= hi)
        out[mid] = self._spline(np.log(x_arr[mid]))
        below = x_arr < lo
        if np.any(below):
            out[below] = self.values[0] * (x_arr[below] / lo) ** self.decay.power_at_zero
        above = x_arr > hi
        if np.any(above):
            d = self.decay
            out[above] = (self.values[-1] * (x_arr[above] / hi) ** d.power_at_inf
                          * np.exp(-d.exp_rate_at_inf * (x_arr[above] - hi)))
        return out[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else out

    def log_derivatives(self, x):
        """First and second derivatives of the interpolant w.r.t. t = log x.

        Only defined on the node range (extrapolated tails are not smooth).
        """
        if self.nodes.size < 4:
            raise ValueError("log_derivatives: need at least 4 nodes")
        t = np.log(np.asarray(x, dtype=float))
        return self._spline(t, 1), self._spline(t, 2)

    # -- convenience --------------------------------------------------------

    def map_values(self, factor_fn, decay: DecayClass) -> "GridFunction":
        """Pointwise multiplication by ``factor_fn(nodes)`` with a new decay class."""
        return GridFunction(self.nodes, self.values * factor_fn(self.nodes), decay)

    def is_real(self, tol: float = 1e-12) -> bool:
        scale = float(np.max(np.abs(self.values))) or 1.0
        return bool(np.max(np.abs(self.values.imag)) <= tol * scale)

    def __repr__(self):
        return (f"GridFunction(n={self.nodes.size}, "
                f"range=[{self.nodes[0]:g}, {self.nodes[-1]:g}], decay={self.decay})")
