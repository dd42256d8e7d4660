"""Small deterministic numerics toolkit.

Fixed-step classical RK4 (deterministic, no adaptivity), absolute-tolerance
adaptive quadrature, bracketed root finding, and a piecewise-linear time
series used for every stored history in the library.  The quadrature and
root-finding are thin shells over scipy's QUADPACK and Brent routines with
the error behaviour normalised to this library's exception types.

All routines are deterministic: identical inputs give bit-identical results
on one platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import BracketError, DomainError, IntegrationError, QuadratureError

__all__ = ["TimeSeries", "rk4_path", "adaptive_quad", "find_root"]


@dataclass(frozen=True)
class TimeSeries:
    """Piecewise-linear function of time on a fixed node grid.

    Nodes must be strictly increasing and at least two are required.
    Evaluation outside the covered range raises DomainError rather than
    extrapolating; histories in this library are only meaningful on the
    interval they were computed for.
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.shape != t.shape:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if t.size < 2:
            raise ValueError("a time series needs at least two nodes")
        if not np.all(np.diff(t) > 0.0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("time series entries must be finite")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def t_start(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def _check_range(self, t) -> None:
        t = np.asarray(t, dtype=float)
        # tiny slack absorbs roundoff from t_end arithmetic in callers
        slack = 1e-12 * max(1.0, abs(self.t_end))
        if np.any(t < self.t_start - slack) or np.any(t > self.t_end + slack):
            raise DomainError(
                f"time {t} outside series range [{self.t_start}, {self.t_end}]"
            )

    def __call__(self, t):
        """Interpolated value; accepts a scalar or an ndarray."""
        self._check_range(t)
        out = np.interp(t, self.times, self.values)
        return float(out) if np.ndim(t) == 0 else out

    def slope(self, t: float) -> float:
        """Slope of the segment containing t (the left segment at a node)."""
        self._check_range(t)
        i = int(np.searchsorted(self.times, t, side="left"))
        i = min(max(i, 1), self.times.size - 1)
        dt = self.times[i] - self.times[i - 1]
        return float((self.values[i] - self.values[i - 1]) / dt)


def rk4_path(f: Callable, y0, t0: float, t1: float, n_steps: int) -> list[TimeSeries]:
    """Integrate dy/dt = f(t, y) with n_steps classical RK4 steps.

    y0 may be a scalar or a 1-d array; one TimeSeries per component is
    returned, all sharing the node grid t0 + k (t1 - t0) / n_steps.  A
    non-finite stage derivative aborts with IntegrationError carrying the
    offending time.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if t1 < t0:
        raise ValueError("t1 must be >= t0")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    times = t0 + (t1 - t0) * np.arange(n_steps + 1) / n_steps
    out = np.empty((n_steps + 1, y.size))
    out[0] = y
    h = (t1 - t0) / n_steps

    def rhs(t, state):
        d = np.atleast_1d(np.asarray(f(t, state), dtype=float))
        if not np.all(np.isfinite(d)):
            raise IntegrationError(f"non-finite derivative at t={t}", t=t)
        return d

    for k in range(n_steps):
        t = times[k]
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2.0, y + h / 2.0 * k1)
        k3 = rhs(t + h / 2.0, y + h / 2.0 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    return [TimeSeries(times, out[:, j]) for j in range(y.size)]


def adaptive_quad(f: Callable, a: float, b: float, tol: float) -> float:
    """Integral of f over [a, b] to absolute tolerance tol.

    Empty intervals integrate to exactly 0.  Reversed bounds flip the sign.
    Failure to converge within the subdivision budget raises QuadratureError.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0
    res = integrate.quad(f, a, b, epsabs=tol, epsrel=0.0, limit=200, full_output=1)
    if len(res) > 3:  # ier != 0: QUADPACK appended its explanation
        raise QuadratureError(
            f"quadrature on [{a}, {b}] did not reach tol={tol}: {res[3].strip()}"
        )
    value, estimate = res[0], res[1]
    if not np.isfinite(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] returned {value}")
    if estimate > 10.0 * tol:
        raise QuadratureError(
            f"quadrature on [{a}, {b}] stalled at error {estimate} > tol {tol}"
        )
    return sign * float(value)


def find_root(f: Callable, lo: float, hi: float, tol: float) -> float:
    """Root of f on the bracket [lo, hi] (f must change sign).

    Brent's method: inverse-interpolation/secant acceleration with a
    bisection fallback.  Terminates when the bracket width drops below
    tol * max(1, |root|); an endpoint with f = 0 is returned directly.
    Raises BracketError when f(lo) and f(hi) share a sign.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
        )
    rtol = max(tol, 4.0 * np.finfo(float).eps)
    return float(optimize.brentq(f, lo, hi, xtol=tol, rtol=rtol))
