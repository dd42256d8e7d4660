"""Prescribed rate functions (growth speeds, pressures) for scenarios.

A RateFunction is one of four shapes -- constant, linear ramp, polynomial,
or piecewise-linear table -- chosen so that configs never need an
expression parser and so that the running integral from t = 0 is available
in closed form (exactly, for every shape).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError

__all__ = ["RateFunction"]

_KINDS = ("constant", "ramp", "poly", "table")


@dataclass(frozen=True)
class RateFunction:
    """Scalar function of time with an exact antiderivative.

    kind      params
    constant  (value,)
    ramp      (a, b) for a + b t
    poly      ascending coefficients (c0, c1, ...)
    table     (times, values) piecewise linear; evaluation outside the
              tabulated range is an error
    """

    kind: str
    coeffs: tuple[float, ...] = ()
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown rate kind {self.kind!r}")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.kind == "table":
            t = np.asarray(self.times, dtype=float)
            v = np.asarray(self.values, dtype=float)
            if t.ndim != 1 or t.shape != v.shape or t.size < 2:
                raise ValueError("table needs matching 1-d times/values, length >= 2")
            if not np.all(np.diff(t) > 0.0):
                raise ValueError("table times must be strictly increasing")
            object.__setattr__(self, "times", t)
            object.__setattr__(self, "values", v)
            # running trapezoid integral, exact for a piecewise-linear function
            cum = np.concatenate(
                ([0.0], np.cumsum(np.diff(t) * (v[:-1] + v[1:]) / 2.0))
            )
            object.__setattr__(self, "_cum", cum)
        else:
            if not self.coeffs:
                raise ValueError(f"{self.kind} rate needs coefficients")
            if self.times is not None or self.values is not None:
                raise ValueError("times/values only apply to table rates")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: float) -> "RateFunction":
        return cls("constant", (value,))

    @classmethod
    def ramp(cls, a: float, b: float) -> "RateFunction":
        return cls("ramp", (a, b))

    @classmethod
    def poly(cls, coeffs) -> "RateFunction":
        return cls("poly", tuple(coeffs))

    @classmethod
    def table(cls, times, values) -> "RateFunction":
        return cls("table", (), np.asarray(times, float), np.asarray(values, float))

    def scaled(self, factor: float) -> "RateFunction":
        """The same shape multiplied by a constant factor."""
        if self.kind == "table":
            return RateFunction.table(self.times, self.values * factor)
        return RateFunction(self.kind, tuple(c * factor for c in self.coeffs))

    # -- evaluation --------------------------------------------------------

    def _check_table_range(self, t) -> None:
        t = np.asarray(t, dtype=float)
        t0, t1 = self.times[0], self.times[-1]
        slack = 1e-12 * max(1.0, abs(t1))
        if np.any(t < t0 - slack) or np.any(t > t1 + slack):
            raise DomainError(f"time {t} outside table range [{t0}, {t1}]")

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = np.full(t.shape, self.coeffs[0])
        elif self.kind == "ramp":
            out = self.coeffs[0] + self.coeffs[1] * t
        elif self.kind == "poly":
            out = P.polyval(t, self.coeffs)
        else:
            self._check_table_range(t)
            out = np.interp(t, self.times, self.values)
        return float(out) if scalar else out

    def integral(self, t):
        """Exact running integral from 0 to t."""
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = self.coeffs[0] * t
        elif self.kind == "ramp":
            out = self.coeffs[0] * t + self.coeffs[1] * t * t / 2.0
        elif self.kind == "poly":
            anti = P.polyint(self.coeffs)
            out = P.polyval(t, anti) - P.polyval(0.0, anti)
        else:
            # the running integral is anchored at t = 0, so the table must
            # cover it as well as t itself
            self._check_table_range(0.0)
            self._check_table_range(t)
            i = np.clip(np.searchsorted(self.times, t, side="right") - 1, 0,
                        self.times.size - 2)
            tk, vk = self.times[i], self.values[i]
            cum = self._cum[i]
            vt = np.interp(t, self.times, self.values)
            out = cum + (t - tk) * (vk + vt) / 2.0 - self._integral_at_zero()
        return float(out) if scalar else out

    def _integral_at_zero(self) -> float:
        i = int(np.clip(np.searchsorted(self.times, 0.0, side="right") - 1, 0,
                        self.times.size - 2))
        tk, vk = self.times[i], self.values[i]
        v0 = float(np.interp(0.0, self.times, self.values))
        return float(self._cum[i] + (0.0 - tk) * (vk + v0) / 2.0)

    def range_on(self, t0: float, t1: float) -> tuple[float, float]:
        """Exact (min, max) of the rate over [t0, t1].

        Constants and ramps attain extremes at the endpoints, tables at
        their nodes, polynomials at real critical points of the derivative.
        """
        if t1 < t0:
            raise ValueError("need t0 <= t1")
        candidates = [self(t0), self(t1)]
        if self.kind == "table":
            self._check_table_range([t0, t1])
            inside = (self.times > t0) & (self.times < t1)
            candidates.extend(self.values[inside].tolist())
        elif self.kind == "poly" and len(self.coeffs) > 2:
            deriv = P.polyder(self.coeffs)
            roots = np.roots(deriv[::-1]) if len(deriv) > 1 else np.array([])
            for r in roots:
                if abs(r.imag) < 1e-12 and t0 < r.real < t1:
                    candidates.append(self(float(r.real)))
        return (float(min(candidates)), float(max(candidates)))
