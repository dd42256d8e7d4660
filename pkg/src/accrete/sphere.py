"""Hollow sphere growing at its fixed inner surface, ablating outside.

Material is deposited stress-free at the fixed inner radius r0 with a
prescribed speed a(t) > 0 and optionally removed at the moving outer
radius r1(t) with speed b(t) >= 0.  Incompressibility fixes the purely
radial velocity field

    v(r, t) = a(t) r0^2 / r^2,

so each particle conserves r^3 - 3 r0^2 A(t), where A(t) is the running
integral of a.  The pathline of the particle that sat on the inner surface
at t = 0 is the dividing front

    r_front(t)^3 = r0^3 + 3 r0^2 A(t):

material below it was deposited after t = 0 and carries the attachment
condition F_e = I (stretched into diag((r0/r)^2, r/r0, r/r0) by the time
it reaches radius r), material above it carries the initial condition.
Stress follows from radial momentum balance integrated inward from the
traction-free outer surface; the material is neo-Hookean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characteristics import CurveOrigin, VelocityField, classify_origin
from .errors import AblationExhaustedError, DomainError, QuadratureError
from .kinematics import DiagTensor, Frame, GrowthFlux, MaterialModel
from .numerics import TimeSeries, adaptive_quad, rk4_path
from .rates import RateFunction

__all__ = [
    "InitialBody",
    "SphereScenario",
    "SphereState",
    "velocity",
    "front_radius",
    "outer_radius",
    "outer_radius_exact",
    "region",
    "elastic_deformation",
    "stress",
    "pressure",
    "stress_fully_accreted",
    "treadmilling_ablation",
    "velocity_field",
    "inner_growth_flux",
    "outer_growth_flux",
]

_ONE = lambda r: 1.0  # noqa: E731  stress-free default for initial F fields


@dataclass(frozen=True)
class InitialBody:
    """Body present at t = 0: its outer radius and radial F profiles.

    f_rr/f_tt give the diagonal elastic deformation at t = 0 as functions
    of radius; the default is a stress-free (identity) state.  The profiles
    must be isochoric: f_rr(r) * f_tt(r)^2 = 1.
    """

    outer_radius: float
    f_rr: Callable[[float], float] = _ONE
    f_tt: Callable[[float], float] = _ONE


@dataclass(frozen=True)
class SphereScenario:
    """Inputs of the sphere problem; immutable, all evaluators are pure.

    accretion_speed is the deposition speed at the inner surface (positive;
    the inward boundary-motion rate of classical treatments equals its
    negative).  ablation_speed removes material at the outer surface.
    """

    inner_radius: float
    accretion_speed: RateFunction
    material: MaterialModel
    density: float = 1.0
    ablation_speed: RateFunction | None = None
    initial_body: InitialBody | None = None

    def __post_init__(self):
        if not (math.isfinite(self.inner_radius) and self.inner_radius > 0.0):
            raise ValueError(f"inner radius must be positive, got {self.inner_radius}")
        if self.density <= 0.0:
            raise ValueError("density must be positive")
        if self.material.kind != "neo_hookean":
            raise ValueError("the sphere problem is formulated for a neo-Hookean solid")
        if self.accretion_speed(0.0) <= 0.0:
            raise ValueError("accretion speed must be positive")
        if self.accretion_speed.kind in ("constant", "table"):
            lo, _ = _full_range(self.accretion_speed)
            if lo <= 0.0:
                raise ValueError("accretion speed must stay positive")
        if self.ablation_speed is not None:
            if self.ablation_speed(0.0) < 0.0:
                raise ValueError("ablation speed must be nonnegative")
            if self.ablation_speed.kind in ("constant", "table"):
                lo, _ = _full_range(self.ablation_speed)
                if lo < 0.0:
                    raise ValueError("ablation speed must stay nonnegative")
        if self.initial_body is not None:
            ib = self.initial_body
            if ib.outer_radius <= self.inner_radius:
                raise ValueError("initial outer radius must exceed the inner radius")
            radii = np.linspace(self.inner_radius, ib.outer_radius, 65)
            for r in radii:
                j = ib.f_rr(r) * ib.f_tt(r) ** 2
                if abs(j - 1.0) > 1e-12:
                    raise ValueError(
                        f"initial deformation is not isochoric at r={r}: det={j}"
                    )

    # radius the body started from (inner surface when nothing pre-exists)
    @property
    def start_outer_radius(self) -> float:
        if self.initial_body is not None:
            return self.initial_body.outer_radius
        return self.inner_radius


def _full_range(rate: RateFunction) -> tuple[float, float]:
    if rate.kind == "table":
        return rate.range_on(float(rate.times[0]), float(rate.times[-1]))
    return (rate(0.0), rate(0.0))


@dataclass(frozen=True)
class SphereState:
    """Geometry of the sphere problem at one instant."""

    t: float
    outer_radius: float


def _deposited(s: SphereScenario, t) -> float:
    return s.accretion_speed.integral(t)


def velocity(s: SphereScenario, r: float, t: float) -> float:
    """Radial material velocity at radius r (r may not be below r0)."""
    if r < s.inner_radius * (1.0 - 1e-12):
        raise DomainError(f"radius {r} below the inner surface {s.inner_radius}")
    r0 = s.inner_radius
    return s.accretion_speed(t) * r0 * r0 / (r * r)


def front_radius(s: SphereScenario, t: float) -> float:
    """Radius of the front dividing accreted from initial material."""
    r0 = s.inner_radius
    return float(np.cbrt(r0 ** 3 + 3.0 * r0 * r0 * _deposited(s, t)))


def outer_radius_exact(s: SphereScenario, t: float) -> float:
    """Outer radius in closed form; only valid without ablation."""
    if s.ablation_speed is not None:
        raise ValueError("closed-form outer radius requires an ablation-free scenario")
    r0 = s.inner_radius
    return float(np.cbrt(s.start_outer_radius ** 3 + 3.0 * r0 * r0 * _deposited(s, t)))


def outer_radius(s: SphereScenario, t_grid, n_substeps: int = 16) -> TimeSeries:
    """Outer radius history by RK4 integration of dr1/dt = v(r1) - b(t).

    t_grid must start at 0; n_substeps RK4 steps are taken per grid
    interval.  Raises AblationExhaustedError if the outer radius reaches
    the inner surface.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 2 or abs(t_grid[0]) > 1e-15:
        raise ValueError("t_grid must be a 1-d grid starting at 0")
    if not np.all(np.diff(t_grid) > 0.0):
        raise ValueError("t_grid must be strictly increasing")
    r0 = s.inner_radius
    ablation = s.ablation_speed

    def rhs(t, y):
        v = s.accretion_speed(t) * r0 * r0 / (y[0] * y[0])
        if ablation is not None:
            v = v - ablation(t)
        return np.array([v])

    floor = r0 * (1.0 - 1e-12)
    values = np.empty(t_grid.size)
    values[0] = s.start_outer_radius
    y = values[0]
    for k in range(t_grid.size - 1):
        path = rk4_path(rhs, y, t_grid[k], t_grid[k + 1], n_substeps)[0]
        if np.any(path.values < floor):
            below = path.times[path.values < floor][0]
            raise AblationExhaustedError(
                f"ablation consumed the body near t={below}", t=float(below)
            )
        y = float(path.values[-1])
        values[k + 1] = y
    return TimeSeries(t_grid, values)


def region(s: SphereScenario, r: float, t: float) -> CurveOrigin:
    """Whether (r, t) holds accreted (boundary) or initial material."""
    return classify_origin(r, t, lambda tt: front_radius(s, tt), accreted_side="inner")


def _outer_bound(s: SphereScenario, t: float, r1) -> float:
    if r1 is not None:
        return r1(t) if isinstance(r1, TimeSeries) else float(r1)
    if s.ablation_speed is not None:
        raise ValueError(
            "scenario ablates: pass r1 (a float or the outer_radius series)"
        )
    return outer_radius_exact(s, t)


def _b_components(s: SphereScenario, r: float, t: float) -> tuple[float, float]:
    """(B_rr, B_tt) of the elastic left Cauchy-Green tensor at (r, t)."""
    r0 = s.inner_radius
    if region(s, r, t) is CurveOrigin.INFLOW_BOUNDARY:
        f_rr = (r0 / r) ** 2
        f_tt = r / r0
    else:
        x = r ** 3 - 3.0 * r0 * r0 * _deposited(s, t)  # cube of the t=0 radius
        r_init = float(np.cbrt(x))
        ib = s.initial_body
        f_rr0 = ib.f_rr(r_init) if ib is not None else 1.0
        f_tt0 = ib.f_tt(r_init) if ib is not None else 1.0
        f_rr = x ** (2.0 / 3.0) * f_rr0 / (r * r)
        f_tt = r * f_tt0 / r_init
    return (f_rr * f_rr, f_tt * f_tt)


def elastic_deformation(s: SphereScenario, r: float, t: float,
                        r1: float | TimeSeries | None = None) -> DiagTensor:
    """Elastic deformation diag(F_rr, F_tt, F_pp) at (r, t).

    The two hoop components are equal by symmetry and the tensor is
    unimodular.  r must lie inside the body; scenarios with ablation need
    the current outer radius (or its series) passed in because it is not
    available in closed form.
    """
    hi = _outer_bound(s, t, r1)
    tol = 1e-12 * max(1.0, hi)
    if not (s.inner_radius - tol <= r <= hi + tol):
        raise DomainError(f"radius {r} outside body [{s.inner_radius}, {hi}] at t={t}")
    b_rr, b_tt = _b_components(s, r, t)
    f_rr, f_tt = math.sqrt(b_rr), math.sqrt(b_tt)
    return DiagTensor((f_rr, f_tt, f_tt), Frame.SPHERICAL)


def _stress_and_pressure(s, r, t, r1, quad_tol):
    g = s.material.shear_modulus
    hi = _outer_bound(s, t, r1)
    tol = 1e-12 * max(1.0, hi)
    if not (s.inner_radius - tol <= r <= hi + tol):
        raise DomainError(f"radius {r} outside body [{s.inner_radius}, {hi}] at t={t}")
    if quad_tol is None:
        quad_tol = 1e-12 * g * max(1.0, s.inner_radius)

    def gap(rho):  # sigma_rr - sigma_tt, the pressure-free deviator part
        b_rr, b_tt = _b_components(s, rho, t)
        return g * (b_rr - b_tt)

    def integrand(rho):
        return 2.0 / rho * gap(rho)

    # radial momentum balance integrated in from the traction-free outer
    # surface; split where the front kinks the integrand
    rf = front_radius(s, t)
    try:
        if r < rf < hi:
            sig_rr = (adaptive_quad(integrand, r, rf, quad_tol / 2.0)
                      + adaptive_quad(integrand, rf, hi, quad_tol / 2.0))
        else:
            sig_rr = adaptive_quad(integrand, r, hi, quad_tol)
    except QuadratureError as e:
        raise QuadratureError(f"stress quadrature failed at r={r}, t={t}: {e}") from e
    b_rr, b_tt = _b_components(s, r, t)
    p = g * b_rr - sig_rr
    sig_tt = sig_rr - g * (b_rr - b_tt)
    return DiagTensor((sig_rr, sig_tt, sig_tt), Frame.SPHERICAL), p


def stress(s: SphereScenario, r: float, t: float,
           r1: float | TimeSeries | None = None,
           quad_tol: float | None = None) -> DiagTensor:
    """Cauchy stress at (r, t) with sigma_rr(r1) = 0 enforced exactly."""
    return _stress_and_pressure(s, r, t, r1, quad_tol)[0]


def pressure(s: SphereScenario, r: float, t: float,
             r1: float | TimeSeries | None = None,
             quad_tol: float | None = None) -> float:
    """Lagrange multiplier p at (r, t) for sigma = -p I + G B."""
    return _stress_and_pressure(s, r, t, r1, quad_tol)[1]


def stress_fully_accreted(r0: float, r: float, r1: float,
                          shear_modulus: float) -> DiagTensor:
    """Closed-form stress when the whole shell was deposited after t = 0.

    Valid whenever the dividing front lies at or beyond the outer radius
    (no initial body, or it has fully ablated away).
    """
    q = (r0 / r) ** 4
    q1 = (r0 / r1) ** 4
    s = (r / r0) ** 2
    s1 = (r1 / r0) ** 2
    g = shear_modulus
    sig_rr = g * (0.5 * (q - q1) + s - s1)
    sig_tt = g * (-0.5 * (q + q1) + 2.0 * s - s1)
    return DiagTensor((sig_rr, sig_tt, sig_tt), Frame.SPHERICAL)


def treadmilling_ablation(s: SphereScenario, outer_radius_const: float) -> RateFunction:
    """Ablation speed that freezes the outer radius at the given value.

    Removing material exactly as fast as it arrives by advection,
    b(t) = a(t) r0^2 / r1^2, makes dr1/dt vanish identically.
    """
    if outer_radius_const <= s.inner_radius:
        raise ValueError("treadmilling radius must exceed the inner radius")
    factor = (s.inner_radius / outer_radius_const) ** 2
    return s.accretion_speed.scaled(factor)


def velocity_field(s: SphereScenario,
                   r1: TimeSeries | None = None) -> VelocityField:
    """Velocity field adapter for characteristic tracing and transport."""
    r0 = s.inner_radius

    def v_r(r, t):
        return s.accretion_speed(t) * r0 * r0 / (r * r)

    def dv_dr(r, t):
        return -2.0 * s.accretion_speed(t) * r0 * r0 / (r * r * r)

    if r1 is not None:
        domain = lambda t: (r0, r1(t))  # noqa: E731
    else:
        domain = lambda t: (r0, outer_radius_exact(s, t))  # noqa: E731
    return VelocityField(v_r=v_r, dv_dr=dv_dr, domain=domain)


def inner_growth_flux(s: SphereScenario, t: float) -> GrowthFlux:
    """Mass flux at the accreting inner surface (particles arrive inward)."""
    a = s.accretion_speed(t)
    return GrowthFlux(mass_rate=s.density * a, attach_velocity=-a, density=s.density)


def outer_growth_flux(s: SphereScenario, t: float, r1: float) -> GrowthFlux:
    """Mass flux at the outer surface; ablation makes it negative."""
    b = s.ablation_speed(t) if s.ablation_speed is not None else 0.0
    return GrowthFlux(mass_rate=-s.density * b,
                      attach_velocity=velocity(s, r1, t),
                      density=s.density)
