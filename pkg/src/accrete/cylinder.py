"""Hollow cylinder wound at its outer surface, pressurised inside.

Plane strain.  Material arrives stress-free at the moving outer radius
r_out(t) with prescribed speed u(t) > 0 while the cavity carries a
pressure q(t) with q(0) = 0.  Incompressibility makes the velocity field
v(r, t) = r_in(t) rdot_in(t) / r, so r^2 - r_in^2(t) is conserved along
pathlines.  With the growth integral

    A(t) = integral_0^t u(s) r_out(s) ds

the cross-section areas balance globally:

    r_out^2(t) - r_in^2(t) - 2 A(t) = R1^2 - R0^2,

and the interface between initial material (region 1) and wound material
(region 2) sits at rhat^2 = R1^2 - R0^2 + r_in^2(t).  Region 1 carries
F_rr = sqrt(R0^2 - r_in^2 + r^2) / r; a region-2 particle that attached at
time tau carries F_rr = r_out(tau) / r, where tau solves

    A(tau) = A(t) - (r_out^2(t) - r^2) / 2.

The single unknown r_in(t) is found at each time step by driving the
radial-momentum residual sigma_rr(r_out) to zero, with sigma_rr built up
from sigma_rr(r_in) = -q(t) by quadrature of the hoop-radial imbalance.
The in-plane stress law is sigma = -p I + 2 (dW/dI1 + dW/dI2) B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .characteristics import VelocityField
from .errors import DomainError, GeometrySolveError, QuadratureError
from .kinematics import BoundaryTraction, DiagTensor, Frame, GrowthFlux, MaterialModel
from .numerics import TimeSeries, adaptive_quad, find_root
from .rates import RateFunction

__all__ = [
    "CylinderScenario",
    "GeometryHistory",
    "evolve_geometry",
    "velocity",
    "velocity_field",
    "interface_radius",
    "attachment_time",
    "attached_radius",
    "elastic_deformation",
    "stress",
    "pressure_residual",
    "inverse_motion_deformation",
    "growth_flux",
    "inner_traction",
]

_GL_ORDER = 8
_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = leggauss(order)
    return _GL_CACHE[order]


@dataclass(frozen=True)
class CylinderScenario:
    """Inputs of the cylinder problem; immutable, evaluators pure.

    growth_speed must stay strictly positive (it is also what makes the
    attachment-time inversion unique); inner_pressure must vanish at t = 0
    so the run starts from the natural state.
    """

    inner_radius: float
    outer_radius: float
    growth_speed: RateFunction
    inner_pressure: RateFunction
    material: MaterialModel
    density: float = 1.0

    def __post_init__(self):
        r0, r1 = self.inner_radius, self.outer_radius
        if not (math.isfinite(r0) and math.isfinite(r1) and 0.0 < r0 < r1):
            raise ValueError(f"need 0 < inner radius < outer radius, got {r0}, {r1}")
        if self.density <= 0.0:
            raise ValueError("density must be positive")
        if self.growth_speed(0.0) <= 0.0:
            raise ValueError("growth speed must be positive")
        if self.growth_speed.kind in ("constant", "table"):
            lo = _table_min(self.growth_speed)
            if lo <= 0.0:
                raise ValueError("growth speed must stay strictly positive")
        g = self.material.shear_modulus
        if abs(self.inner_pressure(0.0)) > 1e-12 * g:
            raise ValueError("inner pressure must vanish at t = 0")


def _table_min(rate: RateFunction) -> float:
    if rate.kind == "table":
        return float(np.min(rate.values))
    return rate(0.0)


@dataclass(frozen=True)
class GeometryHistory:
    """Geometry of the cylinder problem on a uniform node grid.

    growth_integral holds A(t); pressure_residuals the absolute momentum
    residual accepted at each node.  The global area identity is enforced
    exactly (to rounding) at every node by construction.
    """

    r_in: TimeSeries
    r_out: TimeSeries
    growth_integral: TimeSeries
    inner_radius_ref: float
    outer_radius_ref: float
    pressure_residuals: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.pressure_residuals is None:
            object.__setattr__(self, "pressure_residuals",
                               np.zeros(self.r_in.times.size))
        t = self.r_in.times
        if not (np.array_equal(t, self.r_out.times)
                and np.array_equal(t, self.growth_integral.times)):
            raise ValueError("history series must share one node grid")
        if np.any(self.r_in.values >= self.r_out.values):
            raise ValueError("inner radius must stay below the outer radius")
        if not np.all(np.diff(self.growth_integral.values) > 0.0):
            raise ValueError("growth integral must be strictly increasing")
        ref = self.outer_radius_ref ** 2 - self.inner_radius_ref ** 2
        gap = (self.r_out.values ** 2 - self.r_in.values ** 2
               - 2.0 * self.growth_integral.values - ref)
        if np.max(np.abs(gap)) > 1e-6 * max(1.0, ref):
            raise ValueError("history violates the global area identity")

    @property
    def times(self) -> np.ndarray:
        return self.r_in.times

    @property
    def t_end(self) -> float:
        return float(self.r_in.times[-1])


# -- field evaluation ------------------------------------------------------

def interface_radius(h: GeometryHistory, t: float) -> float:
    """Radius separating initial material from wound material at time t."""
    ref = h.outer_radius_ref ** 2 - h.inner_radius_ref ** 2
    rin = h.r_in(t)
    return math.sqrt(ref + rin * rin)


def velocity(h: GeometryHistory, r: float, t: float) -> float:
    """Radial material velocity r_in rdot_in / r inside the body."""
    rin, rout = h.r_in(t), h.r_out(t)
    tol = 1e-12 * max(1.0, rout)
    if not (rin - tol <= r <= rout + tol):
        raise DomainError(f"radius {r} outside body [{rin}, {rout}] at t={t}")
    return rin * h.r_in.slope(t) / r


def velocity_field(h: GeometryHistory) -> VelocityField:
    """Velocity adapter for tracing and transport (tolerant of probes)."""

    def v_r(r, t):
        return h.r_in(t) * h.r_in.slope(t) / r

    def dv_dr(r, t):
        return -h.r_in(t) * h.r_in.slope(t) / (r * r)

    return VelocityField(v_r=v_r, dv_dr=dv_dr,
                         domain=lambda t: (h.r_in(t), h.r_out(t)))


def attachment_time(h: GeometryHistory, r: float, t: float) -> float:
    """Attachment time of the wound particle now at radius r.

    Inverts A(tau) = A(t) - (r_out^2(t) - r^2)/2 exactly on the
    piecewise-linear growth integral; the inversion is unique because the
    growth speed is strictly positive.  r must lie in the wound region
    (between the interface and the outer surface).
    """
    a_t = h.growth_integral(t)
    rout = h.r_out(t)
    rin = h.r_in(t)
    anchor = rout * rout - 2.0 * a_t
    ref_sq = h.outer_radius_ref ** 2 - h.inner_radius_ref ** 2 + rin * rin
    slack = 1e-12 * max(1.0, rout * rout)
    if r * r < min(anchor, ref_sq) - slack or r > rout * (1.0 + 1e-12):
        raise DomainError(
            f"radius {r} is not in the wound region at t={t}"
        )
    target = a_t - (rout * rout - r * r) / 2.0
    a_vals = h.growth_integral.values
    times = h.growth_integral.times
    target = min(max(target, 0.0), float(a_vals[-1]))
    i = int(np.clip(np.searchsorted(a_vals, target, side="right") - 1,
                    0, times.size - 2))
    slope = (a_vals[i + 1] - a_vals[i]) / (times[i + 1] - times[i])
    tau = times[i] + (target - a_vals[i]) / slope
    return float(min(max(tau, 0.0), t))


def attached_radius(h: GeometryHistory, tau: float) -> float:
    """Outer radius at the attachment time, via the global area identity.

    Evaluating r_out(tau) through r_in and A keeps the zero-load case exact
    and agrees with the stored outer-radius series at every node.
    """
    ref = h.outer_radius_ref ** 2 - h.inner_radius_ref ** 2
    rin = h.r_in(tau)
    return math.sqrt(ref + rin * rin + 2.0 * h.growth_integral(tau))


def elastic_deformation(h: GeometryHistory, r: float, t: float) -> DiagTensor:
    """Unimodular elastic deformation diag(F_rr, F_tt) at (r, t)."""
    rin, rout = h.r_in(t), h.r_out(t)
    tol = 1e-12 * max(1.0, rout)
    if not (rin - tol <= r <= rout + tol):
        raise DomainError(f"radius {r} outside body [{rin}, {rout}] at t={t}")
    if r <= interface_radius(h, t):
        ref_sq = h.inner_radius_ref ** 2 - rin * rin + r * r
        f_rr = math.sqrt(ref_sq) / r
    else:
        tau = attachment_time(h, r, t)
        f_rr = attached_radius(h, tau) / r
    return DiagTensor((f_rr, 1.0 / f_rr), Frame.POLAR)


def _wsum(mat: MaterialModel, b_rr, b_tt):
    i1 = 1.0 + b_rr + b_tt  # I2 = I1 for unimodular plane strain
    return mat.dW_dI1(i1, i1) + mat.dW_dI2(i1, i1)


def _region1_integral(mat: MaterialModel, rin: float, r_lo: float, r_hi: float,
                      inner_ref: float, tol: float) -> float:
    # sigma_rr increment across initial material: d sigma_rr / dr =
    # (sigma_tt - sigma_rr)/r = 2 w (B_tt - B_rr)/r
    q = inner_ref * inner_ref - rin * rin

    def kernel(rho):
        ref_sq = q + rho * rho
        b_rr = ref_sq / (rho * rho)
        w = _wsum(mat, b_rr, 1.0 / b_rr)
        return 2.0 * rho / ref_sq * w * (1.0 - b_rr * b_rr)

    return adaptive_quad(kernel, r_lo, r_hi, tol)


def _region2_integral(mat: MaterialModel, tau_cap: float, anchor_sq: float,
                      t_nodes: np.ndarray, rin_nodes: np.ndarray,
                      a_nodes: np.ndarray, ref_gap: float,
                      order: int = _GL_ORDER) -> float:
    # Change of variable r -> tau maps the wound region onto [0, tau_cap]
    # with r^2(tau) = anchor_sq + 2 A(tau) and dr * r = A'(tau) dtau.  The
    # integrand is smooth inside each history segment and kinked at the
    # nodes, so fixed Gauss panels per segment integrate it to rounding.
    if tau_cap <= 0.0:
        return 0.0
    k_max = int(np.searchsorted(t_nodes, tau_cap, side="left"))
    k_max = min(max(k_max, 1), t_nodes.size - 1)
    starts = t_nodes[:k_max]
    ends = np.minimum(t_nodes[1:k_max + 1], tau_cap)
    seg_dt = t_nodes[1:k_max + 1] - starts
    a_slope = (a_nodes[1:k_max + 1] - a_nodes[:k_max]) / seg_dt
    r_slope = (rin_nodes[1:k_max + 1] - rin_nodes[:k_max]) / seg_dt
    half = (ends - starts) / 2.0
    mid = (ends + starts) / 2.0
    x, w = _gl(order)
    taus = mid[:, None] + half[:, None] * x[None, :]
    local = taus - starts[:, None]
    a_tau = a_nodes[:k_max, None] + a_slope[:, None] * local
    rin_tau = rin_nodes[:k_max, None] + r_slope[:, None] * local
    r_sq = anchor_sq + 2.0 * a_tau
    rho_sq = ref_gap + rin_tau * rin_tau + 2.0 * a_tau
    b_rr = rho_sq / r_sq
    wmat = _wsum(mat, b_rr, 1.0 / b_rr)
    kern = 2.0 / rho_sq * wmat * (1.0 - b_rr * b_rr) * a_slope[:, None]
    return float(np.sum(half * np.sum(kern * w[None, :], axis=1)))


def _b_rr_at(h: GeometryHistory, r: float, t: float) -> float:
    if r <= interface_radius(h, t):
        rin = h.r_in(t)
        return (h.inner_radius_ref ** 2 - rin * rin + r * r) / (r * r)
    rho = attached_radius(h, attachment_time(h, r, t))
    return (rho / r) ** 2


def stress(h: GeometryHistory, s: CylinderScenario, r: float, t: float,
           quad_tol: float | None = None) -> tuple[DiagTensor, float]:
    """Cauchy stress and multiplier p at (r, t).

    sigma_rr is integrated out from sigma_rr(r_in) = -q(t) (the inner
    traction q e_r acts on the inward normal), switching kernels at the
    interface; p then follows algebraically from sigma_rr and B, and
    sigma_tt from p.  Returns (diag(sigma_rr, sigma_tt), p).
    """
    mat = s.material
    g = mat.shear_modulus
    rin, rout = h.r_in(t), h.r_out(t)
    tol = 1e-12 * max(1.0, rout)
    if not (rin - tol <= r <= rout + tol):
        raise DomainError(f"radius {r} outside body [{rin}, {rout}] at t={t}")
    if quad_tol is None:
        quad_tol = 1e-12 * g * max(1.0, h.inner_radius_ref)
    a_t = h.growth_integral(t)
    anchor_sq = rout * rout - 2.0 * a_t  # interface, consistent with tau inversion
    rhat = math.sqrt(anchor_sq)
    ref_gap = h.outer_radius_ref ** 2 - h.inner_radius_ref ** 2
    try:
        sig_rr = -s.inner_pressure(t)
        sig_rr += _region1_integral(mat, rin, rin, min(r, rhat),
                                    h.inner_radius_ref, quad_tol)
        if r > rhat:
            tau_cap = attachment_time(h, r, t)
            sig_rr += _region2_integral(mat, tau_cap, anchor_sq, h.times,
                                        h.r_in.values, h.growth_integral.values,
                                        ref_gap)
    except QuadratureError as e:
        raise QuadratureError(f"stress quadrature failed at r={r}, t={t}: {e}") from e
    b_rr = _b_rr_at(h, r, t)
    b_tt = 1.0 / b_rr
    w = _wsum(mat, b_rr, b_tt)
    p = 2.0 * w * b_rr - sig_rr
    sig_tt = -p + 2.0 * w * b_tt
    return DiagTensor((sig_rr, sig_tt), Frame.POLAR), float(p)


def pressure_residual(h: GeometryHistory, s: CylinderScenario, t: float) -> float:
    """Momentum residual q(t) - [wall integral], recomputed from the history.

    Equals -sigma_rr(r_out(t)); the geometry solver drove this to zero at
    every accepted node.
    """
    sig, _ = stress(h, s, h.r_out(t), t)
    return -sig.rr


# -- geometry evolution ----------------------------------------------------

class _ResidualHit(Exception):
    def __init__(self, x: float, f: float):
        self.x = x
        self.f = f


def evolve_geometry(s: CylinderScenario, t_end: float, dt: float,
                    quad_tol: float | None = None,
                    root_tol: float | None = None) -> GeometryHistory:
    """March the cylinder geometry to t_end with uniform steps of about dt.

    Each step advances the growth integral with the trapezoid rule, which
    together with the global area identity fixes (r_out, A) in closed form
    for any candidate r_in; the candidate is then driven to the root of the
    momentum residual q(t) - sigma-wall integral with a warm start from the
    previous node (kept verbatim when its residual is already below
    tolerance, so the unloaded cylinder stays at r_in = R0 exactly).
    Bracketing starts at +-20% around the previous node and widens up to
    five times before giving up with GeometrySolveError.
    """
    if t_end <= 0.0 or dt <= 0.0:
        raise ValueError("t_end and dt must be positive")
    r0, r1 = s.inner_radius, s.outer_radius
    g = s.material.shear_modulus
    lo_speed, _ = s.growth_speed.range_on(0.0, t_end)
    if lo_speed <= 0.0:
        raise ValueError("growth speed must stay strictly positive on [0, t_end]")
    n = max(1, int(round(t_end / dt)))
    step = t_end / n
    times = t_end * np.arange(n + 1) / n
    p_vals = np.atleast_1d(s.inner_pressure(times))
    u_vals = np.atleast_1d(s.growth_speed(times))
    rin = np.empty(n + 1)
    rout = np.empty(n + 1)
    a_int = np.empty(n + 1)
    resid = np.zeros(n + 1)
    rin[0], rout[0], a_int[0] = r0, r1, 0.0
    ref_gap = r1 * r1 - r0 * r0
    ftol = 1e-12 * g
    xtol = root_tol if root_tol is not None else 1e-13 * max(1.0, r0)
    qtol = quad_tol if quad_tol is not None else 1e-13 * g * max(1.0, r0)
    floor = 1e-6 * r0

    for k in range(n):
        t1 = times[k + 1]
        u0, u1 = u_vals[k], u_vals[k + 1]
        a_prev, rout_prev = a_int[k], rout[k]
        t_nodes = times[:k + 2]
        rin_base = rin[:k + 1]
        a_base = a_int[:k + 1]

        def advance(x):
            # trapezoid growth integral + area identity solve as a quadratic
            c = ref_gap + x * x + 2.0 * a_prev + step * u0 * rout_prev
            ro = 0.5 * (step * u1 + math.sqrt((step * u1) ** 2 + 4.0 * c))
            return ro, a_prev + 0.5 * step * (u0 * rout_prev + u1 * ro)

        def residual(x):
            ro, a1 = advance(x)
            anchor_sq = ref_gap + x * x  # equals ro^2 - 2 a1 by construction
            rhs = _region1_integral(s.material, x, x, math.sqrt(anchor_sq), r0, qtol)
            rhs += _region2_integral(s.material, t1, anchor_sq, t_nodes,
                                     np.append(rin_base, x),
                                     np.append(a_base, a1), ref_gap)
            return p_vals[k + 1] - rhs

        def counted(x):
            f = residual(x)
            if abs(f) <= ftol:
                raise _ResidualHit(x, f)
            return f

        x_prev = rin[k]
        f_prev = residual(x_prev)
        if abs(f_prev) <= ftol:
            x_star, f_star = x_prev, f_prev
        else:
            delta = 0.2
            lo = hi = x_prev
            for _ in range(6):
                lo = max(floor, x_prev * (1.0 - delta))
                hi = x_prev * (1.0 + delta)
                try:
                    x_star = find_root(counted, lo, hi, xtol)
                    break
                except _ResidualHit as hit:
                    x_star = hit.x
                    break
                except ValueError:
                    delta *= 2.0
            else:
                raise GeometrySolveError(
                    f"could not bracket the inner radius at t={t1}", t1, lo, hi
                )
            f_star = residual(x_star)
        rin[k + 1] = x_star
        rout[k + 1], a_int[k + 1] = advance(x_star)
        resid[k + 1] = abs(f_star)

    return GeometryHistory(
        r_in=TimeSeries(times, rin),
        r_out=TimeSeries(times, rout),
        growth_integral=TimeSeries(times, a_int),
        inner_radius_ref=r0,
        outer_radius_ref=r1,
        pressure_residuals=resid,
    )


# -- inverse-motion cross-check --------------------------------------------

def _segment_grid(h: GeometryHistory, t: float) -> np.ndarray:
    times = h.times
    k = int(np.searchsorted(times, t, side="left"))
    if k < times.size and times[k] == t:
        return times[:k + 1].copy()
    return np.append(times[:k], t)


def _march_back(h: GeometryHistory, pos0: np.ndarray, t: float,
                substeps: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate pathlines backward from (pos0, t) to t = 0.

    Returns (xi, att_time, att_radius): xi is the t = 0 position for
    particles that stay inside (nan otherwise), att_* the boundary-crossing
    data for particles that leave through the outer surface (nan for
    survivors).  Stepping is aligned to the history nodes so the velocity
    is smooth inside every RK4 step.
    """
    grid = _segment_grid(h, t)
    times = h.times
    rin_v = h.r_in.values
    pos = pos0.astype(float).copy()
    alive = np.ones(pos.shape, dtype=bool)
    att_t = np.full(pos.shape, np.nan)
    att_r = np.full(pos.shape, np.nan)

    def vel(p, tq, seg):
        ta = times[seg]
        slope = (rin_v[seg + 1] - rin_v[seg]) / (times[seg + 1] - times[seg])
        rin_t = rin_v[seg] + slope * (tq - ta)
        return rin_t * slope / p

    def rk4(p, t_hi, t_lo, seg):
        hh = (t_lo - t_hi)  # negative
        k1 = vel(p, t_hi, seg)
        k2 = vel(p + hh / 2.0 * k1, t_hi + hh / 2.0, seg)
        k3 = vel(p + hh / 2.0 * k2, t_hi + hh / 2.0, seg)
        k4 = vel(p + hh * k3, t_hi + hh, seg)
        return p + hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    for j in range(grid.size - 2, -1, -1):
        seg = j  # sub-grid segment j sits inside history segment j
        t_hi_seg, t_lo_seg = grid[j + 1], grid[j]
        sub = np.linspace(t_hi_seg, t_lo_seg, substeps + 1)
        for m in range(substeps):
            if not alive.any():
                break
            t_hi, t_lo = sub[m], sub[m + 1]
            prev = pos.copy()
            pos[alive] = rk4(pos[alive], t_hi, t_lo, seg)
            bound = h.r_out(t_lo)
            crossed = alive & (pos >= bound)
            for i in np.flatnonzero(crossed):
                ta, tb = t_lo, t_hi  # bracket in time, ta < tb
                for _ in range(60):
                    tm = 0.5 * (ta + tb)
                    pm = rk4(prev[i], t_hi, tm, seg)
                    if pm >= h.r_out(tm):
                        ta = tm  # still outside going back: crossing is later
                    else:
                        tb = tm
                tau = 0.5 * (ta + tb)
                att_t[i] = tau
                att_r[i] = h.r_out(tau)
                alive[i] = False
                pos[i] = np.nan
    xi = np.where(alive, pos, np.nan)
    return xi, att_t, att_r


def inverse_motion_deformation(h: GeometryHistory, r, t: float,
                               stencil_fraction: float = 1e-5,
                               substeps: int = 2):
    """Elastic deformation recovered from the inverse motion map.

    The reference position xi of each particle is constant along pathlines,
    so it is found by tracing backward through the stored velocity field:
    survivors to t = 0 are initial material whose F_rr = 1 / (d xi / d r)
    (central difference over a stencil of +-stencil_fraction * R0), wound
    particles report the outer radius at their crossing time instead.
    This route shares no formulas with elastic_deformation beyond the
    velocity field itself, which makes it a genuine cross-check.

    Accepts a scalar radius (returns a DiagTensor) or an array (returns an
    (n, 2) array of diag(F_rr, F_tt) rows).
    """
    scalar = np.ndim(r) == 0
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    rin, rout = h.r_in(t), h.r_out(t)
    tol = 1e-12 * max(1.0, rout)
    if np.any(r_arr < rin - tol) or np.any(r_arr > rout + tol):
        raise DomainError(f"radius sample outside body [{rin}, {rout}] at t={t}")
    delta = stencil_fraction * h.inner_radius_ref

    xi, att_t, att_r = _march_back(h, r_arr, t, substeps)
    initial = np.isfinite(xi)
    f_rr = np.empty(r_arr.shape)
    f_rr[~initial] = att_r[~initial] / r_arr[~initial]

    if initial.any():
        centers = r_arr[initial]
        if np.any(centers - delta < rin - tol) or np.any(centers + delta > rout + tol):
            raise DomainError("differentiation stencil leaves the body")
        stencil = np.concatenate([centers - delta, centers + delta])
        xi_s, _, _ = _march_back(h, stencil, t, substeps)
        if not np.all(np.isfinite(xi_s)):
            raise DomainError("differentiation stencil crosses into wound material")
        m = centers.size
        dxi_dr = (xi_s[m:] - xi_s[:m]) / (2.0 * delta)
        f_rr[initial] = 1.0 / dxi_dr

    if scalar:
        v = float(f_rr[0])
        return DiagTensor((v, 1.0 / v), Frame.POLAR)
    return np.column_stack([f_rr, 1.0 / f_rr])


# -- boundary bookkeeping ---------------------------------------------------

def growth_flux(s: CylinderScenario, h: GeometryHistory, t: float) -> GrowthFlux:
    """Mass flux at the winding surface; particles attach moving with the body."""
    rout = h.r_out(t)
    v = h.r_in(t) * h.r_in.slope(t) / rout
    return GrowthFlux(mass_rate=s.density * s.growth_speed(t),
                      attach_velocity=v, density=s.density)


def inner_traction(s: CylinderScenario, t: float) -> BoundaryTraction:
    """Applied traction q e_r on the cavity wall (inward normal -e_r),
    equivalent to sigma_rr(r_in) = -q."""
    return BoundaryTraction(s.inner_pressure(t), "inner")
