"""Generic transport solver for the elastic deformation field.

Semi-Lagrangian update of dF/dt + v dF/dr = (grad v) F on a moving grid
that follows the body: nodes are remapped affinely onto the current
[r_lo(t), r_hi(t)] every step, the foot of each node's characteristic is
located with a midpoint backward step, the old field is interpolated
linearly at the foot, and the velocity-gradient source is applied as a
midpoint-rule exponential (which keeps the components positive).  The
inflow node is pinned to the attachment state; the outflow side needs no
boundary data and simply holds the last interior value when a foot lands
marginally outside.  The scheme is first-order accurate and is used as an
independent numerical check of the closed-form solutions, never as their
source.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characteristics import VelocityField
from .errors import CFLError
from .kinematics import DiagTensor, Frame

__all__ = [
    "MovingGrid",
    "FieldSnapshot",
    "TransportProblem",
    "step",
    "solve",
    "sphere_transport",
    "cylinder_transport",
    "max_abs_error",
]

_CFL_LIMIT = 0.9


@dataclass(frozen=True)
class MovingGrid:
    """Node positions of the deforming radial grid at one instant."""

    nodes: np.ndarray
    t: float

    def __post_init__(self):
        n = np.asarray(self.nodes, dtype=float)
        if n.ndim != 1 or n.size < 9:
            raise ValueError("grid needs at least 8 cells")
        if not np.all(np.diff(n) > 0.0):
            raise ValueError("grid nodes must be strictly increasing")
        object.__setattr__(self, "nodes", n)

    @property
    def n_cells(self) -> int:
        return self.nodes.size - 1


@dataclass(frozen=True)
class FieldSnapshot:
    """Deformation components on a grid: f[:, k] ordered (rr, tt[, pp])."""

    grid: MovingGrid
    f: np.ndarray
    frame: Frame

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        if f.shape != (self.grid.nodes.size, self.frame.dim):
            raise ValueError("field shape does not match grid and frame")
        if not np.all(np.isfinite(f)) or np.min(f) <= 0.0:
            raise ValueError("field components must be positive and finite")
        object.__setattr__(self, "f", f)

    @property
    def t(self) -> float:
        return self.grid.t

    def determinant(self) -> np.ndarray:
        return np.prod(self.f, axis=1)


@dataclass(frozen=True)
class TransportProblem:
    """Everything the solver needs about one scenario.

    There is deliberately no outflow boundary field: the transport problem
    only accepts attachment data on the inflow side, matching the
    characteristic structure of the equation.

    interface, when given, is the radius of the material front separating
    initial from accreted material.  The front is a pathline and the exact
    field has a derivative kink there, so the grid keeps a node on it
    (piecewise-affine remap); otherwise the kink would drag the measured
    convergence order below first order.
    """

    velocity: VelocityField
    domain_rates: Callable[[float], tuple[float, float]]
    inflow_side: str
    inflow_f: DiagTensor
    initial_f: Callable[[np.ndarray, float], np.ndarray]
    frame: Frame
    t_start: float = 0.0
    interface: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.inflow_side not in ("inner", "outer"):
            raise ValueError("inflow_side must be 'inner' or 'outer'")
        if self.inflow_f.frame is not self.frame:
            raise ValueError("inflow state frame does not match the problem frame")


def _layout(problem: TransportProblem, n_cells: int, t: float) -> np.ndarray:
    """Node positions at time t: affine, or two affine pieces joined at
    the material interface once that is at least one cell inside."""
    lo, hi = problem.velocity.domain(t)
    uniform = lo + (hi - lo) * np.arange(n_cells + 1) / n_cells
    if problem.interface is None:
        return uniform
    m = float(problem.interface(t))
    nominal = (hi - lo) / n_cells
    if m - lo < nominal or hi - m < nominal:
        return uniform
    k = int(round(n_cells * (m - lo) / (hi - lo)))
    k = min(max(k, 1), n_cells - 1)
    lower = lo + (m - lo) * np.arange(k + 1) / k
    upper = m + (hi - m) * np.arange(1, n_cells - k + 1) / (n_cells - k)
    return np.concatenate([lower, upper])


def _relative_speeds(problem: TransportProblem, nodes: np.ndarray,
                     t: float) -> np.ndarray:
    lo, hi = float(nodes[0]), float(nodes[-1])
    rate_lo, rate_hi = problem.domain_rates(t)
    anchors = [lo, hi]
    rates = [rate_lo, rate_hi]
    if problem.interface is not None:
        m = float(problem.interface(t))
        if lo < m < hi:
            anchors = [lo, m, hi]
            rates = [rate_lo, float(problem.velocity.v_r(m, t)), rate_hi]
    grid_motion = np.interp(nodes, anchors, rates)
    return np.asarray(problem.velocity.v_r(nodes, t), dtype=float) - grid_motion


def cfl_dt(problem: TransportProblem, snapshot: FieldSnapshot,
           cfl: float = 0.8) -> float:
    """Largest stable step at the snapshot's state for the given number."""
    nodes = snapshot.grid.nodes
    vmax = float(np.max(np.abs(_relative_speeds(problem, nodes, snapshot.t))))
    dx = float(np.min(np.diff(nodes)))
    if vmax == 0.0:
        return np.inf
    return cfl * dx / vmax


def step(snapshot: FieldSnapshot, problem: TransportProblem,
         dt: float) -> FieldSnapshot:
    """One semi-Lagrangian step of size dt."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    t0 = snapshot.t
    t1 = t0 + dt
    x0 = snapshot.grid.nodes
    v_rel = _relative_speeds(problem, x0, t0)
    dx_min = float(np.min(np.diff(x0)))
    courant = dt * float(np.max(np.abs(v_rel))) / dx_min
    if courant > _CFL_LIMIT:
        raise CFLError(
            f"step dt={dt} gives Courant number {courant:.3f} > {_CFL_LIMIT}",
            dt_suggested=_CFL_LIMIT * dx_min / float(np.max(np.abs(v_rel))),
        )

    x1 = _layout(problem, x0.size - 1, t1)

    v = problem.velocity
    tm = t0 + dt / 2.0
    x_mid = x1 - 0.5 * dt * np.asarray(v.v_r(x1, t1), dtype=float)
    feet = x1 - dt * np.asarray(v.v_r(x_mid, tm), dtype=float)

    f_new = np.empty_like(snapshot.f)
    for k in range(f_new.shape[1]):
        f_new[:, k] = np.interp(feet, x0, snapshot.f[:, k])
    a_rr = np.asarray(v.dv_dr(x_mid, tm), dtype=float)
    a_tt = np.asarray(v.v_r(x_mid, tm), dtype=float) / x_mid
    f_new[:, 0] *= np.exp(dt * a_rr)
    for k in range(1, f_new.shape[1]):
        f_new[:, k] *= np.exp(dt * a_tt)

    pin = 0 if problem.inflow_side == "inner" else -1
    f_new[pin, :] = problem.inflow_f.components
    return FieldSnapshot(MovingGrid(x1, t1), f_new, snapshot.frame)


def solve(problem: TransportProblem, n_cells: int, t_end: float,
          cfl: float = 0.8, output_times=()) -> list[FieldSnapshot]:
    """March from the initial state to t_end; snapshots at requested times.

    Steps follow the CFL bound and are clipped to land exactly on every
    output time and on t_end, which is always included as the last
    snapshot.  Everything is deterministic.
    """
    if n_cells < 8:
        raise ValueError("need at least 8 cells")
    if not 0.0 < cfl <= _CFL_LIMIT:
        raise ValueError(f"cfl must be in (0, {_CFL_LIMIT}]")
    t = problem.t_start
    if t_end <= t:
        raise ValueError("t_end must exceed the problem start time")
    lo, hi = problem.velocity.domain(t)
    if not hi > lo:
        raise ValueError("the body is empty at the start time")
    nodes = _layout(problem, n_cells, t)
    f0 = np.asarray(problem.initial_f(nodes, t), dtype=float)
    snap = FieldSnapshot(MovingGrid(nodes, t), f0, problem.frame)

    marks = sorted({float(x) for x in output_times if t < float(x) <= t_end})
    if not marks or marks[-1] < t_end:
        marks.append(t_end)
    out: list[FieldSnapshot] = []
    eps = 1e-12 * max(1.0, abs(t_end))
    for mark in marks:
        while snap.t < mark - eps:
            dt = min(cfl_dt(problem, snap, cfl), mark - snap.t)
            snap = step(snap, problem, dt)
        out.append(snap)
    return out


def sphere_transport(scenario, r1=None, t_start: float = 0.0) -> TransportProblem:
    """Adapter for the sphere problem (inflow at the fixed inner surface).

    A scenario with no initial body has an empty domain at t = 0, so the
    grid solver must start at some t_start > 0 from the closed-form state.
    """
    from . import sphere as sph

    field = sph.velocity_field(scenario, r1)

    def rates(t):
        hi = field.domain(t)[1]
        drdt = sph.velocity(scenario, hi, t)
        if scenario.ablation_speed is not None:
            drdt -= scenario.ablation_speed(t)
        return (0.0, drdt)

    def initial_f(nodes, t):
        out = np.empty((nodes.size, 3))
        for i, r in enumerate(nodes):
            out[i] = sph.elastic_deformation(scenario, float(r), t, r1).components
        return out

    interface = None
    if scenario.initial_body is not None:
        interface = lambda t: sph.front_radius(scenario, t)  # noqa: E731

    return TransportProblem(
        velocity=field,
        domain_rates=rates,
        inflow_side="inner",
        inflow_f=DiagTensor.identity(Frame.SPHERICAL),
        initial_f=initial_f,
        frame=Frame.SPHERICAL,
        t_start=t_start,
        interface=interface,
    )


def cylinder_transport(history) -> TransportProblem:
    """Adapter for the cylinder problem (inflow at the winding surface)."""
    from . import cylinder as cyl

    field = cyl.velocity_field(history)

    def rates(t):
        return (history.r_in.slope(t), history.r_out.slope(t))

    def initial_f(nodes, t):
        out = np.empty((nodes.size, 2))
        for i, r in enumerate(nodes):
            out[i] = cyl.elastic_deformation(history, float(r), t).components
        return out

    return TransportProblem(
        velocity=field,
        domain_rates=rates,
        inflow_side="outer",
        inflow_f=DiagTensor.identity(Frame.POLAR),
        initial_f=initial_f,
        frame=Frame.POLAR,
        interface=lambda t: cyl.interface_radius(history, t),
    )


def max_abs_error(snapshot: FieldSnapshot, reference: Callable) -> float:
    """L-infinity distance between a snapshot and reference(r, t) -> row."""
    worst = 0.0
    for i, r in enumerate(snapshot.grid.nodes):
        ref = np.asarray(reference(float(r), snapshot.t), dtype=float)
        worst = max(worst, float(np.max(np.abs(snapshot.f[i] - ref))))
    return worst
