"""Command-line driver.

Three subcommands cover the batch workflows:

    run               solve a scenario; write results.csv, manifest.json,
                      report.json
    compare           closed form vs the grid transport solver at one or
                      more resolutions; write compare.csv
    characteristics   trace characteristic curves; one CSV per curve

Every residual printed in a report is recomputed from the files that were
just written, never copied out of solver internals, so a report always
describes the emitted data.  Exit status: 0 when every gate passes, 1 on
a gate failure or solver error, 2 on an invalid configuration.  CSV
output is deterministic; wall times appear only in report.json.

The env var ACCRETE_THREADS caps the worker pool used for multi-curve
tracing (0 or unset picks the machine's count); worker count never
changes the output bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy

from . import __version__, characteristics, cylinder, sphere, transport
from .config import ScenarioConfig, build_scenario, parse_file, render
from .errors import ConfigError
from .kinematics import DiagTensor, Frame
from .numerics import find_root
from .results import ResultRow, ResultTable, read_results, write_results

__all__ = ["RunReport", "cmd_run", "cmd_compare", "cmd_characteristics", "main"]

DET_TOL = 1e-12
TRACTION_TOL = 1e-10        # relative to the shear modulus
CONSTANT_TOL = 1e-8         # characteristic conservation, relative
MIN_ORDER = 0.9


@dataclass
class RunReport:
    """Outcome of one subcommand: summary data plus the gated residuals.

    residuals maps a gate name to {value, tolerance, comparison, passed};
    tables carries ungated numbers (per-resolution errors, per-curve
    residuals) for report.json.
    """

    command: str
    summary: dict
    residuals: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(entry["passed"] for entry in self.residuals.values())

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "summary": self.summary,
            "residuals": self.residuals,
            "tables": self.tables,
            "wall_time_seconds": self.wall_time,
            "passed": self.passed,
        }


def _gate(value: float, tolerance: float, comparison: str = "<=") -> dict:
    value = float(value)
    ok = value <= tolerance if comparison == "<=" else value >= tolerance
    return {"value": value, "tolerance": float(tolerance),
            "comparison": comparison, "passed": bool(ok)}


def _worker_count(n_tasks: int) -> int:
    raw = os.environ.get("ACCRETE_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


def _load(config_path, tol_scale) -> tuple[ScenarioConfig, object]:
    cfg = parse_file(config_path)
    if tol_scale is not None:
        if tol_scale <= 0.0:
            raise ConfigError(["--tol-scale must be positive"])
        cfg = dataclasses.replace(cfg, tol_scale=tol_scale)
    return cfg, build_scenario(cfg)


def _time_grid(t_end: float, dt: float) -> np.ndarray:
    n = max(1, int(round(t_end / dt)))
    return np.linspace(0.0, t_end, n + 1)


def _snap_times(requested, nodes: np.ndarray) -> list[float]:
    idx = sorted({int(np.argmin(np.abs(nodes - t))) for t in requested})
    return [float(nodes[i]) for i in idx]


def _sphere_outer_series(cfg: ScenarioConfig, s):
    if s.ablation_speed is None:
        return None
    return sphere.outer_radius(s, _time_grid(cfg.t_end, cfg.dt))


def _write_json(out_dir: str, name: str, payload: dict):
    with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_manifest(out_dir: str, cfg: ScenarioConfig, command: str, extra: dict):
    manifest = {
        "command": command,
        "config": render(cfg),
        "package": {"name": "accrete", "version": __version__},
        "libraries": {"numpy": np.__version__, "scipy": scipy.__version__},
        "tolerances": {
            "det": DET_TOL * cfg.tol_scale,
            "traction": TRACTION_TOL * cfg.material.shear_modulus * cfg.tol_scale,
            "characteristic_constant": CONSTANT_TOL * cfg.tol_scale,
            "min_convergence_order": MIN_ORDER,
        },
    }
    manifest.update(extra)
    _write_json(out_dir, "manifest.json", manifest)


# -- run ---------------------------------------------------------------------

def _sphere_attachment_time(s, r: float, t: float) -> float:
    r0 = s.inner_radius
    deposited = s.accretion_speed.integral
    target = deposited(t) - (r ** 3 - r0 ** 3) / (3.0 * r0 * r0)
    if target <= 0.0:
        return 0.0
    return find_root(lambda tau: deposited(tau) - target, 0.0, t,
                     1e-13 * max(1.0, t))


def _sphere_rows(cfg: ScenarioConfig, s, r1s, times) -> list[ResultRow]:
    with_def = "deformation" in cfg.emit
    with_stress = "stress" in cfg.emit
    rows = []
    for t in times:
        hi = r1s(t) if r1s is not None else sphere.outer_radius_exact(s, t)
        for r in np.linspace(s.inner_radius, hi, cfg.radial_samples):
            r = float(r)
            reg = sphere.region(s, r, t)
            kw = {"region": reg.value}
            if reg is characteristics.CurveOrigin.INFLOW_BOUNDARY:
                kw["tau"] = _sphere_attachment_time(s, r, t)
            if with_def:
                f = sphere.elastic_deformation(s, r, t, r1s)
                kw.update(F_rr=f.components[0], F_tt=f.components[1],
                          F_pp=f.components[2])
            if with_stress:
                sig, p = sphere._stress_and_pressure(s, r, t, r1s, None)
                kw.update(sigma_rr=sig.components[0], sigma_tt=sig.components[1],
                          sigma_pp=sig.components[2], p=p)
            rows.append(ResultRow(t=t, r=r, **kw))
    return rows


def _cylinder_rows(cfg: ScenarioConfig, s, h, times) -> list[ResultRow]:
    with_def = "deformation" in cfg.emit
    with_stress = "stress" in cfg.emit
    rows = []
    for t in times:
        rin, rout = h.r_in(t), h.r_out(t)
        rhat = cylinder.interface_radius(h, t)
        for r in np.linspace(rin, rout, cfg.radial_samples):
            r = float(r)
            wound = r > rhat
            kw = {"region": "boundary" if wound else "initial"}
            if wound:
                kw["tau"] = cylinder.attachment_time(h, r, t)
            if with_def:
                f = cylinder.elastic_deformation(h, r, t)
                kw.update(F_rr=f.components[0], F_tt=f.components[1])
            if with_stress:
                sig, p = cylinder.stress(h, s, r, t)
                kw.update(sigma_rr=sig.components[0],
                          sigma_tt=sig.components[1], p=p)
            rows.append(ResultRow(t=t, r=r, **kw))
    return rows


def _residuals_from_table(table: ResultTable, cfg: ScenarioConfig, s):
    det_err = outer_res = inner_res = None
    for t in table.times():
        rows = table.at_time(t)
        for row in rows:
            if row.F_rr is not None:
                det = row.F_rr * row.F_tt * (row.F_pp if row.F_pp is not None
                                             else 1.0)
                det_err = max(det_err or 0.0, abs(det - 1.0))
        outer_row = max(rows, key=lambda x: x.r)
        if outer_row.sigma_rr is not None:
            outer_res = max(outer_res or 0.0, abs(outer_row.sigma_rr))
        if cfg.kind == "cylinder":
            inner_row = min(rows, key=lambda x: x.r)
            if inner_row.sigma_rr is not None:
                applied = s.inner_pressure(t)
                inner_res = max(inner_res or 0.0,
                                abs(inner_row.sigma_rr + applied))
    return det_err, outer_res, inner_res


def cmd_run(config_path, out_dir, tol_scale: float | None = None) -> RunReport:
    """Solve the configured scenario and write results + manifest + report."""
    start = time.perf_counter()
    cfg, scenario = _load(config_path, tol_scale)
    os.makedirs(out_dir, exist_ok=True)
    if cfg.kind == "sphere":
        r1s = _sphere_outer_series(cfg, scenario)
        times = list(cfg.times)
        rows = _sphere_rows(cfg, scenario, r1s, times)
    else:
        history = cylinder.evolve_geometry(scenario, cfg.t_end, cfg.dt)
        # sample on geometry nodes: between nodes the stored history is
        # only a linear interpolant and boundary residuals pick up O(dt^2)
        times = _snap_times(cfg.times, history.times)
        rows = _cylinder_rows(cfg, scenario, history, times)
    csv_path = os.path.join(out_dir, "results.csv")
    n_bytes = write_results(ResultTable(tuple(rows)), csv_path)

    emitted = read_results(csv_path)
    det_err, outer_res, inner_res = _residuals_from_table(emitted, cfg, scenario)
    g = cfg.material.shear_modulus
    ts = cfg.tol_scale
    residuals = {}
    if det_err is not None:
        residuals["max_det_deviation"] = _gate(det_err, DET_TOL * ts)
    if outer_res is not None:
        residuals["outer_traction"] = _gate(outer_res, TRACTION_TOL * g * ts)
    if inner_res is not None:
        residuals["inner_traction"] = _gate(inner_res, TRACTION_TOL * g * ts)

    report = RunReport(
        command="run",
        summary={"problem": cfg.kind, "times": times,
                 "radial_samples": cfg.radial_samples,
                 "rows": len(emitted), "bytes": n_bytes,
                 "results": csv_path},
        residuals=residuals,
        wall_time=time.perf_counter() - start,
    )
    _write_manifest(out_dir, cfg, "run", {"times": times})
    _write_json(out_dir, "report.json", report.to_dict())
    return report


# -- compare -----------------------------------------------------------------

def cmd_compare(config_path, out_dir, cells=None,
                tol_scale: float | None = None) -> RunReport:
    """Run the grid transport solver against the closed form.

    With several resolutions this is a convergence study: the gates are a
    strictly decreasing L-infinity error and (from three resolutions up) a
    fitted order of at least 0.9.  L2 is the root-mean-square over nodes
    and components.
    """
    start = time.perf_counter()
    cfg, scenario = _load(config_path, tol_scale)
    os.makedirs(out_dir, exist_ok=True)
    cells = sorted(set(cells)) if cells else [cfg.n_cells]

    if cfg.kind == "sphere":
        r1s = _sphere_outer_series(cfg, scenario)
        # an initially empty body has no grid to build at t = 0; start the
        # grid solver later, from the closed-form state
        t_start = 0.0 if scenario.initial_body is not None else cfg.t_end / 5.0
        problem = transport.sphere_transport(scenario, r1s, t_start=t_start)
        t_final = cfg.t_end

        def reference(r, t):
            return sphere.elastic_deformation(scenario, r, t, r1s).components
    else:
        history = cylinder.evolve_geometry(scenario, cfg.t_end, cfg.dt)
        problem = transport.cylinder_transport(history)
        t_final = float(history.times[-1])

        def reference(r, t):
            return cylinder.elastic_deformation(history, r, t).components

    entries = []
    err_lines = []
    for n in cells:
        snap = transport.solve(problem, n, t_final, cfl=cfg.cfl)[-1]
        ref = np.array([reference(float(r), snap.t) for r in snap.grid.nodes])
        err = snap.f - ref
        entries.append({"n_cells": int(n),
                        "l_inf": float(np.max(np.abs(err))),
                        "l2": float(np.sqrt(np.mean(err ** 2)))})
        for i, r in enumerate(snap.grid.nodes):
            cells_err = [repr(float(e)) for e in err[i]]
            if len(cells_err) == 2:
                cells_err.append("")
            err_lines.append(f"{n},{float(r)!r}," + ",".join(cells_err))

    cmp_path = os.path.join(out_dir, "compare.csv")
    with open(cmp_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("n_cells,r,err_F_rr,err_F_tt,err_F_pp\n")
        fh.write("\n".join(err_lines) + "\n")

    residuals = {}
    linf = [e["l_inf"] for e in entries]
    if len(linf) >= 2:
        worst_ratio = max(b / a for a, b in zip(linf, linf[1:]))
        residuals["error_decrease_ratio"] = _gate(worst_ratio, 1.0)
    if len(linf) >= 3:
        slope = np.polyfit(np.log([e["n_cells"] for e in entries]),
                           np.log(linf), 1)[0]
        residuals["convergence_order"] = _gate(-slope, MIN_ORDER, ">=")

    report = RunReport(
        command="compare",
        summary={"problem": cfg.kind, "t_final": t_final,
                 "cells": [int(n) for n in cells], "compare": cmp_path},
        residuals=residuals,
        tables={"errors": entries},
        wall_time=time.perf_counter() - start,
    )
    _write_manifest(out_dir, cfg, "compare", {"cells": [int(n) for n in cells]})
    _write_json(out_dir, "report.json", report.to_dict())
    return report


# -- characteristics ---------------------------------------------------------

def _parse_seeds(spec: str | None):
    if not spec:
        return None
    seeds = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        key, sep, value = token.partition("=")
        key = key.strip()
        if not sep or key not in ("r", "tau"):
            raise ConfigError(
                [f"bad seed {token!r}: expected r=RADIUS or tau=TIME"])
        try:
            seeds.append((key, float(value)))
        except ValueError:
            raise ConfigError([f"bad seed {token!r}: not a number"]) from None
    if not seeds:
        raise ConfigError(["--seeds listed no seeds"])
    return seeds


def _default_seeds(cfg: ScenarioConfig, scenario) -> list[tuple[str, float]]:
    t_end = cfg.t_end
    if cfg.kind == "sphere" and scenario.initial_body is None:
        return [("tau", j * t_end / 8.0) for j in range(8)]
    hi = (scenario.initial_body.outer_radius if cfg.kind == "sphere"
          else cfg.outer_radius)
    radii = np.linspace(cfg.inner_radius, hi, 6)[1:5]
    return ([("tau", j * t_end / 4.0) for j in range(4)]
            + [("r", float(r)) for r in radii])


def cmd_characteristics(config_path, out_dir, seeds=None,
                        tol_scale: float | None = None) -> RunReport:
    """Trace characteristic curves and check their conserved constants.

    Seeds are either r=RADIUS (initial material, traced from t = 0) or
    tau=TIME (material attached at the accretion surface at that time).
    Along every curve the solver conserves a combination of radius and
    boundary history; its worst relative drift is the gate.
    """
    start = time.perf_counter()
    cfg, scenario = _load(config_path, tol_scale)
    os.makedirs(out_dir, exist_ok=True)
    t_end = cfg.t_end

    if cfg.kind == "sphere":
        r1s = _sphere_outer_series(cfg, scenario)
        vfield = sphere.velocity_field(scenario, r1s)
        frame = Frame.SPHERICAL
        deposited = scenario.accretion_speed.integral
        r0 = scenario.inner_radius

        def curve_constant(t_arr, r_arr):
            return r_arr ** 3 - 3.0 * r0 * r0 * deposited(t_arr)

        def seed_start(kind, value):
            if kind == "tau":
                if not 0.0 <= value < t_end:
                    raise ConfigError(
                        [f"seed tau={value} not inside [0, {t_end})"])
                n = max(1, round(cfg.steps_per_unit * (t_end - value)))
                return value, r0, DiagTensor.identity(frame), n
            body = scenario.initial_body
            f0 = (DiagTensor((body.f_rr(value), body.f_tt(value),
                              body.f_tt(value)), frame)
                  if body is not None else DiagTensor.identity(frame))
            n = max(1, round(cfg.steps_per_unit * t_end))
            return 0.0, value, f0, n

        scale_power = 3
    else:
        history = cylinder.evolve_geometry(scenario, cfg.t_end, cfg.dt)
        vfield = cylinder.velocity_field(history)
        frame = Frame.POLAR
        nodes = history.times
        t_end = float(nodes[-1])

        def curve_constant(t_arr, r_arr):
            return r_arr ** 2 - history.r_in(t_arr) ** 2

        def seed_start(kind, value):
            if kind == "tau":
                k = int(np.argmin(np.abs(nodes - value)))
                if k >= nodes.size - 1:
                    raise ConfigError(
                        [f"seed tau={value} snaps to the end time; curves"
                         f" need attachment before {t_end}"])
                tau = float(nodes[k])
                segments = nodes.size - 1 - k
                per = max(1, round(cfg.steps_per_unit
                                   * (t_end - tau) / segments))
                return (tau, float(history.r_out(tau)),
                        DiagTensor.identity(frame), per * segments)
            segments = nodes.size - 1
            per = max(1, round(cfg.steps_per_unit * t_end / segments))
            return 0.0, value, DiagTensor.identity(frame), per * segments

        scale_power = 2

    seed_list = _parse_seeds(seeds) or _default_seeds(cfg, scenario)

    def trace_one(seed):
        kind, value = seed
        t0, start_r, f0, n_steps = seed_start(kind, value)
        origin = (characteristics.CurveOrigin.INFLOW_BOUNDARY if kind == "tau"
                  else characteristics.CurveOrigin.INITIAL_CONDITION)
        curve = characteristics.trace(vfield, start_r, t0, t_end, f0, n_steps,
                                      origin=origin)
        constant = curve_constant(curve.t, curve.r)
        scale = max(abs(constant[0]), start_r ** scale_power)
        drift = np.abs(constant - constant[0]) / scale
        return curve, drift

    workers = _worker_count(len(seed_list))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        traced = list(pool.map(trace_one, seed_list))

    curve_files = []
    worst = 0.0
    per_curve = []
    for index, ((kind, value), (curve, drift)) in enumerate(zip(seed_list,
                                                                traced)):
        name = f"curve_{index:03d}.csv"
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("t,r,F_rr,F_tt,F_pp,constant_residual\n")
            for i in range(curve.t.size):
                f_pp = repr(float(curve.f[i, 2])) if curve.f.shape[1] == 3 else ""
                fh.write(f"{float(curve.t[i])!r},{float(curve.r[i])!r},"
                         f"{float(curve.f[i, 0])!r},{float(curve.f[i, 1])!r},"
                         f"{f_pp},{float(drift[i])!r}\n")
        curve_files.append(name)
        worst = max(worst, float(np.max(drift)))
        per_curve.append({"seed": f"{kind}={value}", "file": name,
                          "samples": int(curve.t.size),
                          "exited": bool(curve.exited),
                          "max_constant_residual": float(np.max(drift))})

    report = RunReport(
        command="characteristics",
        summary={"problem": cfg.kind, "t_end": t_end, "curves": curve_files},
        residuals={"characteristic_constant":
                   _gate(worst, CONSTANT_TOL * cfg.tol_scale)},
        tables={"curves": per_curve},
        wall_time=time.perf_counter() - start,
    )
    _write_manifest(out_dir, cfg, "characteristics",
                    {"seeds": [f"{k}={v}" for k, v in seed_list]})
    _write_json(out_dir, "report.json", report.to_dict())
    return report


# -- entry point ---------------------------------------------------------------

def _print_report(report: RunReport):
    print(f"{report.command} finished in {report.wall_time:.3f} s")
    for name, entry in report.residuals.items():
        status = "pass" if entry["passed"] else "FAIL"
        print(f"  {name}: {entry['value']:.3e} {entry['comparison']}"
              f" {entry['tolerance']:.3e}  [{status}]")
    if not report.residuals:
        print("  (no gates for this invocation)")


def _cells_arg(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cell list: {text!r}") from None
    if not values or any(v < 8 for v in values):
        raise argparse.ArgumentTypeError("cell counts must be >= 8")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accrete",
        description="Surface-growth solvers: exact closed forms, a generic"
                    " transport solver and characteristic tracing.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scenario file")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--tol-scale", dest="tol_scale", type=float,
                       default=None, help="scale every gate tolerance")

    p_run = sub.add_parser("run", help="solve a scenario and write results")
    common(p_run)
    p_cmp = sub.add_parser("compare",
                           help="grid solver vs closed form, with optional"
                                " convergence study")
    common(p_cmp)
    p_cmp.add_argument("--cells", type=_cells_arg, default=None,
                       help="comma-separated cell counts (default: config)")
    p_chr = sub.add_parser("characteristics", help="trace characteristic curves")
    common(p_chr)
    p_chr.add_argument("--seeds", default=None,
                       help="comma-separated seeds, r=RADIUS or tau=TIME")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            report = cmd_run(args.config, args.out, args.tol_scale)
        elif args.command == "compare":
            report = cmd_compare(args.config, args.out, args.cells,
                                 args.tol_scale)
        else:
            report = cmd_characteristics(args.config, args.out, args.seeds,
                                         args.tol_scale)
    except ConfigError as exc:
        print("configuration errors:", file=sys.stderr)
        for line in exc.errors:
            print(f"  - {line}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001  CLI boundary: report and exit
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _print_report(report)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
