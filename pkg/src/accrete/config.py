"""Scenario configuration: parsing, validation, canonical rendering.

The on-disk format is INI-style text: ``[section]`` headers with
``key = value`` lines.  Sections are ``problem``, ``geometry``,
``material``, one ``rates.<name>`` section per rate function, and the
optional ``numerics`` and ``outputs`` blocks.  Parsing validates
everything it can and reports all problems together in a single
ConfigError rather than stopping at the first.  `render` emits a
normalized form (defaults materialized, keys in a fixed order, floats in
shortest round-trip decimal) so that parse/render round-trips are
idempotent after one pass.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .kinematics import MaterialModel
from .rates import RateFunction

__all__ = [
    "DerivativeSpec",
    "MaterialSpec",
    "ScenarioConfig",
    "parse_config",
    "parse_file",
    "render",
    "build_material",
    "build_scenario",
]

_RATE_NAMES = {
    "sphere": ("accretion_speed", "ablation_speed"),
    "cylinder": ("growth_speed", "inner_pressure"),
}
_REQUIRED_RATES = {"sphere": ("accretion_speed",), "cylinder": ("growth_speed",)}
_EMIT_TOKENS = ("deformation", "stress")

_NUMERIC_DEFAULTS = {
    "dt": 1e-3,
    "n_cells": 128,
    "cfl": 0.8,
    "steps_per_unit": 1000,
    "tol_scale": 1.0,
}
_OUTPUT_DEFAULTS = {"times": (1.0,), "radial_samples": 50,
                    "emit": _EMIT_TOKENS}


@dataclass(frozen=True)
class DerivativeSpec:
    """A strain-energy derivative: a constant or a table over the first
    invariant (linearly interpolated, clamped at the ends)."""

    kind: str
    value: float = 0.0
    knots: tuple = ()
    table: tuple = ()

    @classmethod
    def constant(cls, value: float) -> "DerivativeSpec":
        return cls(kind="constant", value=float(value))

    @classmethod
    def from_pairs(cls, pairs) -> "DerivativeSpec":
        knots = tuple(float(k) for k, _ in pairs)
        vals = tuple(float(v) for _, v in pairs)
        if len(knots) < 2:
            raise ValueError("a derivative table needs at least two points")
        if not all(b > a for a, b in zip(knots, knots[1:])):
            raise ValueError("derivative table knots must be strictly increasing")
        return cls(kind="table", knots=knots, table=vals)

    def as_callable(self):
        if self.kind == "constant":
            c = self.value
            return lambda i1, i2: c + 0.0 * np.asarray(i1, dtype=float)
        xs = np.array(self.knots)
        ys = np.array(self.table)
        return lambda i1, i2: np.interp(i1, xs, ys)

    def render(self) -> str:
        if self.kind == "constant":
            return repr(self.value)
        return ", ".join(f"{k!r}:{v!r}" for k, v in zip(self.knots, self.table))


@dataclass(frozen=True)
class MaterialSpec:
    model: str
    shear_modulus: float
    dW1: DerivativeSpec | None = None
    dW2: DerivativeSpec | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario description, ready to build solver objects."""

    kind: str
    inner_radius: float
    outer_radius: float | None
    material: MaterialSpec
    rates: dict
    dt: float = _NUMERIC_DEFAULTS["dt"]
    n_cells: int = _NUMERIC_DEFAULTS["n_cells"]
    cfl: float = _NUMERIC_DEFAULTS["cfl"]
    steps_per_unit: int = _NUMERIC_DEFAULTS["steps_per_unit"]
    tol_scale: float = _NUMERIC_DEFAULTS["tol_scale"]
    times: tuple = _OUTPUT_DEFAULTS["times"]
    radial_samples: int = _OUTPUT_DEFAULTS["radial_samples"]
    emit: tuple = _OUTPUT_DEFAULTS["emit"]

    @property
    def t_end(self) -> float:
        return self.times[-1]


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


class _Collector:
    """Accumulates validation problems so they can be reported together."""

    def __init__(self):
        self.errors: list[str] = []

    def add(self, message: str):
        self.errors.append(message)

    def number(self, section, key, text, check=None, describe=""):
        try:
            value = float(text)
        except ValueError:
            self.add(f"[{section}] {key}: not a number: {text!r}")
            return None
        if check is not None and not check(value):
            self.add(f"[{section}] {key} must be {describe} (got {text})")
            return None
        return value

    def integer(self, section, key, text, minimum):
        try:
            value = int(text)
        except ValueError:
            self.add(f"[{section}] {key}: not an integer: {text!r}")
            return None
        if value < minimum:
            self.add(f"[{section}] {key} must be at least {minimum} (got {value})")
            return None
        return value

    def finish(self):
        if self.errors:
            raise ConfigError(self.errors)


def _parse_rate(name: str, options: dict, errs: _Collector) -> RateFunction | None:
    kind = options.pop("kind", None)
    section = f"rates.{name}"
    if kind is None:
        errs.add(f"[{section}] missing key: kind")
        return None
    try:
        if kind == "constant":
            allowed = {"value"}
            value = float(options.get("value", ""))
            rate = RateFunction.constant(value)
        elif kind == "ramp":
            allowed = {"a", "b"}
            rate = RateFunction.ramp(float(options.get("a", "")),
                                     float(options.get("b", "")))
        elif kind == "poly":
            allowed = {"coeffs"}
            rate = RateFunction.poly(_floats(options.get("coeffs", "")))
        elif kind == "table":
            allowed = {"times", "values"}
            rate = RateFunction.table(_floats(options.get("times", "")),
                                      _floats(options.get("values", "")))
        else:
            errs.add(f"[{section}] unknown kind: {kind!r}")
            return None
    except (ValueError, TypeError) as exc:
        errs.add(f"[{section}] invalid {kind} parameters: {exc}")
        return None
    for key in sorted(set(options) - allowed):
        errs.add(f"[{section}] unknown key: {key}")
    return rate


def _parse_derivative(section, key, text, errs: _Collector):
    text = text.strip()
    if ":" not in text:
        value = errs.number(section, key, text)
        return None if value is None else DerivativeSpec.constant(value)
    try:
        pairs = []
        for chunk in text.split(","):
            k, v = chunk.split(":")
            pairs.append((float(k), float(v)))
        return DerivativeSpec.from_pairs(pairs)
    except ValueError as exc:
        errs.add(f"[{section}] {key}: bad derivative table: {exc}")
        return None


def _check_unknown(section, options, allowed, errs):
    for key in sorted(set(options) - set(allowed)):
        errs.add(f"[{section}] unknown key: {key}")


def parse_config(text) -> ScenarioConfig:
    """Parse and validate scenario text (str or UTF-8 bytes).

    Raises ConfigError carrying the complete list of problems found.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    cp.optionxform = str
    errs = _Collector()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        errs.add(f"malformed config: {exc}")
        errs.finish()

    sections = {name: dict(cp.items(name)) for name in cp.sections()}

    if "problem" not in sections:
        errs.add("missing section: [problem]")
        errs.finish()
    problem = sections.pop("problem")
    _check_unknown("problem", problem, {"kind"}, errs)
    kind = problem.get("kind", "")
    if kind not in ("sphere", "cylinder"):
        errs.add(f"[problem] kind must be 'sphere' or 'cylinder' (got {kind!r})")
        errs.finish()

    geometry = sections.pop("geometry", None)
    inner_radius = outer_radius = None
    if geometry is None:
        errs.add("missing section: [geometry]")
    else:
        _check_unknown("geometry", geometry, {"inner_radius", "outer_radius"}, errs)
        if "inner_radius" not in geometry:
            errs.add("[geometry] missing key: inner_radius")
        else:
            inner_radius = errs.number("geometry", "inner_radius",
                                       geometry["inner_radius"],
                                       lambda v: v > 0.0, "positive")
        if "outer_radius" in geometry:
            outer_radius = errs.number("geometry", "outer_radius",
                                       geometry["outer_radius"],
                                       lambda v: v > 0.0, "positive")
        elif kind == "cylinder":
            errs.add("[geometry] missing key: outer_radius")
        if (inner_radius is not None and outer_radius is not None
                and outer_radius <= inner_radius):
            errs.add("[geometry] outer_radius must exceed inner_radius")

    material_sec = sections.pop("material", None)
    material = None
    if material_sec is None:
        errs.add("missing section: [material]")
    else:
        _check_unknown("material", material_sec,
                       {"model", "shear_modulus", "dW1", "dW2"}, errs)
        model = material_sec.get("model", "neo_hookean")
        if model not in ("neo_hookean", "general"):
            errs.add(f"[material] model must be 'neo_hookean' or 'general'"
                     f" (got {model!r})")
        shear = None
        if "shear_modulus" not in material_sec:
            errs.add("[material] missing key: shear_modulus")
        else:
            shear = errs.number("material", "shear_modulus",
                                material_sec["shear_modulus"],
                                lambda v: v > 0.0, "positive")
        dw1 = dw2 = None
        if model == "general":
            if kind == "sphere":
                errs.add("[material] the sphere solution requires"
                         " model = neo_hookean")
            if "dW1" not in material_sec:
                errs.add("[material] model = general requires dW1")
            else:
                dw1 = _parse_derivative("material", "dW1",
                                        material_sec["dW1"], errs)
            if "dW2" in material_sec:
                dw2 = _parse_derivative("material", "dW2",
                                        material_sec["dW2"], errs)
            else:
                dw2 = DerivativeSpec.constant(0.0)
        else:
            for key in ("dW1", "dW2"):
                if key in material_sec:
                    errs.add(f"[material] {key} is only valid for"
                             f" model = general")
        if shear is not None and model in ("neo_hookean", "general"):
            material = MaterialSpec(model=model, shear_modulus=shear,
                                    dW1=dw1, dW2=dw2)

    rates: dict[str, RateFunction] = {}
    allowed_rates = _RATE_NAMES[kind]
    for name in list(sections):
        if not name.startswith("rates."):
            continue
        rate_name = name[len("rates."):]
        options = sections.pop(name)
        if rate_name not in allowed_rates:
            errs.add(f"unknown section: [{name}] (for a {kind} the rates are"
                     f" {', '.join(allowed_rates)})")
            continue
        rate = _parse_rate(rate_name, options, errs)
        if rate is not None:
            rates[rate_name] = rate
    for name in _REQUIRED_RATES[kind]:
        if name not in rates:
            errs.add(f"missing section: [rates.{name}]")
    if kind == "cylinder" and "inner_pressure" not in rates:
        rates["inner_pressure"] = RateFunction.constant(0.0)

    numerics = sections.pop("numerics", {})
    _check_unknown("numerics", numerics, set(_NUMERIC_DEFAULTS), errs)
    dt = _NUMERIC_DEFAULTS["dt"]
    if "dt" in numerics:
        dt = errs.number("numerics", "dt", numerics["dt"],
                         lambda v: v > 0.0, "positive") or dt
    cfl = _NUMERIC_DEFAULTS["cfl"]
    if "cfl" in numerics:
        cfl = errs.number("numerics", "cfl", numerics["cfl"],
                          lambda v: 0.0 < v <= 0.9, "in (0, 0.9]") or cfl
    tol_scale = _NUMERIC_DEFAULTS["tol_scale"]
    if "tol_scale" in numerics:
        tol_scale = errs.number("numerics", "tol_scale", numerics["tol_scale"],
                                lambda v: v > 0.0, "positive") or tol_scale
    n_cells = _NUMERIC_DEFAULTS["n_cells"]
    if "n_cells" in numerics:
        n_cells = errs.integer("numerics", "n_cells", numerics["n_cells"], 8) \
            or n_cells
    steps_per_unit = _NUMERIC_DEFAULTS["steps_per_unit"]
    if "steps_per_unit" in numerics:
        steps_per_unit = errs.integer("numerics", "steps_per_unit",
                                      numerics["steps_per_unit"], 1) \
            or steps_per_unit

    outputs = sections.pop("outputs", {})
    _check_unknown("outputs", outputs, {"times", "radial_samples", "emit"}, errs)
    times = _OUTPUT_DEFAULTS["times"]
    if "times" in outputs:
        try:
            parsed = sorted(set(_floats(outputs["times"])))
        except ValueError as exc:
            errs.add(f"[outputs] times: {exc}")
            parsed = []
        if parsed and parsed[0] <= 0.0:
            errs.add("[outputs] times must be positive")
        elif parsed:
            times = tuple(parsed)
        else:
            errs.add("[outputs] times must list at least one time")
    radial_samples = _OUTPUT_DEFAULTS["radial_samples"]
    if "radial_samples" in outputs:
        radial_samples = errs.integer("outputs", "radial_samples",
                                      outputs["radial_samples"], 2) \
            or radial_samples
    emit = _OUTPUT_DEFAULTS["emit"]
    if "emit" in outputs:
        tokens = [tok.strip() for tok in outputs["emit"].split(",") if tok.strip()]
        bad = sorted(set(tokens) - set(_EMIT_TOKENS))
        if bad:
            errs.add(f"[outputs] emit: unknown flags {bad}; valid ones are"
                     f" {list(_EMIT_TOKENS)}")
        elif not tokens:
            errs.add("[outputs] emit must list at least one flag")
        else:
            emit = tuple(tok for tok in _EMIT_TOKENS if tok in tokens)

    for name in sorted(sections):
        errs.add(f"unknown section: [{name}]")

    t_end = times[-1]
    if kind == "sphere":
        _check_rate_sign(rates.get("accretion_speed"), "accretion_speed",
                         t_end, "positive", lambda lo, hi: lo > 0.0, errs)
        _check_rate_sign(rates.get("ablation_speed"), "ablation_speed",
                         t_end, "nonnegative", lambda lo, hi: lo >= 0.0, errs)
    else:
        _check_rate_sign(rates.get("growth_speed"), "growth_speed",
                         t_end, "positive", lambda lo, hi: lo > 0.0, errs)
        pressure = rates.get("inner_pressure")
        if pressure is not None:
            try:
                start = float(pressure(0.0))
            except DomainError as exc:
                errs.add(f"[rates.inner_pressure] {exc}")
            else:
                if abs(start) > 1e-12:
                    errs.add(f"[rates.inner_pressure] inner_pressure(0) must"
                             f" be 0 (got {start})")

    errs.finish()
    return ScenarioConfig(kind=kind, inner_radius=inner_radius,
                          outer_radius=outer_radius, material=material,
                          rates=rates, dt=dt, n_cells=n_cells, cfl=cfl,
                          steps_per_unit=steps_per_unit, tol_scale=tol_scale,
                          times=times, radial_samples=radial_samples,
                          emit=emit)


def _check_rate_sign(rate, name, t_end, describe, ok, errs):
    if rate is None:
        return
    try:
        lo, hi = rate.range_on(0.0, t_end)
    except DomainError as exc:
        errs.add(f"[rates.{name}] must cover [0, {t_end}]: {exc}")
        return
    if not ok(lo, hi):
        errs.add(f"[rates.{name}] must be {describe} on [0, {t_end}]"
                 f" (range [{lo}, {hi}])")


def parse_file(path) -> ScenarioConfig:
    with open(path, "rb") as fh:
        return parse_config(fh.read())


def _render_rate(name: str, rate: RateFunction, out: list):
    out.append(f"[rates.{name}]")
    out.append(f"kind = {rate.kind}")
    if rate.kind == "constant":
        out.append(f"value = {rate.coeffs[0]!r}")
    elif rate.kind == "ramp":
        out.append(f"a = {rate.coeffs[0]!r}")
        out.append(f"b = {rate.coeffs[1]!r}")
    elif rate.kind == "poly":
        out.append("coeffs = " + ", ".join(repr(c) for c in rate.coeffs))
    else:
        out.append("times = " + ", ".join(repr(float(t)) for t in rate.times))
        out.append("values = " + ", ".join(repr(float(v)) for v in rate.values))
    out.append("")


def render(config: ScenarioConfig) -> str:
    """Canonical text form; stable under parse/render round-trips."""
    out = ["[problem]", f"kind = {config.kind}", ""]
    out.append("[geometry]")
    out.append(f"inner_radius = {config.inner_radius!r}")
    if config.outer_radius is not None:
        out.append(f"outer_radius = {config.outer_radius!r}")
    out.append("")
    mat = config.material
    out.append("[material]")
    out.append(f"model = {mat.model}")
    out.append(f"shear_modulus = {mat.shear_modulus!r}")
    if mat.model == "general":
        out.append(f"dW1 = {mat.dW1.render()}")
        out.append(f"dW2 = {mat.dW2.render()}")
    out.append("")
    for name in _RATE_NAMES[config.kind]:
        if name in config.rates:
            _render_rate(name, config.rates[name], out)
    out.append("[numerics]")
    out.append(f"dt = {config.dt!r}")
    out.append(f"n_cells = {config.n_cells}")
    out.append(f"cfl = {config.cfl!r}")
    out.append(f"steps_per_unit = {config.steps_per_unit}")
    out.append(f"tol_scale = {config.tol_scale!r}")
    out.append("")
    out.append("[outputs]")
    out.append("times = " + ", ".join(repr(t) for t in config.times))
    out.append(f"radial_samples = {config.radial_samples}")
    out.append("emit = " + ", ".join(config.emit))
    out.append("")
    return "\n".join(out)


def build_material(spec: MaterialSpec) -> MaterialModel:
    if spec.model == "neo_hookean":
        return MaterialModel.neo_hookean(spec.shear_modulus)
    return MaterialModel.general(spec.shear_modulus,
                                 spec.dW1.as_callable(),
                                 spec.dW2.as_callable())


def build_scenario(config: ScenarioConfig):
    """Construct the solver-side scenario object for the config."""
    from . import cylinder, sphere

    material = build_material(config.material)
    if config.kind == "sphere":
        body = None
        if config.outer_radius is not None:
            body = sphere.InitialBody(outer_radius=config.outer_radius)
        return sphere.SphereScenario(
            inner_radius=config.inner_radius,
            accretion_speed=config.rates["accretion_speed"],
            material=material,
            ablation_speed=config.rates.get("ablation_speed"),
            initial_body=body,
        )
    return cylinder.CylinderScenario(
        inner_radius=config.inner_radius,
        outer_radius=config.outer_radius,
        growth_speed=config.rates["growth_speed"],
        inner_pressure=config.rates["inner_pressure"],
        material=material,
    )
