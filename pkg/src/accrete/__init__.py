"""Surface growth in incompressible elastic solids.

Closed-form solutions for two growing-body problems (a sphere accreting
at a fixed inner surface while possibly ablating outside, and a wound
cylinder under inner pressure), a generic transport solver used to
cross-check them, characteristic-curve tracing, and the scenario/result
file formats behind the ``accrete`` command-line tool.
"""

from . import config, cylinder, results, sphere, transport
from .characteristics import (
    CharacteristicCurve,
    CurveOrigin,
    VelocityField,
    classify_origin,
    trace,
)
from .errors import (
    AblationExhaustedError,
    BracketError,
    CFLError,
    ConfigError,
    DomainError,
    GeometrySolveError,
    IntegrationError,
    QuadratureError,
)
from .kinematics import (
    BoundaryTraction,
    DiagTensor,
    Frame,
    GrowthFlux,
    MaterialModel,
    cauchy_stress,
    det,
    invariants,
)
from .numerics import TimeSeries, adaptive_quad, find_root, rk4_path
from .rates import RateFunction

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "config", "cylinder", "results", "sphere", "transport",
    "CharacteristicCurve", "CurveOrigin", "VelocityField",
    "classify_origin", "trace",
    "AblationExhaustedError", "BracketError", "CFLError", "ConfigError",
    "DomainError", "GeometrySolveError", "IntegrationError",
    "QuadratureError",
    "BoundaryTraction", "DiagTensor", "Frame", "GrowthFlux",
    "MaterialModel", "cauchy_stress", "det", "invariants",
    "TimeSeries", "adaptive_quad", "find_root", "rk4_path",
    "RateFunction",
]
