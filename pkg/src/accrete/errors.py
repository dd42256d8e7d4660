"""Exception types shared across the library.

Every failure mode that callers are expected to handle gets its own class;
plain ValueError/TypeError are reserved for programming mistakes (bad
argument types, malformed constructor input).
"""

from __future__ import annotations


class DomainError(ValueError):
    """A field was evaluated outside the body or a series outside its range."""


class IntegrationError(RuntimeError):
    """An ODE right-hand side went non-finite during time stepping."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BracketError(ValueError):
    """Root finding was started on an interval without a sign change."""


class CFLError(RuntimeError):
    """A transport step was attempted with too large a time step."""

    def __init__(self, message: str, dt_suggested: float | None = None):
        super().__init__(message)
        self.dt_suggested = dt_suggested


class GeometrySolveError(RuntimeError):
    """The pressure balance could not be bracketed for the inner radius."""

    def __init__(self, message: str, t: float, lo: float, hi: float):
        super().__init__(message)
        self.t = t
        self.lo = lo
        self.hi = hi


class AblationExhaustedError(RuntimeError):
    """Ablation consumed the body: the outer radius reached the inner one."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class ConfigError(ValueError):
    """One or more problems found while parsing a scenario config.

    All validation failures are aggregated into ``errors`` so a user can fix
    the whole file in one pass.
    """

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)
