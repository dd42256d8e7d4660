"""Diagonal kinematics and constitutive evaluation.

Both solved problems are radially symmetric, so every tensor of interest
(elastic deformation, left Cauchy-Green tensor, Cauchy stress) is diagonal
in the local polar or spherical frame.  This module provides the small
tensor type used throughout, the strain invariants, and the incompressible
hyperelastic stress law

    sigma = (-p + 2 I2 dW/dI2) I + 2 dW/dI1 B - 2 dW/dI2 B^-1,   B = F_e F_e^T,

which reduces to sigma = -p I + G B for a neo-Hookean solid.  Plane-strain
tensors carry two components and are embedded as (B_rr, B_tt, 1) wherever
the three-dimensional invariants are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import DomainError

__all__ = [
    "Frame",
    "DiagTensor",
    "MaterialModel",
    "GrowthFlux",
    "BoundaryTraction",
    "invariants",
    "cauchy_stress",
    "det",
]


class Frame(str, Enum):
    """Orthonormal frame a diagonal tensor is expressed in."""

    POLAR = "polar"          # (r, theta), plane strain
    SPHERICAL = "spherical"  # (r, theta, phi)

    @property
    def dim(self) -> int:
        return 2 if self is Frame.POLAR else 3


@dataclass(frozen=True)
class DiagTensor:
    """Diagonal second-order tensor with components in a fixed frame.

    The component count must match the frame (2 for polar, 3 for spherical)
    and every entry must be finite.  Positivity is not enforced here because
    stresses share this type; deformation producers check it themselves.
    """

    components: tuple[float, ...]
    frame: Frame

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.frame.dim:
            raise ValueError(
                f"{self.frame.value} frame needs {self.frame.dim} components, "
                f"got {len(comps)}"
            )
        if not all(math.isfinite(c) for c in comps):
            raise ValueError(f"non-finite tensor components {comps}")

    @classmethod
    def identity(cls, frame: Frame) -> "DiagTensor":
        return cls((1.0,) * frame.dim, frame)

    @property
    def rr(self) -> float:
        return self.components[0]

    @property
    def tt(self) -> float:
        return self.components[1]

    @property
    def pp(self) -> float:
        if self.frame is not Frame.SPHERICAL:
            raise AttributeError("pp component only exists in the spherical frame")
        return self.components[2]

    def det(self) -> float:
        return math.prod(self.components)

    def embedded(self) -> tuple[float, float, float]:
        """Components padded to three entries (plane strain gets a unit axis)."""
        if self.frame is Frame.POLAR:
            return (*self.components, 1.0)
        return self.components  # type: ignore[return-value]


def det(tensor: DiagTensor) -> float:
    """Determinant of a diagonal tensor (product of its components)."""
    return tensor.det()


def invariants(b: DiagTensor) -> tuple[float, float]:
    """First two principal invariants of a left Cauchy-Green tensor.

    I1 = tr B and I2 = (tr^2 B - tr B^2) / 2, evaluated on the
    three-component embedding.  B must be componentwise positive.
    """
    comps = b.embedded()
    if min(comps) <= 0.0:
        raise DomainError(f"left Cauchy-Green tensor must be positive, got {comps}")
    i1 = sum(comps)
    i2 = (i1 * i1 - sum(c * c for c in comps)) / 2.0
    return (i1, i2)


@dataclass(frozen=True)
class MaterialModel:
    """Incompressible hyperelastic solid described by dW/dI1 and dW/dI2.

    The derivative evaluators take (I1, I2) and must accept numpy arrays as
    well as floats (returning a matching shape); constants broadcast, so
    ``lambda i1, i2: 0.3`` is fine.  ``shear_modulus`` is the small-strain
    shear modulus used for tolerance scaling.
    """

    shear_modulus: float
    dW_dI1: Callable
    dW_dI2: Callable
    kind: str

    def __post_init__(self):
        if not (math.isfinite(self.shear_modulus) and self.shear_modulus > 0.0):
            raise ValueError(f"shear modulus must be positive, got {self.shear_modulus}")
        if self.kind not in ("neo_hookean", "general"):
            raise ValueError(f"unknown material kind {self.kind!r}")

    @classmethod
    def neo_hookean(cls, shear_modulus: float) -> "MaterialModel":
        half_g = float(shear_modulus) / 2.0
        return cls(float(shear_modulus), lambda i1, i2: half_g, lambda i1, i2: 0.0,
                   "neo_hookean")

    @classmethod
    def general(cls, shear_modulus: float, dW_dI1: Callable,
                dW_dI2: Callable) -> "MaterialModel":
        return cls(float(shear_modulus), dW_dI1, dW_dI2, "general")


def cauchy_stress(f_e: DiagTensor, p: float, mat: MaterialModel) -> DiagTensor:
    """Cauchy stress of an incompressible solid at elastic deformation F_e.

    For spherical tensors this is the full three-dimensional law quoted in
    the module docstring.  For plane-strain tensors the in-plane reduction
    sigma = -p I + 2 (dW/dI1 + dW/dI2) B is used; the two conventions carry
    the same deviator and differ only in how the multiplier p is defined.
    For a neo-Hookean solid both branches coincide with -p I + G B.
    """
    if min(f_e.components) <= 0.0:
        raise DomainError(f"elastic deformation must be positive, got {f_e.components}")
    b = tuple(c * c for c in f_e.components)
    if f_e.frame is Frame.POLAR:
        i1, i2 = invariants(DiagTensor(b, Frame.POLAR))
        w = 2.0 * (mat.dW_dI1(i1, i2) + mat.dW_dI2(i1, i2))
        return DiagTensor(tuple(-p + w * bi for bi in b), Frame.POLAR)
    i1, i2 = invariants(DiagTensor(b, Frame.SPHERICAL))
    w1 = 2.0 * mat.dW_dI1(i1, i2)
    w2 = 2.0 * mat.dW_dI2(i1, i2)
    base = -p + i2 * w2
    return DiagTensor(tuple(base + w1 * bi - w2 / bi for bi in b), Frame.SPHERICAL)


@dataclass(frozen=True)
class GrowthFlux:
    """Mass exchange bookkeeping at a growth surface.

    mass_rate is the mass added per unit area and time (negative for
    ablation), attach_velocity the radial velocity of arriving particles.
    """

    mass_rate: float
    attach_velocity: float
    density: float

    def __post_init__(self):
        if not (math.isfinite(self.density) and self.density > 0.0):
            raise ValueError(f"density must be positive, got {self.density}")
        if not (math.isfinite(self.mass_rate) and math.isfinite(self.attach_velocity)):
            raise ValueError("growth flux entries must be finite")

    @property
    def momentum_supply(self) -> float:
        return self.mass_rate * self.attach_velocity

    @property
    def regime(self) -> str:
        if self.mass_rate > 0.0:
            return "accretion"
        if self.mass_rate < 0.0:
            return "ablation"
        return "inert"


@dataclass(frozen=True)
class BoundaryTraction:
    """Radial traction applied on one of the two boundary surfaces."""

    traction: float
    location: str

    def __post_init__(self):
        if self.location not in ("inner", "outer"):
            raise ValueError(f"location must be 'inner' or 'outer', got {self.location!r}")
        if not math.isfinite(self.traction):
            raise ValueError("traction must be finite")
