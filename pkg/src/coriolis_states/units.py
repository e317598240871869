"""Pinned constants, frame parameters and oscillator-unit scaling.

Public quantities are SI. Spectral numerics run in oscillator units,
``xi = (x - x_center) / C`` and ``eps = E / (hbar * omega_tilde)``, where
``C = sqrt(hbar / (2 m omega))`` is the Coriolis radius.

Only the residual Hamiltonian is modelled: the centrifugal term is assumed
to counterbalance the trapping potential exactly, and no trap is represented.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "PhysicalConstants",
    "CODATA2018",
    "JOULE_PER_MEV",
    "FrameParams",
    "ScalingMap",
    "make_frame_params",
    "coriolis_radius",
    "oscillator_scaling",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    electron_mass: float
    name: str = "custom"

    def __post_init__(self):
        for name in ("hbar", "electron_mass"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(name, f"must be finite and positive, got {value!r}")


CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,
    electron_mass=9.1093837015e-31,
    name="CODATA 2018",
)

# exact by the 2019 SI definition of the elementary charge
JOULE_PER_MEV = 1.602176634e-22


def _require_positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValidationError(name, f"must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class FrameParams:
    """Mass, angular speed and action defining a rotating-frame scenario.

    ``omega`` is the magnitude of the frame angular velocity; the axis
    direction is carried by the vector-valued APIs.
    """

    m: float
    omega: float
    hbar: float = CODATA2018.hbar
    omega_tilde: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "m", _require_positive("m", self.m))
        object.__setattr__(self, "omega", _require_positive("omega", self.omega))
        object.__setattr__(self, "hbar", _require_positive("hbar", self.hbar))
        object.__setattr__(self, "omega_tilde", 2.0 * self.omega)


def make_frame_params(m=CODATA2018.electron_mass, omega=1e11, hbar=None) -> FrameParams:
    """Validated :class:`FrameParams`; ``hbar`` defaults to the pinned value."""
    if hbar is None:
        hbar = CODATA2018.hbar
    return FrameParams(m=m, omega=omega, hbar=hbar)


def coriolis_radius(params: FrameParams) -> float:
    """Coriolis radius ``sqrt(hbar / (2 m omega))`` in metres."""
    return math.sqrt(params.hbar / (2.0 * params.m * params.omega))


@dataclass(frozen=True)
class ScalingMap:
    """Affine map between SI and oscillator units for one ``k_y`` sector."""

    length_unit: float
    energy_unit: float
    center: float

    def to_xi(self, x):
        return (np.asarray(x, dtype=float) - self.center) / self.length_unit

    def to_x(self, xi):
        return np.asarray(xi, dtype=float) * self.length_unit + self.center

    def to_eps(self, energy):
        return np.asarray(energy, dtype=float) / self.energy_unit

    def to_energy(self, eps):
        return np.asarray(eps, dtype=float) * self.energy_unit


def oscillator_scaling(params: FrameParams, k_y: float = 0.0) -> ScalingMap:
    center = params.hbar * k_y / (params.m * params.omega_tilde)
    return ScalingMap(
        length_unit=coriolis_radius(params),
        energy_unit=params.hbar * params.omega_tilde,
        center=center,
    )
