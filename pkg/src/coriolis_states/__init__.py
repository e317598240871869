"""Coriolis quantum states: rotation calculus, rotating-frame Landau levels
and Aharonov-Carmi phase estimates."""
from .aharonov_carmi import ACResult, ACScenario, ac_energy_shift, ac_phase, fullerene_preset
from .analytic import (
    Grid1D,
    QuantumNumbers,
    coriolis_field,
    eigenfunction,
    energy_level,
    gauge_potential,
    guiding_center,
    hermite_phi,
    kinetic_momentum_matrices,
    ladder_matrices,
)
from .errors import NumericalFailure, ValidationError
from .kernels import BACKEND
from .rotor import (
    RotationGenerator,
    coriolis_acceleration,
    cross_apply_n,
    evolve_rodrigues,
    evolve_series,
    evolve_time_dependent,
)
from .spectral import discretize_hamiltonian, eigensolve_lowest, overlap, solve_spectrum
from .units import CODATA2018, FrameParams, coriolis_radius, make_frame_params, oscillator_scaling

__version__ = "0.1.0"
