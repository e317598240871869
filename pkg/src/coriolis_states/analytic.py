"""Closed-form Coriolis states and their lattice operator representations.

The residual rotating-frame Hamiltonian ``(p - m Gamma)^2 / 2m`` with gauge
potential ``Gamma = (0, 2 omega x, 0)`` is a shifted oscillator of
frequency ``omega_tilde = 2 omega``: levels ``hbar omega_tilde (n + 1/2)``,
eigenfunctions ``exp(i k_y y) phi_n((x - x_c) / C)`` centred on the guiding
centre ``x_c = hbar k_y / (m omega_tilde)``.

Lattice operators are ``scipy.sparse`` matrices over a :class:`Grid1D` in SI
coordinates. Identities that hold for the continuum operators are checked by
applying the lattice operators to smooth oscillator states and comparing on
interior rows, since the truncated stencils are not meaningful at the edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .errors import UnsupportedOrderError, ValidationError
from .units import FrameParams, coriolis_radius

__all__ = [
    "QuantumNumbers",
    "Grid1D",
    "KineticOperators",
    "LadderOperators",
    "MAX_HERMITE_ORDER",
    "EDGE_ROWS",
    "gauge_potential",
    "coriolis_field",
    "kinetic_momentum_matrices",
    "commutator_deviation",
    "ladder_matrices",
    "ladder_commutator_deviation",
    "annihilation_residual",
    "hamiltonian_matrix",
    "ladder_hamiltonian_deviation",
    "energy_level",
    "level_spacing",
    "guiding_center",
    "hermite_phi",
    "hermite_phi_table",
    "eigenfunction",
    "sampled_state",
]

MAX_HERMITE_ORDER = 100
EDGE_ROWS = 2


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    k_y: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValidationError("n", f"must be an integer >= 0, got {self.n!r}")
        if not math.isfinite(self.k_y):
            raise ValidationError("k_y", "must be finite")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid including both endpoints."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValidationError("grid", "bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValidationError("grid", f"need x_min < x_max, got {self.x_min}, {self.x_max}")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValidationError("n_points", f"must be an integer >= 3, got {self.n_points!r}")

    @classmethod
    def symmetric(cls, half_width: float, n_points: int, center: float = 0.0):
        return cls(center - half_width, center + half_width, n_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def interior(self, edge: int = EDGE_ROWS) -> slice:
        return slice(edge, self.n_points - edge)


def gauge_potential(params: FrameParams, x):
    """Gauge potential ``(0, 2 omega x, 0)`` in m/s.

    Scalar ``x`` gives shape ``(3,)``; array ``x`` gives ``x.shape + (3,)``.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (3,))
    out[..., 1] = 2.0 * params.omega * x
    return out


def coriolis_field(params: FrameParams) -> np.ndarray:
    """Curl of :func:`gauge_potential`: ``(0, 0, 2 omega)``, i.e. ``omega_tilde`` along z.

    This is twice the frame angular velocity; it plays the role of the
    magnetic field in the Landau analogy.
    """
    return np.array([0.0, 0.0, params.omega_tilde])


def _central_difference(grid: Grid1D) -> sp.csr_matrix:
    # truncated at the edges (zero Dirichlet data), hence exactly antisymmetric
    n = grid.n_points
    off = np.full(n - 1, 0.5 / grid.spacing)
    return sp.diags([-off, off], [-1, 1], format="csr")


def _second_difference(grid: Grid1D) -> sp.csr_matrix:
    n = grid.n_points
    h2 = grid.spacing**2
    return sp.diags(
        [np.full(n - 1, 1.0 / h2), np.full(n, -2.0 / h2), np.full(n - 1, 1.0 / h2)],
        [-1, 0, 1],
        format="csr",
    )


@dataclass(frozen=True)
class KineticOperators:
    pi_x: sp.csr_matrix
    pi_y: sp.csr_matrix
    gamma_at: Callable[[np.ndarray], np.ndarray]
    grid: Grid1D
    k_y: float


def kinetic_momentum_matrices(params: FrameParams, grid: Grid1D, k_y: float = 0.0) -> KineticOperators:
    """Lattice kinetic momenta ``pi_x = p_x`` and ``pi_y = hbar k_y - 2 m omega x``."""
    if grid.n_points < 16:
        raise ValidationError("n_points", "kinetic momentum matrices need at least 16 points")
    x = grid.points()
    pi_x = (-1j * params.hbar) * _central_difference(grid)
    pi_y = sp.diags(params.hbar * k_y - 2.0 * params.m * params.omega * x, 0, format="csr")
    return KineticOperators(
        pi_x=pi_x.tocsr(),
        pi_y=pi_y.astype(complex),
        gamma_at=lambda xs: gauge_potential(params, xs),
        grid=grid,
        k_y=k_y,
    )


def sampled_state(params: FrameParams, grid: Grid1D, k_y: float, n: int) -> np.ndarray:
    """``phi_n`` sampled on an SI grid around the guiding centre (unnormalised on the lattice)."""
    xi = (grid.points() - guiding_center(params, k_y)) / coriolis_radius(params)
    return hermite_phi(n, xi)


def commutator_deviation(ops: KineticOperators, params: FrameParams) -> float:
    """Relative interior deviation of the lattice ``[pi_x, pi_y]`` from ``2 i hbar m omega``.

    The lattice commutator is a nearest-neighbour average times the
    constant, so it is compared by its action on the ground state
    ``phi_0`` centred at the guiding centre: the result is
    ``max_j |([pi_x, pi_y] psi)_j - 2 i hbar m omega psi_j| / (2 hbar m omega max|psi|)``
    over rows at least ``EDGE_ROWS`` away from either boundary. It falls as
    ``h**2``.
    """
    c = (ops.pi_x @ ops.pi_y - ops.pi_y @ ops.pi_x).tocsr()
    psi = sampled_state(params, ops.grid, ops.k_y, 0)
    scale = 2.0 * params.hbar * params.m * params.omega
    diff = c @ psi - 1j * scale * psi
    inner = ops.grid.interior()
    return float(np.max(np.abs(diff[inner])) / (scale * np.max(np.abs(psi))))


@dataclass(frozen=True)
class LadderOperators:
    a: sp.csr_matrix
    a_dagger: sp.csr_matrix
    grid: Grid1D


def ladder_matrices(params: FrameParams, grid: Grid1D, k_y: float = 0.0) -> LadderOperators:
    """Lattice ladder operators with ``[a, a_dagger] = 1``.

    ``a = C / (sqrt(2) hbar) * (pi_x + i pi_y)``. Compared with the
    commonly printed ``C / sqrt(2 hbar) * (pi_x - i pi_y)`` this fixes the
    missing ``sqrt(hbar)`` in the prefactor and swaps the sign so that ``a``
    lowers rather than raises; in oscillator units it is
    ``-i (xi + d/dxi) / sqrt(2)``.
    """
    ops = kinetic_momentum_matrices(params, grid, k_y)
    pref = coriolis_radius(params) / (math.sqrt(2.0) * params.hbar)
    a = (pref * (ops.pi_x + 1j * ops.pi_y)).tocsr()
    return LadderOperators(a=a, a_dagger=a.conj().T.tocsr(), grid=grid)


def ladder_commutator_deviation(ladder: LadderOperators, params: FrameParams, k_y: float = 0.0) -> float:
    """Interior max deviation of ``[a, a_dagger] phi_0`` from ``phi_0``, relative to ``max|phi_0|``."""
    c = (ladder.a @ ladder.a_dagger - ladder.a_dagger @ ladder.a).tocsr()
    psi = sampled_state(params, ladder.grid, k_y, 0)
    inner = ladder.grid.interior()
    return float(np.max(np.abs((c @ psi - psi)[inner])) / np.max(np.abs(psi)))


def annihilation_residual(ladder: LadderOperators, vec) -> float:
    """Grid norm ``||a v||`` for ``v`` normalised so that ``sum |v|^2 h = 1``."""
    vec = np.asarray(vec)
    h = ladder.grid.spacing
    v = vec / math.sqrt(float(np.sum(np.abs(vec) ** 2)) * h)
    av = ladder.a @ v
    return math.sqrt(float(np.sum(np.abs(av) ** 2)) * h)


def hamiltonian_matrix(params: FrameParams, grid: Grid1D, k_y: float = 0.0) -> sp.csr_matrix:
    """Three-point SI discretisation of ``p_x^2/2m + m omega_tilde^2 (x - x_c)^2 / 2``."""
    x = grid.points()
    xc = guiding_center(params, k_y)
    kinetic = (-(params.hbar**2) / (2.0 * params.m)) * _second_difference(grid)
    potential = sp.diags(0.5 * params.m * params.omega_tilde**2 * (x - xc) ** 2, 0)
    return (kinetic + potential).tocsr()


def ladder_hamiltonian_deviation(
    ladder: LadderOperators, params: FrameParams, k_y: float = 0.0, levels: int = 4
) -> float:
    """Relative interior mismatch between ``hbar omega_tilde (a_dagger a + 1/2)`` and the lattice H.

    Both operators act on ``phi_0 .. phi_{levels-1}``; the worst ratio
    ``max_interior |(N - H) psi| / max_interior |H psi|`` is returned.
    """
    n = ladder.grid.n_points
    number_form = params.hbar * params.omega_tilde * (
        ladder.a_dagger @ ladder.a + 0.5 * sp.identity(n, format="csr")
    )
    ham = hamiltonian_matrix(params, ladder.grid, k_y)
    inner = ladder.grid.interior()
    worst = 0.0
    for level in range(levels):
        psi = sampled_state(params, ladder.grid, k_y, level)
        h_psi = ham @ psi
        diff = number_form @ psi - h_psi
        worst = max(worst, float(np.max(np.abs(diff[inner])) / np.max(np.abs(h_psi[inner]))))
    return worst


def energy_level(params: FrameParams, n: int) -> float:
    """``hbar omega_tilde (n + 1/2)`` in joules."""
    if int(n) != n or n < 0:
        raise ValidationError("n", f"must be an integer >= 0, got {n!r}")
    return params.hbar * params.omega_tilde * (n + 0.5)


def level_spacing(params: FrameParams) -> float:
    return params.hbar * params.omega_tilde


def guiding_center(params: FrameParams, k_y: float) -> float:
    return params.hbar * k_y / (params.m * params.omega_tilde)


def hermite_phi_table(n_max: int, xi) -> np.ndarray:
    """Rows ``phi_0 .. phi_{n_max}`` evaluated at ``xi``.

    Uses the normalised three-term recurrence, so no Hermite polynomial
    (which overflows for moderate ``n``) is ever formed.
    """
    if int(n_max) != n_max or n_max < 0:
        raise ValidationError("n", f"must be an integer >= 0, got {n_max!r}")
    if n_max > MAX_HERMITE_ORDER:
        raise UnsupportedOrderError("n", f"orders above {MAX_HERMITE_ORDER} are not supported")
    xi = np.asarray(xi, dtype=float)
    table = np.empty((n_max + 1,) + xi.shape)
    table[0] = np.pi**-0.25 * np.exp(-0.5 * xi**2)
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * xi * table[0]
    for k in range(1, n_max):
        table[k + 1] = math.sqrt(2.0 / (k + 1)) * xi * table[k] - math.sqrt(k / (k + 1)) * table[k - 1]
    return table


def hermite_phi(n: int, xi):
    """L2-normalised oscillator eigenfunction ``phi_n(xi)``."""
    values = hermite_phi_table(n, xi)[n]
    return values if values.ndim else float(values)


def eigenfunction(params: FrameParams, qn: QuantumNumbers, x, y):
    """Coriolis eigenstate ``exp(i k_y y) phi_n((x - x_c)/C) / sqrt(C)``.

    Normalised per unit length in y: ``int |Phi|^2 dx = 1``.
    """
    c = coriolis_radius(params)
    xi = (np.asarray(x, dtype=float) - guiding_center(params, qn.k_y)) / c
    amp = hermite_phi_table(qn.n, xi)[qn.n] / math.sqrt(c)
    out = np.exp(1j * qn.k_y * np.asarray(y, dtype=float)) * amp
    return out if np.ndim(out) else complex(out)
