"""Evolution of vectors under ``dR/dt = O x R``.

Vectors are plain ``numpy`` arrays of shape ``(3,)``; :func:`vec3` validates
them. Constant generators have three equivalent routes (operator series,
Rodrigues closed form, and the time-dependent integrators with one step),
which the tests cross-check against each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import TimeRangeError, ValidationError

__all__ = [
    "vec3",
    "RotationGenerator",
    "coriolis_acceleration",
    "cross_apply_n",
    "evolve_series",
    "evolve_rodrigues",
    "evolve_time_dependent",
    "METHODS",
    "MAX_SERIES_TERMS",
]

MAX_SERIES_TERMS = 170
METHODS = ("piecewise-rodrigues", "rk4", "magnus2")


def vec3(v, name="vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValidationError(name, f"expected 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(name, "components must be finite")
    return arr


def coriolis_acceleration(omega, v) -> np.ndarray:
    """Coriolis force per unit mass, ``-2 omega x v``."""
    return -2.0 * np.cross(vec3(omega, "omega"), vec3(v, "v"))


def cross_apply_n(o, r0, n: int) -> np.ndarray:
    """``o x (o x (... x r0))`` with ``n`` nested cross products."""
    if n < 0:
        raise ValidationError("n", "must be >= 0")
    o = vec3(o, "o")
    r = vec3(r0, "r0").copy()
    for _ in range(n):
        r = np.cross(o, r)
    return r


def evolve_series(o, r0, t: float, n_terms: int) -> np.ndarray:
    """Truncated exponential series ``sum_k t^k/k! [o x]^k r0``.

    Each term is obtained from the previous one as ``(t/k) o x term``, so no
    factorial or power is ever formed.
    """
    if n_terms < 1:
        raise ValidationError("n_terms", "must be >= 1")
    if n_terms > MAX_SERIES_TERMS:
        raise ValidationError("n_terms", f"must be <= {MAX_SERIES_TERMS}")
    o = vec3(o, "o")
    term = vec3(r0, "r0").copy()
    total = term.copy()
    for k in range(1, n_terms):
        term = (t / k) * np.cross(o, term)
        total += term
    return total


def evolve_rodrigues(o, r0, t: float) -> np.ndarray:
    """Closed-form rotation of ``r0`` by angle ``|o| t`` about ``o``.

    A zero generator is the identity (the continuous limit of the formula).
    """
    o = vec3(o, "o")
    r0 = vec3(r0, "r0")
    norm = float(np.linalg.norm(o))
    if norm == 0.0:
        return r0.copy()
    n = o / norm
    angle = norm * t
    c, s = math.cos(angle), math.sin(angle)
    return c * r0 + s * np.cross(n, r0) + (1.0 - c) * np.dot(n, r0) * n


@dataclass(frozen=True)
class RotationGenerator:
    """Constant or tabulated rotation generator ``O(t)`` (rad/s).

    Tabulated generators are linearly interpolated between samples.
    Use :meth:`constant`, :meth:`sampled` or :meth:`from_function`.
    """

    times: np.ndarray | None
    vectors: np.ndarray

    @classmethod
    def constant(cls, o):
        return cls(times=None, vectors=vec3(o, "o").reshape(1, 3))

    @classmethod
    def sampled(cls, samples):
        """Build from an iterable of ``(time, vector)`` pairs."""
        samples = list(samples)
        if len(samples) < 2:
            raise ValidationError("samples", "need at least 2 samples")
        times = np.array([float(t) for t, _ in samples])
        vectors = np.array([vec3(v, "sample") for _, v in samples])
        if not np.all(np.isfinite(times)):
            raise ValidationError("samples", "times must be finite")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("samples", "times must be strictly increasing")
        return cls(times=times, vectors=vectors)

    @classmethod
    def from_function(cls, func, t0: float, t1: float, n_samples: int = 1001):
        ts = np.linspace(t0, t1, n_samples)
        return cls.sampled((t, func(t)) for t in ts)

    @property
    def is_constant(self) -> bool:
        return self.times is None

    def _check_range(self, t):
        if self.times is None:
            return
        t = np.asarray(t)
        lo, hi = self.times[0], self.times[-1]
        if np.any(t < lo) or np.any(t > hi):
            raise TimeRangeError("t", f"outside sampled range [{lo}, {hi}]")

    def __call__(self, t):
        """Generator at time(s) ``t``; returns shape ``(3,)`` or ``(len(t), 3)``."""
        t_arr = np.asarray(t, dtype=float)
        if self.times is None:
            return np.broadcast_to(self.vectors[0], t_arr.shape + (3,)).copy()
        self._check_range(t_arr)
        return np.stack(
            [np.interp(t_arr, self.times, self.vectors[:, j]) for j in range(3)], axis=-1
        )

    def _integral(self, t):
        # exact integral of the piecewise-linear interpolant from times[0] to t
        seg = np.diff(self.times)[:, None] * 0.5 * (self.vectors[1:] + self.vectors[:-1])
        cum = np.vstack([np.zeros((1, 3)), np.cumsum(seg, axis=0)])
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, len(self.times) - 2)
        dt = (t - self.times[idx])[:, None]
        v0 = self.vectors[idx]
        slope = (self.vectors[idx + 1] - v0) / (self.times[idx + 1] - self.times[idx])[:, None]
        return cum[idx] + v0 * dt + 0.5 * slope * dt**2

    def average(self, t0, t1):
        """Exact mean of the interpolated generator over each ``[t0, t1]``."""
        t0 = np.atleast_1d(np.asarray(t0, dtype=float))
        t1 = np.atleast_1d(np.asarray(t1, dtype=float))
        if self.times is None:
            return np.broadcast_to(self.vectors[0], (len(t0), 3)).copy()
        self._check_range(np.concatenate([t0, t1]))
        return (self._integral(t1) - self._integral(t0)) / (t1 - t0)[:, None]


def evolve_time_dependent(
    gen: RotationGenerator,
    r0,
    t_final: float,
    steps: int,
    method: str = "piecewise-rodrigues",
    t_start: float = 0.0,
) -> np.ndarray:
    """Evolve ``r0`` from ``t_start`` to ``t_final`` under a time-dependent generator.

    Methods
    -------
    piecewise-rodrigues
        One exact rotation per step about the generator at the step midpoint.
    magnus2
        One exact rotation per step about the step-averaged generator
        (first Magnus term; no commutator correction).
    rk4
        Classical Runge-Kutta on the linear ODE; does not preserve the norm
        exactly and serves as an independent check.
    """
    if steps < 1:
        raise ValidationError("steps", "must be >= 1")
    if method not in METHODS:
        raise ValidationError("method", f"must be one of {METHODS}, got {method!r}")
    r0 = vec3(r0, "r0")
    if not gen.is_constant:
        gen._check_range(np.array([t_start, t_final]))
    edges = np.linspace(t_start, t_final, steps + 1)
    dt = (t_final - t_start) / steps
    if method == "rk4":
        mids = 0.5 * (edges[:-1] + edges[1:])
        return kernels.rk4_cross(
            np.ascontiguousarray(gen(edges[:-1])),
            np.ascontiguousarray(gen(mids)),
            np.ascontiguousarray(gen(edges[1:])),
            r0,
            dt,
        )
    if method == "piecewise-rodrigues":
        axes = gen(0.5 * (edges[:-1] + edges[1:]))
    else:
        axes = gen.average(edges[:-1], edges[1:])
    return kernels.compose_rodrigues(np.ascontiguousarray(axes * dt), r0)
