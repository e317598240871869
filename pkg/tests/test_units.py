import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coriolis_states.errors import ValidationError
from coriolis_states.units import (
    CODATA2018,
    JOULE_PER_MEV,
    FrameParams,
    coriolis_radius,
    make_frame_params,
    oscillator_scaling,
)

from oracles import CORIOLIS_RADIUS_ME_1E11

masses = st.floats(1e-32, 1e-20)
omegas = st.floats(1e-3, 1e16)


def test_pinned_constants():
    assert CODATA2018.hbar == 1.054571817e-34
    assert CODATA2018.electron_mass == 9.1093837015e-31
    assert JOULE_PER_MEV == 1.602176634e-22


def test_make_frame_params_doubles_omega(electron_frame):
    assert electron_frame.omega_tilde == 2e11
    assert electron_frame.hbar == CODATA2018.hbar


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(m=-1.0, omega=1e11), "m"),
        (dict(m=CODATA2018.electron_mass, omega=0.0), "omega"),
        (dict(m=1.0, omega=1.0, hbar=-1.0), "hbar"),
        (dict(m=float("nan"), omega=1.0), "m"),
    ],
)
def test_make_frame_params_rejects(kwargs, field):
    with pytest.raises(ValidationError) as info:
        make_frame_params(**kwargs)
    assert info.value.field == field


def test_frame_params_immutable(electron_frame):
    with pytest.raises(AttributeError):
        electron_frame.omega = 3.0


def test_coriolis_radius_value(electron_frame):
    assert math.isclose(coriolis_radius(electron_frame), CORIOLIS_RADIUS_ME_1E11, rel_tol=1e-12)


def test_coriolis_radius_quarter_law():
    a = coriolis_radius(make_frame_params(omega=1e11))
    b = coriolis_radius(make_frame_params(omega=4e11))
    assert math.isclose(b, a / 2, rel_tol=1e-15)


@given(masses, omegas)
def test_coriolis_radius_identity(m, omega):
    p = FrameParams(m, omega)
    c = coriolis_radius(p)
    assert c > 0
    assert math.isclose(c**2 * 2 * p.m * p.omega / p.hbar, 1.0, rel_tol=1e-15)
    assert p.omega_tilde / p.omega == 2.0


def test_scaling_examples(electron_frame):
    s = oscillator_scaling(electron_frame, 3e8)
    assert s.length_unit == coriolis_radius(electron_frame)
    assert s.to_xi(s.center) == 0.0
    assert math.isclose(s.to_eps(CODATA2018.hbar * 2e11 / 2), 0.5, rel_tol=1e-15)


@given(masses, omegas, st.floats(-1e10, 1e10), st.floats(-50, 50), st.floats(0.01, 100))
def test_scaling_round_trip(m, omega, k_y, xi, eps):
    s = oscillator_scaling(FrameParams(m, omega), k_y)
    x = s.to_x(xi)
    assert math.isclose(s.to_x(s.to_xi(x)), x, rel_tol=1e-14, abs_tol=1e-14 * s.length_unit)
    e = s.to_energy(eps)
    assert math.isclose(s.to_eps(e), eps, rel_tol=1e-14)
