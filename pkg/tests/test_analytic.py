import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_hermite

from coriolis_states.analytic import (
    EDGE_ROWS,
    Grid1D,
    QuantumNumbers,
    annihilation_residual,
    commutator_deviation,
    coriolis_field,
    eigenfunction,
    energy_level,
    gauge_potential,
    guiding_center,
    hermite_phi,
    hermite_phi_table,
    kinetic_momentum_matrices,
    ladder_commutator_deviation,
    ladder_hamiltonian_deviation,
    ladder_matrices,
    level_spacing,
)
from coriolis_states.errors import UnsupportedOrderError, ValidationError
from coriolis_states.spectral import discretize_hamiltonian, eigensolve_lowest
from coriolis_states.units import CODATA2018, FrameParams, coriolis_radius, make_frame_params

from oracles import GROUND_ENERGY_ME_1E11, GUIDING_CENTER_KY_1E9, fd_curl, trapezoid


def si_grid(params, n_points, half_width=10.0, k_y=0.0):
    c = coriolis_radius(params)
    return Grid1D.symmetric(half_width * c, n_points, center=guiding_center(params, k_y))


class TestGrid:
    def test_spacing(self):
        g = Grid1D(-1.0, 1.0, 5)
        assert g.spacing == 0.5
        np.testing.assert_array_equal(g.points(), [-1, -0.5, 0, 0.5, 1])

    @pytest.mark.parametrize("args", [(1.0, 0.0, 10), (0.0, 1.0, 2), (0.0, float("inf"), 10)])
    def test_invalid(self, args):
        with pytest.raises(ValidationError):
            Grid1D(*args)

    def test_quantum_numbers(self):
        with pytest.raises(ValidationError):
            QuantumNumbers(-1, 0.0)
        with pytest.raises(ValidationError):
            QuantumNumbers(0, float("nan"))


class TestGauge:
    def test_values(self):
        p = make_frame_params(omega=1e11)
        np.testing.assert_array_equal(gauge_potential(p, 0.0), [0, 0, 0])
        np.testing.assert_array_equal(gauge_potential(p, 1.0), [0, 2e11, 0])

    def test_curl_oracle(self):
        p = make_frame_params(omega=1e11)
        field = lambda r: gauge_potential(p, r[0])  # noqa: E731
        for point in ([0.0, 0.0, 0.0], [0.3, -1.2, 2.0], [-5.0, 4.0, 1.0]):
            curl = fd_curl(field, point)
            np.testing.assert_allclose(curl, coriolis_field(p), rtol=1e-8, atol=1e-8 * p.omega_tilde)
        assert coriolis_field(p)[2] == p.omega_tilde


class TestKineticMomenta:
    def test_pi_y_vanishes_at_guiding_center(self, electron_frame):
        k_y = 2e8
        g = si_grid(electron_frame, 513, k_y=k_y)
        ops = kinetic_momentum_matrices(electron_frame, g, k_y)
        mid = ops.pi_y.diagonal()[256]
        assert abs(mid) < 1e-12 * CODATA2018.hbar * k_y

    def test_pi_x_hermitian(self, electron_frame):
        ops = kinetic_momentum_matrices(electron_frame, si_grid(electron_frame, 64))
        assert abs(ops.pi_x - ops.pi_x.conj().T).max() == 0.0

    def test_pi_y_entries(self, electron_frame):
        k_y = 1e7
        g = si_grid(electron_frame, 64)
        ops = kinetic_momentum_matrices(electron_frame, g, k_y)
        expected = CODATA2018.hbar * k_y - 2 * electron_frame.m * electron_frame.omega * g.points()
        np.testing.assert_allclose(ops.pi_y.diagonal().real, expected, rtol=1e-14)
        np.testing.assert_allclose(ops.gamma_at(g.points())[:, 1], 2 * electron_frame.omega * g.points())

    def test_too_small(self, electron_frame):
        with pytest.raises(ValidationError):
            kinetic_momentum_matrices(electron_frame, si_grid(electron_frame, 15))

    def test_commutator_512(self, electron_frame):
        ops = kinetic_momentum_matrices(electron_frame, si_grid(electron_frame, 512))
        assert commutator_deviation(ops, electron_frame) < 1e-3

    def test_commutator_second_order(self, electron_frame):
        sizes = [256, 512, 1024, 2048, 4096]
        devs = []
        hs = []
        for n in sizes:
            g = si_grid(electron_frame, n)
            devs.append(commutator_deviation(kinetic_momentum_matrices(electron_frame, g), electron_frame))
            hs.append(g.spacing)
        slope = np.polyfit(np.log(hs), np.log(devs), 1)[0]
        assert abs(slope - 2) < 0.2
        ratios = np.array(devs[:-1]) / np.array(devs[1:])
        np.testing.assert_allclose(ratios, 4.0, rtol=0.05)

    def test_boundary_rows_excluded(self, electron_frame):
        # narrow box: the probe is not small at the walls, so edge rows carry stencil truncation
        g = si_grid(electron_frame, 512, half_width=3.0)
        ops = kinetic_momentum_matrices(electron_frame, g)
        c = (ops.pi_x @ ops.pi_y - ops.pi_y @ ops.pi_x).tocsr()
        xi = (g.points()) / coriolis_radius(electron_frame)
        psi = hermite_phi(0, xi)
        scale = 2 * electron_frame.hbar * electron_frame.m * electron_frame.omega
        full = np.abs(c @ psi - 1j * scale * psi) / (scale * psi.max())
        assert full[0] > 1e-3 and full[-1] > 1e-3
        assert commutator_deviation(ops, electron_frame) < 1e-3
        assert EDGE_ROWS == 2


class TestLadder:
    def test_adjoint_exact(self, electron_frame):
        lad = ladder_matrices(electron_frame, si_grid(electron_frame, 128), 3e7)
        assert abs(lad.a_dagger - lad.a.conj().T).max() == 0.0

    def test_commutator_identity(self, electron_frame):
        lad = ladder_matrices(electron_frame, si_grid(electron_frame, 512))
        assert ladder_commutator_deviation(lad, electron_frame) < 1e-3

    def test_annihilates_numeric_ground_state(self, electron_frame):
        k_y = 5e7
        xi_grid = Grid1D.symmetric(12.0, 2000)
        res = eigensolve_lowest(discretize_hamiltonian(electron_frame, k_y, xi_grid), 2)
        si = si_grid(electron_frame, 2000, half_width=12.0, k_y=k_y)
        lad = ladder_matrices(electron_frame, si, k_y)
        assert annihilation_residual(lad, res.vectors[0]) < 1e-3
        # the first excited state is not annihilated: ||a v1|| = 1
        assert abs(annihilation_residual(lad, res.vectors[1]) - 1.0) < 1e-3

    def test_number_form_matches_hamiltonian(self, electron_frame):
        lad = ladder_matrices(electron_frame, si_grid(electron_frame, 2000, half_width=12.0))
        assert ladder_hamiltonian_deviation(lad, electron_frame) < 1e-3

    def test_number_form_second_order(self, electron_frame):
        devs, hs = [], []
        for n in (512, 1024, 2048, 4096):
            g = si_grid(electron_frame, n)
            devs.append(ladder_hamiltonian_deviation(ladder_matrices(electron_frame, g), electron_frame))
            hs.append(g.spacing)
        slope = np.polyfit(np.log(hs), np.log(devs), 1)[0]
        assert abs(slope - 2) < 0.2


class TestLevels:
    def test_ground_energy(self, electron_frame):
        assert math.isclose(energy_level(electron_frame, 0), GROUND_ENERGY_ME_1E11, rel_tol=1e-15)

    def test_spacing(self, electron_frame):
        for n in range(50):
            gap = energy_level(electron_frame, n + 1) - energy_level(electron_frame, n)
            # closed-form arithmetic; at most rounding of the two products
            assert math.isclose(gap, level_spacing(electron_frame), rel_tol=4e-16 * (n + 2))
        assert level_spacing(electron_frame) == 2 * CODATA2018.hbar * electron_frame.omega

    @pytest.mark.parametrize("n", [-1, 1.5])
    def test_invalid_level(self, electron_frame, n):
        with pytest.raises(ValidationError):
            energy_level(electron_frame, n)

    def test_guiding_center(self, electron_frame):
        assert guiding_center(electron_frame, 0.0) == 0.0
        assert math.isclose(guiding_center(electron_frame, 1e9), GUIDING_CENTER_KY_1E9, rel_tol=1e-14)
        assert guiding_center(electron_frame, 2e9) == 2 * guiding_center(electron_frame, 1e9)
        assert guiding_center(electron_frame, -1e9) < 0


class TestHermite:
    def test_closed_forms(self):
        assert math.isclose(hermite_phi(0, 0.0), math.pi**-0.25, rel_tol=1e-15)
        assert math.isclose(hermite_phi(0, 0.0), 0.75113, rel_tol=1e-5)
        assert hermite_phi(1, 0.0) == 0.0

    def test_against_polynomial_form(self):
        xi = np.linspace(-6, 6, 121)
        for n in range(12):
            ref = eval_hermite(n, xi) * np.exp(-xi**2 / 2) / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
            np.testing.assert_allclose(hermite_phi(n, xi), ref, atol=1e-13)

    def test_norm_phi7(self):
        xi = np.linspace(-15, 15, 30001)
        assert abs(trapezoid(hermite_phi(7, xi) ** 2, xi) - 1) < 1e-10

    def test_orthonormality(self):
        xi = np.linspace(-15, 15, 30001)
        table = hermite_phi_table(10, xi)
        gram = np.array([[trapezoid(a * b, xi) for b in table] for a in table])
        np.testing.assert_allclose(gram, np.eye(11), atol=1e-8)

    def test_envelope_bound(self):
        xi = np.linspace(-20, 20, 8001)
        table = hermite_phi_table(50, xi)
        assert np.all(np.isfinite(table))
        assert np.max(np.abs(table)) <= 0.8

    def test_order_limit(self):
        assert np.isfinite(hermite_phi(100, 3.0))
        with pytest.raises(UnsupportedOrderError):
            hermite_phi(101, 0.0)


class TestEigenfunction:
    def test_y_only_a_phase(self, electron_frame):
        qn = QuantumNumbers(3, 4e7)
        x = guiding_center(electron_frame, qn.k_y) + 0.7 * coriolis_radius(electron_frame)
        mags = [abs(eigenfunction(electron_frame, qn, x, y)) for y in np.linspace(-1e-6, 1e-6, 9)]
        np.testing.assert_allclose(mags, mags[0], rtol=1e-14)

    def test_ground_density_gaussian(self, electron_frame):
        qn = QuantumNumbers(0, 1e8)
        c = coriolis_radius(electron_frame)
        xc = guiding_center(electron_frame, qn.k_y)
        x = xc + np.linspace(-4, 4, 33) * c
        dens = np.abs(eigenfunction(electron_frame, qn, x, 0.0)) ** 2
        np.testing.assert_allclose(dens / dens[16], np.exp(-((x - xc) ** 2) / c**2), rtol=1e-12)

    def _moments(self, params, qn, n_samples=40001):
        c = coriolis_radius(params)
        xc = guiding_center(params, qn.k_y)
        half = math.sqrt(2 * qn.n + 1) + 12
        u = np.linspace(-half, half, n_samples)
        x = xc + u * c
        dens = np.abs(eigenfunction(params, qn, x, 0.3e-6)) ** 2
        norm = trapezoid(dens, x)
        # mean measured as an offset from xc in units of C to keep quadrature well conditioned
        mean_u = trapezoid(u * dens, x) / norm
        var_u = trapezoid((u - mean_u) ** 2 * dens, x) / norm
        return norm, mean_u, var_u

    def test_normalised_per_unit_y(self, electron_frame):
        norm, _, _ = self._moments(electron_frame, QuantumNumbers(4, -3e8))
        assert abs(norm - 1) < 1e-10

    def test_ground_density_width(self, electron_frame):
        _, _, var_u = self._moments(electron_frame, QuantumNumbers(0, 0.0))
        assert math.isclose(math.sqrt(var_u), 1 / math.sqrt(2), rel_tol=1e-6)

    @settings(max_examples=25, deadline=None)
    @given(
        st.integers(0, 10),
        st.floats(-1e9, 1e9),
        st.floats(1e-31, 1e-26),
        st.floats(1e8, 1e13),
    )
    def test_mean_position_is_guiding_center(self, n, k_y, m, omega):
        params = FrameParams(m, omega)
        _, mean_u, _ = self._moments(params, QuantumNumbers(n, k_y), n_samples=8001)
        assert abs(mean_u) < 1e-6
