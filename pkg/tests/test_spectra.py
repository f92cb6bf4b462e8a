import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck.clifford import lower, upper


def test_sign_operator_of_free_plane_wave():
    H = hm.build_free(3.0, lat.PlaneWave((0, 0, 4)))
    lam = sp.sign_operator(H)
    assert np.allclose(lam, H / 5.0)
    assert np.allclose(lam @ lam, np.eye(4))


def test_zero_mode_rejected():
    H = np.diag([1.0, -1.0, 0.0, 2.0])
    with pytest.raises(sp.ZeroModeError):
        sp.sign_operator(H)
    with pytest.raises(sp.ZeroModeError):
        sp.eigensolve(H)


def test_matrix_functions():
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    root = sp.sqrt_operator(A)
    assert np.allclose(root @ root, A)
    assert np.allclose(sp.inverse_sqrt_operator(A) @ root, np.eye(2))
    assert np.allclose(sp.hermitian_inverse(A) @ A, np.eye(2))
    assert sp.spectral_norm(A) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        sp.sqrt_operator(-A)
    with pytest.raises(sp.ZeroModeError):
        sp.hermitian_inverse(np.diag([1.0, 0.0]))


def test_energy_operator_squares_to_h2():
    spec = lat.LatticeSpec(1, 8, 3.0)
    H = hm.build_free(1.0, spec)
    E = sp.energy_operator(H)
    assert np.allclose(E @ E, H @ H)


def test_eigensolve_is_orthonormal_and_balanced(electric_case):
    sols = sp.eigensolve(electric_case.hamiltonian)
    v = np.column_stack([s.state for s in sols])
    assert np.allclose(v.conj().T @ v, np.eye(len(sols)), atol=1e-12)
    branches = [s.branch for s in sols]
    assert branches.count(sp.POSITIVE) == branches.count(sp.NEGATIVE) == len(sols) // 2
    assert all(np.diff([s.energy for s in sols]) >= 0)


def test_eigensolve_gauge_is_deterministic():
    spec = lat.LatticeSpec(1, 8, 2 * np.pi)
    H = hm.build_free(1.0, spec)
    a = sp.eigensolve(H)
    b = sp.eigensolve(H.copy())
    for x, y in zip(a, b):
        assert np.array_equal(x.state, y.state)
        k = np.argmax(np.abs(x.state) >= np.abs(x.state).max() * (1 - 1e-9))
        assert abs(x.state[k].imag) < 1e-15 and x.state[k].real > 0


def test_sample_states():
    sols = sp.eigensolve(hm.build_free(1.0, lat.LatticeSpec(1, 8, 2 * np.pi)))
    picked = sp.sample_states(sols, 3)
    assert len(picked) == 6
    assert min(abs(s.energy) for s in picked) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 5), st.lists(st.floats(-10, 10), min_size=3, max_size=3),
       st.sampled_from([sp.POSITIVE, sp.NEGATIVE]), st.integers(1, 2))
def test_plane_wave_solutions_are_eigenstates(m, p, branch, s):
    H = hm.build_free(m, lat.PlaneWave(p))
    sol = sp.plane_wave_solution(p, m, sp.pauli_spinor(s), branch)
    assert np.linalg.norm(sol.state) == pytest.approx(1.0)
    assert np.allclose(H @ sol.state, sol.energy * sol.state, atol=1e-11)


def test_pauli_spinor_labels():
    with pytest.raises(ValueError):
        sp.pauli_spinor(3)


def test_two_component_electric(electric_case):
    sols = sp.sample_states(sp.eigensolve(electric_case.hamiltonian), 4)
    assert max(sp.two_component_residuals(sols, electric_case)) < 1e-9


def test_two_component_rejects_gravity():
    spec = lat.LatticeSpec(1, 4, 1.0)
    case = hm.HamiltonianCase("gravity", 1.0, spec, fields={"V": np.ones(4), "W": np.ones(4)})
    with pytest.raises(hm.ConfigurationError):
        sp.two_component_residuals([], case)


def test_gravity_reconstruction_free_limit():
    # with V = W = 1 the formula reduces to sigma.p / 2m
    spec = lat.LatticeSpec(1, 16, 400.0)
    case = hm.HamiltonianCase("gravity", 1.0, spec, fields={"V": np.ones(16), "W": np.ones(16)})
    sol = [s for s in sp.eigensolve(case.hamiltonian) if s.branch == sp.POSITIVE][2]
    chi = sp.gravity_lower_from_upper(upper(sol.state), case)
    p = 2 * np.pi / 400.0
    assert np.linalg.norm(chi - lower(sol.state)) < (p ** 3) * np.linalg.norm(upper(sol.state))


def test_fw_component_and_complement():
    v = np.arange(8.0)
    assert np.array_equal(sp.fw_component(v, sp.POSITIVE), v[:4])
    assert np.array_equal(sp.fw_complement(v, sp.POSITIVE), v[4:])
    assert np.array_equal(sp.fw_component(v, sp.NEGATIVE), v[4:])


def test_reference_phi_free_plane_wave():
    H = hm.build_free(3.0, lat.PlaneWave((0, 0, 4)))
    phi0 = np.array([1, 1]) / np.sqrt(2)
    sol = sp.plane_wave_solution((0, 0, 4), 3.0, phi0)
    assert np.allclose(sp.reference_phi(sol, H), phi0)
