import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck import transforms as tf
from fwcheck.clifford import BETA, block_split, lift, lower, off_diagonal_norm
from fwcheck.verify import necessary_residual

PW = lat.PlaneWave((0, 0, 4))


def free_pw(m=3.0, p=(0, 0, 4)):
    return hm.build_free(m, lat.PlaneWave(p))


def test_free_fw_at_rest_is_identity():
    assert np.allclose(tf.u_free_fw(2.0, lat.PlaneWave((0, 0, 0))).matrix, np.eye(4))


def test_free_fw_diagonalizes_plane_wave():
    U = tf.u_free_fw(3.0, PW)
    assert np.allclose(U.conjugate(free_pw()), 5 * BETA, atol=1e-13)
    assert U.unitarity_defect < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 5), st.lists(st.floats(-6, 6), min_size=3, max_size=3))
def test_free_fw_equals_eriksen(m, p):
    H = free_pw(m, p)
    assert np.abs(tf.u_free_fw(m, lat.PlaneWave(p)).matrix - tf.u_eriksen(H).matrix).max() < 1e-12


def test_eriksen_factor_orders_agree(electric_case):
    H = electric_case.hamiltonian
    a = tf.u_eriksen(H).matrix
    b = tf.u_eriksen(H, factor_order="norm_first").matrix
    assert np.abs(a - b).max() < 1e-12
    with pytest.raises(ValueError):
        tf.u_eriksen(H, factor_order="sideways")


def test_eriksen_block_diagonalizes(electric_case, susy_case):
    for case in (electric_case, susy_case):
        assert necessary_residual(tf.u_eriksen(case.hamiltonian), case.hamiltonian) < 1e-10


def test_eriksen_kolsrud_free_plane_wave():
    H = free_pw()
    U = tf.u_eriksen_kolsrud(H)
    assert off_diagonal_norm(U.conjugate(H)) < 1e-10 * np.linalg.norm(H)
    assert U.unitarity_defect < 1e-11
    # upper block acting on an upper-only FW spinor: sqrt(8/10) (I + i sigma3 / 2)
    state = sp.plane_wave_solution((0, 0, 4), 3.0, np.array([1.0, 0.0])).state
    U0 = tf.u_free_fw(3.0, PW).matrix
    factor = U.matrix @ U0.conj().T
    assert np.allclose(block_split(factor).upper_upper, np.sqrt(0.8) * np.diag([1 + 0.5j, 1 - 0.5j]))
    assert np.allclose(lower(U.apply(state)), 0, atol=1e-12)


def test_eriksen_kolsrud_rejects_electric(electric_case):
    with pytest.raises(hm.ConfigurationError, match="J, H"):
        tf.u_eriksen_kolsrud(electric_case.hamiltonian)


def test_corrector_properties():
    assert np.allclose(tf.ek_to_fw_corrector(2.0, lat.PlaneWave((0, 0, 0))).matrix, np.eye(4))
    C = tf.ek_to_fw_corrector(3.0, PW).matrix
    bE = 5 * BETA
    assert np.abs(C @ bE - bE @ C).max() < 1e-12
    composed = tf.ek_to_fw_corrector(3.0, PW).compose(tf.u_eriksen_kolsrud(free_pw()))
    assert np.abs(composed.matrix - tf.u_free_fw(3.0, PW).matrix).max() < 1e-12
    assert composed.metadata == {"first": "eriksen_kolsrud", "then": "ek_corrector"}


def test_chiral_involution():
    J = tf.chiral_involution(2)
    beta = lift(BETA, 2)
    assert np.allclose(J, J.conj().T) and np.allclose(J @ J, np.eye(8))
    assert np.allclose(J @ beta + beta @ J, 0)


def test_su2_plus_closed_form(susy_case):
    H, pair = susy_case.hamiltonian, susy_case.susy_pair
    U = tf.u_su2(H, pair, 1.0, "+")
    closed = tf.case_closed_form(H)
    assert np.abs(U.matrix - closed.matrix).max() < 1e-11
    w = np.linalg.eigvalsh(pair.anticommutator)
    target = np.sqrt(np.clip(w, 0, None) + 1.0)
    s = block_split(U.conjugate(H))
    assert off_diagonal_norm(U.conjugate(H)) < 1e-10 * np.linalg.norm(H)
    upper_upper = np.linalg.eigvalsh(s.upper_upper)
    lower_lower = np.linalg.eigvalsh(s.lower_lower)
    got = np.sort(np.concatenate([upper_upper, -lower_lower]))
    assert np.abs(got - np.sort(target)).max() < 1e-10


def test_su2_minus_block_diagonal_and_unitary(susy_case):
    H, pair = susy_case.hamiltonian, susy_case.susy_pair
    U = tf.u_su2(H, pair, 1.0, "-")
    assert U.unitarity_defect < 1e-11
    assert off_diagonal_norm(U.conjugate(H)) < 1e-10 * np.linalg.norm(H)


def test_su2_minus_literal_plane_wave_lower_is_p_over_e():
    H, pair = hm.build_susy(3.0, PW)
    U = tf.u_su2(H, pair, 3.0, "-", keep_angle=True)
    sol = sp.plane_wave_solution((0, 0, 4), 3.0, np.array([1.0, 0.0]))
    assert np.linalg.norm(lower(U.apply(sol.state))) == pytest.approx(0.8, abs=1e-12)


def test_su2_sign_validation():
    H, pair = hm.build_susy(1.0, PW)
    with pytest.raises(ValueError):
        tf.u_su2(H, pair, 1.0, "*")


def test_closed_form_magnetic_equals_eriksen(magnetic_case):
    H = magnetic_case.hamiltonian
    assert np.abs(tf.case_closed_form(H).matrix - tf.u_eriksen(H).matrix).max() < 1e-10


def test_closed_form_rejects_electric(electric_case):
    with pytest.raises(hm.ConfigurationError):
        tf.case_closed_form(electric_case.hamiltonian)


def test_electric_series_free_limit():
    spec = lat.LatticeSpec(1, 16, 200.0)
    U, terms = tf.u_perturbative_electric(2.0, 0.0, np.cos(2 * np.pi * spec.positions[:, 0] / 200), spec)
    free_terms = terms["identity"] + terms["odd_kinetic"] + terms["normalization"]
    assert np.array_equal(U.matrix, terms.total())
    assert np.allclose(U.matrix, free_terms)
    assert U.metadata["order_in_charge"] == 1


def test_electric_series_hamiltonian():
    spec = lat.LatticeSpec(1, 16, 40.0)
    A0 = np.cos(2 * np.pi * spec.positions[:, 0] / 40)
    H0, _ = tf.h_fw_perturbative_electric(2.0, 0.0, A0, spec)
    p2 = lat.momentum_squared(spec)
    beta = lift(BETA, 16)
    from fwcheck.clifford import on_sites
    assert np.allclose(H0, 2.0 * beta + beta @ on_sites(p2) / 4.0)
    _, terms = tf.h_fw_perturbative_electric(2.0, 0.3, A0, spec)
    c = terms["darwin_spin_orbit"]
    assert np.allclose(c, c.conj().T)
    assert off_diagonal_norm(terms.total()) < 1e-14


def test_electric_series_unitarity_defect_slope():
    # defect ~ (p_max/m)^4 at e = 0; cutoff shrinks as the box grows
    m, pmax, defects = 2.0, [], []
    for L in (40.0, 80.0, 160.0, 320.0):
        spec = lat.LatticeSpec(1, 16, L)
        U, _ = tf.u_perturbative_electric(m, 0.0, np.zeros(16), spec)
        pmax.append(np.abs(spec.momenta).max() / m)
        defects.append(U.unitarity_defect)
    slope = np.polyfit(np.log(pmax), np.log(defects), 1)[0]
    assert defects[0] < 1e-2
    assert slope >= 3


def test_gravity_series_free_limit():
    spec = lat.LatticeSpec(1, 8, 200.0)
    ones = np.ones(8)
    U, _ = tf.u_perturbative_gravity(1.0, ones, ones, spec)
    Ue, _ = tf.u_perturbative_electric(1.0, 0.0, np.zeros(8), spec)
    assert np.allclose(U.matrix, Ue.matrix)
    H, _ = tf.h_fw_perturbative_gravity(1.0, ones, ones, spec)
    He, _ = tf.h_fw_perturbative_electric(1.0, 0.0, np.zeros(8), spec)
    assert np.allclose(H, He)


def test_gravity_series_hermitian_and_even():
    spec = lat.LatticeSpec(1, 16, 20.0)
    x = spec.positions[:, 0]
    V = 1 + 0.1 * np.cos(2 * np.pi * x / 20)
    W = 1 + 0.05 * np.sin(2 * np.pi * x / 20)
    H, _ = tf.h_fw_perturbative_gravity(1.0, V, W, spec)
    assert np.abs(H - H.conj().T).max() < 1e-12
    assert off_diagonal_norm(H) < 1e-14
    with pytest.raises(hm.ConfigurationError):
        tf.u_perturbative_gravity(1.0, -V, W, spec)


def test_gravity_linear_part_is_exact_slope():
    spec = lat.LatticeSpec(1, 8, 30.0)
    shape = np.cos(2 * np.pi * spec.positions[:, 0] / 30)
    ones = np.ones(8)
    lin = tf.gravity_linear_part(1.0, shape, np.zeros(8), spec)
    h = lambda lam: tf.h_fw_perturbative_gravity(1.0, 1 + lam * shape, ones, spec)[0]  # noqa: E731
    assert np.abs((h(1e-3) - h(0.0)) / 1e-3 - lin).max() < 1e-9


def test_ek_series_free_limit_matches_exact_to_first_order():
    spec = lat.LatticeSpec(1, 8, 400.0)
    ones = np.ones(8)
    U, _ = tf.u_ek_perturbative_gravity(1.0, ones, ones, spec)
    exact = tf.u_eriksen_kolsrud(hm.build_free(1.0, spec)).matrix
    pmax = np.abs(spec.momenta).max()
    assert np.abs(U.matrix - exact).max() < pmax ** 2


def test_finite_difference_derivative():
    f = lambda t: np.array([np.sin(t), np.exp(2 * t)])  # noqa: E731
    d, err = tf.finite_difference_derivative(f, 1e-2)
    assert np.allclose(d, [1.0, 2.0], atol=1e-8) and err < 1e-4
    d1, err1 = tf.finite_difference_derivative(f, 1e-2, richardson=False)
    assert np.isnan(err1) and np.abs(d1 - [1, 2]).max() > np.abs(d - [1, 2]).max()


def test_perturbative_terms_total():
    t = tf.PerturbativeTerms(a=np.eye(2), b=2 * np.eye(2))
    assert np.array_equal(t.total(), 3 * np.eye(2))
    assert np.array_equal(t["a"], np.eye(2))


def test_eriksen_transformed_plane_wave():
    assert np.allclose(tf.eriksen_transformed(free_pw()), 5 * BETA)

