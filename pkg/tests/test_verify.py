import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck import transforms as tf
from fwcheck import verify as vf
from fwcheck.clifford import BETA, lift

M, P = 3.0, (0.0, 0.0, 4.0)
PW = lat.PlaneWave(P)


def test_tolerance_defaults_and_overrides():
    tol = vf.Tolerances()
    assert tol.as_dict() == {"block_tol": 1e-10, "lower_tol": 1e-10, "match_tol": 1e-10,
                             "unitarity_tol": 1e-11, "norm_tol": 1e-12}
    assert tol.with_overrides(match_tol=1e-3).match_tol == 1e-3
    with pytest.raises(ValueError, match="unknown"):
        tol.with_overrides(speed=1)
    for bad in (-1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            vf.Tolerances(block_tol=bad)


def test_necessary_residual_examples():
    H = hm.build_free(M, PW)
    assert vf.necessary_residual(tf.u_free_fw(M, PW), H) < 1e-12
    alpha_p = H - M * BETA
    assert vf.necessary_residual(np.eye(4), H) == pytest.approx(np.linalg.norm(alpha_p) / np.linalg.norm(H))
    assert vf.necessary_residual(tf.u_eriksen_kolsrud(H), H) < 1e-10
    with pytest.raises(ValueError, match="size"):
        vf.necessary_residual(np.eye(8), H)


def test_sufficiency_examples():
    H = hm.build_free(M, PW)
    sol = sp.plane_wave_solution(P, M, np.array([1.0, 0.0]))
    r = vf.sufficiency_residual(tf.u_free_fw(M, PW), sol, H)
    assert r.lower < 1e-12 and r.match < 1e-12
    sol = sp.plane_wave_solution(P, M, np.array([1.0, 1.0]) / np.sqrt(2))
    r = vf.sufficiency_residual(tf.u_eriksen_kolsrud(H), sol, H)
    assert r.lower < 1e-12
    assert r.fidelity == pytest.approx(0.894427191, abs=1e-6)
    assert r.match == pytest.approx(0.4595058, abs=1e-6)
    Hs, pair = hm.build_susy(M, PW)
    r = vf.sufficiency_residual(tf.u_su2(Hs, pair, M, "-", keep_angle=True), sol, Hs)
    assert r.lower == pytest.approx(0.8, abs=1e-12)


def test_sufficiency_negative_branch_is_mirrored():
    H = hm.build_free(M, PW)
    sol = sp.plane_wave_solution(P, M, np.array([0.0, 1.0]), sp.NEGATIVE)
    r = vf.sufficiency_residual(tf.u_free_fw(M, PW), sol, H)
    assert r.branch == sp.NEGATIVE and r.epsilon == pytest.approx(-5.0)
    assert r.lower < 1e-12 and r.match < 1e-12


def test_global_phase_does_not_change_residuals():
    H = hm.build_free(M, PW)
    sol = sp.plane_wave_solution(P, M, np.array([1.0, 1.0]))
    turned = sp.EigenSolution(sol.energy, np.exp(0.7j) * sol.state, sol.branch)
    U = tf.u_eriksen_kolsrud(H)
    a, b = vf.sufficiency_residual(U, sol, H), vf.sufficiency_residual(U, turned, H)
    assert a.match == pytest.approx(b.match, abs=1e-12)


def test_spinor_relations_rest_frame_exact():
    out = vf.spinor_relations_check([((0, 0, 0), 1.0)])
    assert out["max"] == 0.0
    _, fw = sp.free_spinors((0, 0, 0), 1.0, 1)
    assert np.array_equal(fw, [1, 0, 0, 0])


def test_completeness_sum_is_projector():
    u = np.column_stack([sp.free_spinors((1, 2, 3), 1.5, s)[1] for s in (1, 2)])
    assert np.allclose(np.linalg.eigvalsh(u @ u.conj().T), [0, 0, 1, 1])


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 5), st.lists(st.floats(-10, 10), min_size=3, max_size=3))
def test_spinor_relations_property(m, p):
    assert vf.spinor_relations_check([(p, m)])["max"] < 1e-12


def test_observables_on_plane_wave():
    case = hm.HamiltonianCase("free", M, PW)
    v = vf.observable_fw("velocity", case, axis=2)
    assert v[0, 0] == pytest.approx(0.8)
    pol = vf.observable_fw("polarization", spec=PW, axis=2)
    up = np.array([1, 0, 0, 0])
    down_neg = np.array([0, 0, 1, 0])
    assert np.vdot(up, pol @ up).real == 1.0
    assert np.vdot(down_neg, pol @ down_neg).real == -1.0
    with pytest.raises(ValueError):
        vf.observable_fw("spin")
    with pytest.raises(ValueError):
        vf.observable_fw("velocity", hm.HamiltonianCase("susy", 1.0, PW))


def test_fw_expectation_beta_free():
    H = hm.build_free(M, PW)
    sol = sp.plane_wave_solution(P, M, np.array([1.0, 0.0]))
    out = vf.fw_expectation(lift(BETA, 1), sol, H)
    assert out["full"] == pytest.approx(1.0) and out["shortcut"] == pytest.approx(1.0)


def test_fw_expectation_position_electric(electric_case):
    H = electric_case.hamiltonian
    x = vf.observable_fw("position", electric_case)
    U = tf.u_eriksen(H)
    for sol in sp.sample_states(sp.eigensolve(H), 3):
        out = vf.fw_expectation(x, sol, H, U)
        assert abs(out["full"] - out["shortcut"]) < 1e-10


def test_transform_operator():
    H = hm.build_free(M, PW)
    assert np.allclose(vf.transform_operator(tf.u_free_fw(M, PW), H), 5 * BETA)


def test_verdict_rule():
    tol = vf.Tolerances()
    ok = vf.StateResidual(1.0, "positive", 0.0, 0.0, 1.0)
    bad = vf.StateResidual(1.0, "positive", 0.0, 1e-9, 1.0)
    assert vf.verdict(1e-12, [ok], tol)
    assert not vf.verdict(1e-12, [ok, bad], tol)
    assert not vf.verdict(1e-9, [ok], tol)
    assert vf.verdict(0.0, [], tol)


def test_assemble_report_free():
    spec = lat.LatticeSpec(1, 16, 2 * np.pi)
    H = hm.build_free(1.0, spec)
    transforms = [("fw", tf.u_free_fw(1.0, spec)), ("eriksen", tf.u_eriksen(H)),
                  ("ek", tf.u_eriksen_kolsrud(H))]
    rep = vf.assemble_report({"name": "t"}, H, transforms)
    assert rep.by_kind("fw").is_fw and rep.by_kind("eriksen").is_fw
    ek = rep.by_kind("ek")
    assert not ek.is_fw and ek.necessary < 1e-10 and ek.max_match > 0.1
    assert len(ek.states) == 16
    data = json.loads(rep.to_json())
    assert list(data) == ["scenario", "tolerances", "per_transform"]
    assert list(data["per_transform"][0]) == ["kind", "necessary", "unitarity", "states", "is_fw"]
    assert list(data["per_transform"][0]["states"][0]) == ["epsilon", "branch", "lower", "match", "fidelity"]
    with pytest.raises(KeyError):
        rep.by_kind("nothing")


def test_assemble_report_tags_errors():
    H = hm.build_free(1.0, PW)
    with pytest.raises(ValueError, match="'broken'"):
        vf.assemble_report({}, H, [("broken", np.eye(8))])


def test_amplitude_shrink_is_continuous():
    # perturbative residuals approach the free values without jumps
    spec = lat.LatticeSpec(1, 16, 64 * np.pi)
    x = spec.positions[:, 0]
    shape = np.cos(2 * np.pi * x / spec.box_length)
    ones = np.ones(16)
    def residual(lam):
        case = hm.HamiltonianCase("gravity", 1.0, spec, fields={"V": 1 + lam * shape, "W": ones})
        H = case.hamiltonian
        sol = [s for s in sp.eigensolve(H) if s.branch == sp.POSITIVE][0]
        U = tf.u_perturbative_gravity(1.0, 1 + lam * shape, ones, spec)[0]
        r = vf.sufficiency_residual(U, sol, H)
        return np.array([r.lower, r.match])

    free = residual(0.0)
    steps = [np.abs(residual(lam) - free) for lam in (1e-2, 3e-3, 1e-3, 3e-4, 1e-4)]
    for a, b in zip(steps, steps[1:]):
        assert np.all(a / b < 10) and np.all(b / a < 10)
    assert np.all(steps[-1] < 1e-6)
