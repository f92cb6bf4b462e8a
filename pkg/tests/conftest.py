import numpy as np
import pytest

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat

# acceptance results: criterion -> list of (check, passed, detail)
CRITERIA = {}


def record(criterion, check, passed, detail=""):
    CRITERIA.setdefault(criterion, []).append((check, bool(passed), detail))
    status = "PASS" if passed else "FAIL"
    print(f"criterion {criterion} [{status}] {check}: {detail}")
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=int):
        checks = CRITERIA[key]
        ok = all(p for _, p, _ in checks)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}")
        for name, passed, detail in checks:
            terminalreporter.write_line(f"    [{'pass' if passed else 'FAIL'}] {name}: {detail}")


@pytest.fixture
def criterion():
    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def electric_case():
    spec = lat.LatticeSpec(1, 64, 20.0)
    A0 = np.cos(2 * np.pi * spec.positions[:, 0] / 20.0)
    return hm.HamiltonianCase("electric", 2.0, spec, e=0.05, fields={"A0": A0})


@pytest.fixture(scope="session")
def susy_case():
    spec = lat.LatticeSpec(1, 32, 4 * np.pi)
    return hm.HamiltonianCase("susy", 1.0, spec, fields={"E": hm.oscillator_surrogate(spec)})


@pytest.fixture(scope="session")
def magnetic_case():
    # one flux quantum per positive lobe of B = B0 sin(2 pi x / L)
    N, L, e, m = 16, 2 * np.pi, 1.0, 2.0
    spec = lat.LatticeSpec(2, N, L)
    B0 = 2 * np.pi ** 2 / (e * L * L)
    q = 2 * np.pi / L
    A = np.zeros((spec.n_sites, 2))
    A[:, 1] = -(B0 / q) * np.cos(q * spec.positions[:, 0])
    return hm.HamiltonianCase("magnetic", m, spec, e=e, fields={"A": A})
