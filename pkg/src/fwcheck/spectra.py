"""Eigendecomposition, the energy sign operator and two-component reductions.

Every matrix function here goes through a full Hermitian eigendecomposition.
Eigenvectors carry a deterministic gauge: inside a degenerate level the basis
diagonalizes the lifted ``Sigma_3`` when it commutes with ``H`` and is
otherwise built by Gram-Schmidt on the canonical basis vectors taken in
order; each vector is then rotated so its largest-magnitude entry is real and
positive.
"""

from dataclasses import dataclass

import numpy as np

from . import lattice as lat
from .clifford import SIGMA, SIGMA_0, block_split, lift, lower, pauli_on_sites, upper
from .hamiltonians import ConfigurationError, sigma_dot, site_momenta

POSITIVE = "positive"
NEGATIVE = "negative"

DEFAULT_ZERO_MODE_TOL = 1e-8
DEGENERACY_TOL = 1e-10


class ZeroModeError(ArithmeticError):
    """The Hamiltonian has an eigenvalue too close to zero for a sign function."""


def spectral_norm(H):
    return float(np.max(np.abs(np.linalg.eigvalsh(H))))


def hermitian_function(A, func):
    """``func(A)`` for a Hermitian matrix via its eigendecomposition."""
    w, v = np.linalg.eigh(A)
    return (v * func(w)) @ v.conj().T


def sqrt_operator(A, clip=0.0):
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = np.linalg.eigh(A)
    if w.min() < -clip * max(1.0, abs(w).max()) - 1e-12 * max(1.0, abs(w).max()):
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def inverse_sqrt_operator(A, tol=1e-12):
    w, v = np.linalg.eigh(A)
    if w.min() <= tol * max(1.0, abs(w).max()):
        raise ZeroModeError(f"matrix is singular or indefinite (min eigenvalue {w.min():.3e})")
    return (v / np.sqrt(w)) @ v.conj().T


def hermitian_inverse(A, tol=1e-12):
    w, v = np.linalg.eigh(A)
    if np.min(np.abs(w)) <= tol * max(1.0, abs(w).max()):
        raise ZeroModeError(f"matrix is singular (smallest |eigenvalue| {np.min(np.abs(w)):.3e})")
    return (v / w) @ v.conj().T


@dataclass(frozen=True)
class EigenSolution:
    """One Dirac eigenpair; ``state`` is a unit vector in the spinor-major basis."""

    energy: float
    state: np.ndarray
    branch: str

    @property
    def sign(self):
        return 1 if self.branch == POSITIVE else -1


def _check_gap(w, zero_mode_tol):
    scale = max(float(np.max(np.abs(w))), np.finfo(float).tiny)
    small = np.abs(w) < zero_mode_tol * scale
    if np.any(small):
        raise ZeroModeError(f"zero mode(s) at energies {w[small]} (tolerance {zero_mode_tol:g} * {scale:.4g})")


def _gauge_phase(vec):
    """Unit factor making the first (near-)largest entry of ``vec`` real positive."""
    mags = np.abs(vec)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    return np.conj(vec[k]) / mags[k]


def _fix_phase(vec):
    return vec * _gauge_phase(vec)


def _lexicographic_basis(v):
    """Orthonormal basis of span(v) from projected canonical vectors, in index order."""
    k = v.shape[1]
    rows = v.conj()  # row j holds the coordinates of the projection of e_j
    chosen = []
    for j in range(v.shape[0]):
        c = rows[j].copy()
        for b in chosen:
            c -= np.vdot(b, c) * b
        norm = np.linalg.norm(c)
        if norm > 1e-6:
            chosen.append(c / norm)
            if len(chosen) == k:
                break
    return v @ np.array(chosen).T


def _gauge_fix(H, w, v, degeneracy_tol):
    dim = H.shape[0]
    scale = max(float(np.max(np.abs(w))), 1.0)
    spin = lift(SIGMA[2], dim // 4)
    use_spin = np.linalg.norm(spin @ H - H @ spin) < 1e-12 * np.linalg.norm(H)
    v = v.copy()
    start = 0
    while start < dim:
        stop = start + 1
        while stop < dim and w[stop] - w[stop - 1] < degeneracy_tol * scale:
            stop += 1
        if stop - start > 1:
            block = v[:, start:stop]
            groups = [block]
            if use_spin:
                s_small = block.conj().T @ spin @ block
                sw, sv = np.linalg.eigh(0.5 * (s_small + s_small.conj().T))
                rotated = block @ sv
                groups, i = [], 0
                while i < len(sw):
                    j = i + 1
                    while j < len(sw) and sw[j] - sw[j - 1] < 1e-8:
                        j += 1
                    groups.append(rotated[:, i:j])
                    i = j
                groups = groups[::-1]  # spin up first
            fixed = [g if g.shape[1] == 1 else _lexicographic_basis(g) for g in groups]
            v[:, start:stop] = np.hstack(fixed)
        start = stop
    for k in range(dim):
        v[:, k] = _fix_phase(v[:, k])
    return v


def eigensystem(H, zero_mode_tol=DEFAULT_ZERO_MODE_TOL, degeneracy_tol=DEGENERACY_TOL):
    """Sorted energies and gauge-fixed eigenvectors (columns)."""
    w, v = np.linalg.eigh(H)
    if zero_mode_tol is not None:
        _check_gap(w, zero_mode_tol)
    return w, _gauge_fix(H, w, v, degeneracy_tol)


def eigensolve(H, zero_mode_tol=DEFAULT_ZERO_MODE_TOL, eig=None):
    """Complete orthonormal eigenbasis of ``H`` as a list sorted by energy.

    ``eig`` may carry the output of :func:`eigensystem` to avoid a second solve.
    """
    w, v = eigensystem(H, zero_mode_tol) if eig is None else eig
    return [EigenSolution(float(e), v[:, k], POSITIVE if e > 0 else NEGATIVE)
            for k, e in enumerate(w)]


def sample_states(solutions, per_branch=8):
    """The ``per_branch`` lowest-|energy| states of each branch, sorted by energy."""
    pos = [s for s in solutions if s.branch == POSITIVE][:per_branch]
    neg = [s for s in solutions if s.branch == NEGATIVE][::-1][:per_branch]
    return sorted(neg + pos, key=lambda s: s.energy)


def sign_operator(H, zero_mode_tol=DEFAULT_ZERO_MODE_TOL, eig=None):
    """``H / sqrt(H^2)``: +1 on positive-energy states, -1 on negative ones.

    ``eig`` may carry a precomputed ``(energies, eigenvectors)`` pair of ``H``.
    """
    w, v = np.linalg.eigh(H) if eig is None else eig
    _check_gap(w, zero_mode_tol)
    return (v * np.sign(w)) @ v.conj().T


def energy_operator(H):
    """``sqrt(H^2)``."""
    w, v = np.linalg.eigh(H)
    return (v * np.abs(w)) @ v.conj().T


# -- plane-wave spinors -------------------------------------------------------

def pauli_spinor(s):
    if s not in (1, 2):
        raise ValueError(f"spin label must be 1 or 2, got {s}")
    return np.eye(2, dtype=np.complex128)[s - 1]


def _sigma_dot_vector(p):
    from .clifford import PAULI
    p = np.asarray(p, dtype=float)
    return sum(p[i] * PAULI[i] for i in range(len(p)))


def free_dirac_spinor(p, m, spinor, branch=POSITIVE):
    """Dirac plane-wave spinor at momentum ``p`` built on a two-component ``spinor``.

    The positive branch is ``N (phi, sigma.p/(E+m) phi)``, the negative branch
    ``N (-sigma.p/(E+m) chi, chi)`` with ``N = sqrt((E+m)/2E)``; both are
    eigenvectors of ``alpha.p + beta m`` with energies ``+E`` and ``-E``.
    """
    p = np.asarray(p, dtype=float)
    E = float(np.sqrt(p @ p + m * m))
    norm = np.sqrt((E + m) / (2 * E))
    spinor = np.asarray(spinor, dtype=np.complex128)
    spinor = spinor / np.linalg.norm(spinor)
    sp = _sigma_dot_vector(p) @ spinor / (E + m)
    if branch == POSITIVE:
        return norm * np.concatenate([spinor, sp])
    return norm * np.concatenate([-sp, spinor])


def free_spinors(p, m, s, branch=POSITIVE):
    """``(dirac, fw)`` four-spinors for Pauli basis spinor ``s`` in {1, 2}.

    The FW spinor is ``U_s = (phi_s, 0)`` or ``V_s = (0, chi_s)``.
    """
    phi = pauli_spinor(s)
    zero = np.zeros(2, dtype=np.complex128)
    fw = np.concatenate([phi, zero]) if branch == POSITIVE else np.concatenate([zero, phi])
    return free_dirac_spinor(p, m, phi, branch), fw


def plane_wave_solution(p, m, spinor, branch=POSITIVE):
    """:class:`EigenSolution` of the single-mode free Hamiltonian."""
    p = np.asarray(p, dtype=float)
    E = float(np.sqrt(p @ p + m * m))
    state = free_dirac_spinor(p, m, spinor, branch)
    return EigenSolution(E if branch == POSITIVE else -E, state, branch)


# -- two-component reductions ---------------------------------------------------

def two_component_residuals(solutions, case, H=None):
    """Residuals of the reduced two-component equation for several eigenstates.

    For the positive branch ``phi = upper(psi)`` must satisfy
    ``[eps - H_uu - H_ul (eps - H_ll)^-1 H_lu] phi = 0``; the negative branch
    uses the mirrored equation on ``chi = lower(psi)``.  The blocks are those of
    the case's Hamiltonian (``H_uu = m + e A0``, ``H_ul = sigma . pi``, ...).
    Each entry is ``|residual| / |component|``.  The diagonal block is
    diagonalized once per branch, so the whole spectrum costs two solves.
    """
    if case.kind not in ("free", "electric", "magnetic"):
        raise ConfigurationError(f"two-component reduction needs an electric or magnetic case, got {case.kind}")
    H = case.hamiltonian if H is None else H
    blocks = block_split(H)
    pos = (blocks.upper_upper, blocks.upper_lower, blocks.lower_upper, blocks.lower_lower)
    neg = (blocks.lower_lower, blocks.lower_upper, blocks.upper_lower, blocks.upper_upper)
    eig = {}
    out = []
    for sol in solutions:
        a, b, c, d = pos if sol.branch == POSITIVE else neg
        if sol.branch not in eig:
            eig[sol.branch] = np.linalg.eigh(0.5 * (d + d.conj().T))
        w, v = eig[sol.branch]
        gap = sol.energy - w
        scale = max(1.0, float(np.max(np.abs(w))), abs(sol.energy))
        if np.min(np.abs(gap)) <= 1e-10 * scale:
            raise ZeroModeError(f"singular reduced operator at energy {sol.energy}")
        comp = upper(sol.state) if sol.branch == POSITIVE else lower(sol.state)
        inv_c = v @ ((v.conj().T @ (c @ comp)) / gap)
        residual = sol.energy * comp - a @ comp - b @ inv_c
        out.append(float(np.linalg.norm(residual) / max(np.linalg.norm(comp), np.finfo(float).tiny)))
    return out


def two_component_residual(sol, case, H=None):
    """Residual of the reduced two-component equation for one eigenstate."""
    return two_component_residuals([sol], case, H)[0]


def gravity_lower_from_upper(component, case, branch=POSITIVE, order=1):
    """Approximate small component of a gravity-case eigenstate.

    Positive branch: ``chi = (sigma.p/2m + {F - V, sigma.p}/4m) phi``.  Negative
    branch: ``phi = -(same operator) chi``.  ``order=0`` keeps only the free
    ``sigma.p/2m`` term.
    """
    if case.kind != "gravity":
        raise ConfigurationError("gravity_lower_from_upper needs a gravity case")
    m, spec = case.m, case.spec
    sp = sigma_dot(site_momenta(spec))
    op = sp / (2 * m)
    if order >= 1:
        V = np.asarray(getattr(case.fields["V"], "values", case.fields["V"]), dtype=float).reshape(-1)
        W = np.asarray(getattr(case.fields["W"], "values", case.fields["W"]), dtype=float).reshape(-1)
        g = pauli_on_sites(lat.site_galerkin_multiplier(V / W - V, spec), SIGMA_0)
        op = op + (g @ sp + sp @ g) / (4 * m)
    out = op @ np.asarray(component)
    return out if branch == POSITIVE else -out


# -- Eriksen reference -----------------------------------------------------------

def fw_component(vector, branch):
    """The half of a bispinor that survives in the FW picture for ``branch``."""
    return upper(vector) if branch == POSITIVE else lower(vector)


def fw_complement(vector, branch):
    """The half that must vanish in the FW picture for ``branch``."""
    return lower(vector) if branch == POSITIVE else upper(vector)


def reference_gauge(sol, H, eriksen=None):
    """Return ``(phi, phase)`` for the Eriksen image of ``sol``.

    ``phi`` is the surviving half of ``U_Er psi`` (upper for positive energy,
    lower for negative), normalized, with its largest-magnitude sample real and
    positive.  ``phase`` is the unit factor that achieves this; multiplying
    ``psi`` by it puts the eigenvector in the gauge used for wave-function
    comparisons.
    """
    if eriksen is None:
        from .transforms import u_eriksen
        eriksen = u_eriksen(H)
    matrix = getattr(eriksen, "matrix", eriksen)
    comp = fw_component(matrix @ sol.state, sol.branch)
    norm = np.linalg.norm(comp)
    if norm == 0:
        raise ZeroModeError("Eriksen image has no surviving component")
    phase = _gauge_phase(comp)
    return comp * (phase / norm), complex(phase)


def reference_phi(sol, H, eriksen=None):
    """Normalized two-component FW wave function of ``sol`` (Eriksen image)."""
    return reference_gauge(sol, H, eriksen)[0]
