"""Dirac Hamiltonians for the five static-field cases.

All builders return dense ``4n x 4n`` matrices in the spinor-major ordering of
:mod:`fwcheck.clifford`.  Position-dependent fields enter through Galerkin
multipliers so that ``[p, f] = -i grad f`` holds exactly on the lattice.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import lattice as lat
from .clifford import ALPHA, BETA, PAULI, SIGMA_0, lift, on_sites, pauli_on_sites


class ConfigurationError(ValueError):
    """Inputs that violate a builder's preconditions."""


KINDS = ("free", "magnetic", "electric", "susy", "gravity")


def _check_mass(m):
    if not m > 0:
        raise ConfigurationError(f"mass must be positive, got {m}")


def _field_values(field_, spec):
    if field_ is None:
        return None
    if isinstance(field_, (lat.ScalarField, lat.VectorField)):
        return field_.values
    return np.asarray(field_, dtype=float)


def _site_multiplier(values, spec):
    return lat.site_galerkin_multiplier(values, spec)


def site_momenta(spec):
    return [lat.site_momentum(spec, a) for a in range(spec.dim)]


def alpha_dot(site_ops):
    """``sum_i alpha_i (x) op_i`` for a list of site operators (one per axis)."""
    return sum(on_sites(op, ALPHA[i]) for i, op in enumerate(site_ops))


def sigma_dot(site_ops):
    """``sum_i sigma_i (x) op_i`` in the two-component space."""
    return sum(pauli_on_sites(op, PAULI[i]) for i, op in enumerate(site_ops))


def mass_term(m, spec):
    return m * lift(BETA, spec.n_sites)


def build_free(m, spec):
    """``alpha . p + beta m``."""
    _check_mass(m)
    return alpha_dot(site_momenta(spec)) + mass_term(m, spec)


def magnetic_field(A, spec):
    """Spectral curl of a periodic vector potential.

    Returns ``B_z`` samples for a 2-D lattice, an ``(n, 3)`` array in 3-D and
    zeros in 1-D (no curl exists there).
    """
    A = _field_values(A, spec).reshape(spec.n_sites, spec.dim)
    if spec.dim == 1:
        return np.zeros(spec.n_sites)
    grads = [lat.spectral_gradient(A[:, i], spec) for i in range(spec.dim)]
    if spec.dim == 2:
        return grads[1][:, 0] - grads[0][:, 1]
    return np.stack([grads[2][:, 1] - grads[1][:, 2],
                     grads[0][:, 2] - grads[2][:, 0],
                     grads[1][:, 0] - grads[0][:, 1]], axis=-1)


def kinetic_momenta(e, A, spec):
    """Site operators ``pi_i = p_i - e A_i`` for each lattice axis."""
    A = _field_values(A, spec).reshape(spec.n_sites, spec.dim)
    return [p - e * _site_multiplier(A[:, i], spec) for i, p in enumerate(site_momenta(spec))]


def build_magnetic(m, e, A, spec):
    """``alpha . (p - e A) + beta m`` for a periodic vector potential ``A``."""
    _check_mass(m)
    return alpha_dot(kinetic_momenta(e, A, spec)) + mass_term(m, spec)


def build_electric(m, e, A0, spec):
    """``alpha . p + beta m + e A0``."""
    _check_mass(m)
    A0 = _field_values(A0, spec)
    return build_free(m, spec) + e * on_sites(_site_multiplier(A0, spec))


@dataclass(frozen=True)
class SusyPair:
    """Nilpotent odd operators ``Q`` (lower-left ``M``) and ``Q^dagger``."""

    Q: np.ndarray
    Qdag: np.ndarray

    @property
    def anticommutator(self):
        return self.Q @ self.Qdag + self.Qdag @ self.Q

    @property
    def odd(self):
        return self.Q + self.Qdag


def susy_block(spec, A=None, E=None, A5=None, E5=None):
    """Return ``M = sigma.(p + C) - i C5`` and its adjoint with ``C = A - iE``.

    ``A`` and ``E`` are vector fields (one component per lattice axis); ``A5``
    and ``E5`` are scalars.  Missing fields are zero.
    """
    n = spec.n_sites
    zero_vec = np.zeros((n, spec.dim))
    A = zero_vec if A is None else _field_values(A, spec).reshape(n, spec.dim)
    E = zero_vec if E is None else _field_values(E, spec).reshape(n, spec.dim)
    forward, backward = [], []
    for i, p in enumerate(site_momenta(spec)):
        a_op = _site_multiplier(A[:, i], spec) if np.any(A[:, i]) else 0.0
        e_op = _site_multiplier(E[:, i], spec) if np.any(E[:, i]) else 0.0
        forward.append(p + a_op - 1j * e_op)
        backward.append(p + a_op + 1j * e_op)
    M = sigma_dot(forward)
    Mdag = sigma_dot(backward)
    c5 = 0.0
    c5_dag = 0.0
    for values, factor in ((A5, 1.0), (E5, -1j)):
        if values is not None and np.any(_field_values(values, spec)):
            op = _site_multiplier(_field_values(values, spec), spec)
            c5 = c5 + factor * op
            c5_dag = c5_dag + np.conj(factor) * op
    if not np.isscalar(c5):
        M = M - 1j * pauli_on_sites(c5, SIGMA_0)
        Mdag = Mdag + 1j * pauli_on_sites(c5_dag, SIGMA_0)
    return M, Mdag


def build_susy(m, spec, A=None, E=None, A5=None, E5=None):
    """``Q + Q^dagger + beta m`` with ``Q`` carrying ``M`` in its lower-left block.

    Returns the Hamiltonian and the :class:`SusyPair`.
    """
    _check_mass(m)
    M, Mdag = susy_block(spec, A, E, A5, E5)
    zero = np.zeros_like(M)
    Q = np.block([[zero, zero], [M, zero]])
    Qdag = np.block([[zero, Mdag], [zero, zero]])
    return Q + Qdag + mass_term(m, spec), SusyPair(Q, Qdag)


def oscillator_surrogate(spec, frequency=1.0):
    """Periodic stand-in for the Dirac-oscillator field ``E = omega x``.

    ``omega (L / 2 pi) sin(2 pi (x - L/2) / L)`` per axis: odd about the box
    centre, linear there, and band-limited to the first harmonic.
    """
    L = spec.box_length
    x = spec.positions - L / 2
    return frequency * L / (2 * np.pi) * np.sin(2 * np.pi * x / L)


def build_gravity(m, V, W, spec):
    """``beta m V + 1/2 {alpha . p, V/W}`` for static metric functions ``V, W > 0``."""
    _check_mass(m)
    V = _field_values(V, spec).reshape(-1)
    W = _field_values(W, spec).reshape(-1)
    if np.any(V <= 0) or np.any(W <= 0):
        raise ConfigurationError("metric functions V and W must be positive everywhere")
    F = V / W
    alpha_p = alpha_dot(site_momenta(spec))
    if np.all(V == 1.0) and np.all(F == 1.0):
        return alpha_p + mass_term(m, spec)
    mass = m * on_sites(_site_multiplier(V, spec), BETA)
    f_op = on_sites(_site_multiplier(F, spec))
    return mass + lat.symmetrized_product(f_op, alpha_p)


@dataclass(frozen=True)
class HamiltonianCase:
    """A Dirac problem: the interaction kind, its parameters and fields.

    ``fields`` keys by kind: magnetic ``A`` (vector); electric ``A0``; susy
    ``A``, ``E`` (vectors), ``A5``, ``E5``; gravity ``V``, ``W``.
    """

    kind: str
    m: float
    spec: object
    e: float = 0.0
    fields: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown case kind {self.kind!r}; expected one of {KINDS}")
        _check_mass(self.m)
        required = {"magnetic": ("A",), "electric": ("A0",), "gravity": ("V", "W")}
        missing = [k for k in required.get(self.kind, ()) if k not in self.fields]
        if missing:
            raise ConfigurationError(f"{self.kind} case is missing fields {missing}")

    @cached_property
    def hamiltonian(self):
        return self._build()[0]

    @cached_property
    def susy_pair(self):
        if self.kind != "susy":
            raise ConfigurationError("only susy cases carry a SusyPair")
        return self._build()[1]

    def _build(self):
        f = self.fields
        if self.kind == "free":
            return build_free(self.m, self.spec), None
        if self.kind == "magnetic":
            return build_magnetic(self.m, self.e, f["A"], self.spec), None
        if self.kind == "electric":
            return build_electric(self.m, self.e, f["A0"], self.spec), None
        if self.kind == "susy":
            return build_susy(self.m, self.spec, f.get("A"), f.get("E"), f.get("A5"), f.get("E5"))
        return build_gravity(self.m, f["V"], f["W"], self.spec), None

    def potential_site_operator(self):
        """``e A0`` as an n x n site operator (zero for non-electric kinds)."""
        if self.kind != "electric":
            return np.zeros((self.spec.n_sites,) * 2, dtype=np.complex128)
        return self.e * _site_multiplier(_field_values(self.fields["A0"], self.spec), self.spec)


def is_hermitian(H, rtol=1e-13):
    return np.linalg.norm(H - H.conj().T) <= rtol * np.linalg.norm(H)


__all__ = [
    "ConfigurationError", "HamiltonianCase", "SusyPair", "build_free", "build_magnetic",
    "build_electric", "build_susy", "build_gravity", "magnetic_field", "kinetic_momenta",
    "oscillator_surrogate", "susy_block", "alpha_dot", "sigma_dot",
]
