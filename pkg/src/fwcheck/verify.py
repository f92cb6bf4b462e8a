"""Measurements of the two FW conditions, FW observables and the two-component
expectation-value shortcut.

The necessary condition is block-diagonality of ``U H U^dagger``.  The
sufficient condition compares the transformed eigenfunction with the Eriksen
image of the same state: the half that should vanish (``lower``), the
phase-sensitive distance of the surviving half from the reference (``match``)
and the phase-insensitive overlap (``fidelity``).
"""

import json
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import lattice as lat
from .clifford import BETA, POLARIZATION, block_split, lift, off_diagonal_norm, on_sites
from .spectra import (
    NEGATIVE,
    POSITIVE,
    eigensolve,
    free_spinors,
    fw_complement,
    fw_component,
    reference_gauge,
    sample_states,
)
from .transforms import finite_difference_derivative, u_eriksen, u_free_fw


@dataclass(frozen=True)
class Tolerances:
    """Pass thresholds for the verdict and for unitarity/normalization checks."""

    block_tol: float = 1e-10
    lower_tol: float = 1e-10
    match_tol: float = 1e-10
    unitarity_tol: float = 1e-11
    norm_tol: float = 1e-12

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise ValueError(f"tolerance {name} must be a finite non-negative number, got {value!r}")

    def with_overrides(self, **overrides):
        unknown = set(overrides) - set(asdict(self))
        if unknown:
            raise ValueError(f"unknown tolerance keys {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self):
        return asdict(self)


def _matrix(U):
    return getattr(U, "matrix", U)


def necessary_residual(U, H):
    """``|offdiag(U H U^dagger)|_F / |H|_F``."""
    U, H = _matrix(U), np.asarray(H)
    if U.shape != H.shape:
        raise ValueError(f"size mismatch: U is {U.shape}, H is {H.shape}")
    return off_diagonal_norm(U @ H @ U.conj().T) / np.linalg.norm(H)


def unitarity_residual(U):
    """Frobenius norm of ``U U^dagger - 1``; bounds the spectral-norm defect from above."""
    U = _matrix(U)
    return float(np.linalg.norm(U @ U.conj().T - np.eye(U.shape[0])))


@dataclass(frozen=True)
class StateResidual:
    epsilon: float
    branch: str
    lower: float
    match: float
    fidelity: float
    normalization: float = 0.0

    def as_dict(self):
        return {"epsilon": self.epsilon, "branch": self.branch, "lower": self.lower,
                "match": self.match, "fidelity": self.fidelity}


def sufficiency_residual(U, sol, H, eriksen=None):
    """Wave-function residuals of ``U`` on the exact eigenstate ``sol``.

    The eigenvector is first put in the reference gauge (see
    :func:`fwcheck.spectra.reference_gauge`), so ``match`` measures the
    difference of wave functions rather than rays.  For negative energy the
    roles of the upper and lower halves are swapped.
    """
    if eriksen is None:
        eriksen = u_eriksen(H)
    phi, phase = reference_gauge(sol, H, eriksen)
    image = _matrix(U) @ (phase * sol.state)
    keep = fw_component(image, sol.branch)
    drop = fw_complement(image, sol.branch)
    keep_norm = float(np.linalg.norm(keep))
    fidelity = abs(np.vdot(phi, keep)) / keep_norm if keep_norm > 0 else 0.0
    return StateResidual(
        epsilon=float(sol.energy),
        branch=sol.branch,
        lower=float(np.linalg.norm(drop)),
        match=float(np.linalg.norm(keep - phi)),
        fidelity=float(fidelity),
        normalization=abs(float(np.linalg.norm(image)) - 1.0),
    )


def spinor_relations_check(samples):
    """Largest deviation from the plane-wave spinor relations over ``samples``.

    ``samples`` is an iterable of ``(p, m)`` pairs.  FW spinors ``U_s, V_s`` are
    checked for orthonormality, cross-orthogonality and the two completeness
    sums ``(1 +- beta)/2``; the Dirac spinors for orthonormality and
    completeness; ``U_0`` for mapping each Dirac spinor onto its FW spinor.
    """
    out = {"fw_orthonormality": 0.0, "fw_cross": 0.0, "fw_completeness_upper": 0.0,
           "fw_completeness_lower": 0.0, "dirac_orthonormality": 0.0,
           "dirac_completeness": 0.0, "u0_image": 0.0}
    plus, minus = 0.5 * (np.eye(4) + BETA), 0.5 * (np.eye(4) - BETA)

    def bump(key, value):
        out[key] = max(out[key], float(value))

    for p, m in samples:
        p = np.asarray(p, dtype=float)
        u0 = u_free_fw(m, lat.PlaneWave(p)).matrix
        dirac, fw = {}, {}
        for branch in (POSITIVE, NEGATIVE):
            for s in (1, 2):
                dirac[branch, s], fw[branch, s] = free_spinors(p, m, s, branch)
        keys = list(fw)
        fw_mat = np.column_stack([fw[k] for k in keys])
        d_mat = np.column_stack([dirac[k] for k in keys])
        gram = fw_mat.conj().T @ fw_mat
        bump("fw_orthonormality", np.abs(gram[:2, :2] - np.eye(2)).max())
        bump("fw_orthonormality", np.abs(gram[2:, 2:] - np.eye(2)).max())
        bump("fw_cross", np.abs(gram[:2, 2:]).max())
        bump("fw_completeness_upper", np.abs(fw_mat[:, :2] @ fw_mat[:, :2].conj().T - plus).max())
        bump("fw_completeness_lower", np.abs(fw_mat[:, 2:] @ fw_mat[:, 2:].conj().T - minus).max())
        bump("dirac_orthonormality", np.abs(d_mat.conj().T @ d_mat - np.eye(4)).max())
        bump("dirac_completeness", np.abs(d_mat @ d_mat.conj().T - np.eye(4)).max())
        bump("u0_image", np.abs(u0 @ d_mat - fw_mat).max())
    out["max"] = max(out.values())
    return out


# -- FW observables ---------------------------------------------------------------

def observable_fw(kind, case=None, spec=None, axis=0):
    """Canonical FW-representation observables.

    ``position``: coordinate multiplier along ``axis``; ``velocity``: ``p E^-1``
    with ``E = sqrt(p^2 + m^2)`` for the case mass; ``polarization``: the lift of
    ``beta Sigma`` along ``axis`` (spin axes, so ``axis=2`` is ``Pi_3``).
    """
    if kind not in ("position", "velocity", "polarization"):
        raise ValueError(f"unknown observable {kind!r}; expected position, velocity or polarization")
    spec = spec if spec is not None else case.spec
    if kind == "position":
        coords = spec.positions[:, axis]
        return lat.position_multiplier(coords, spec)
    if kind == "velocity":
        if case is None or case.kind not in ("free", "electric"):
            raise ValueError("velocity observable needs a free or electric case")
        m = case.m

        def v(p):
            return p[:, axis] / np.sqrt((p ** 2).sum(axis=-1) + m * m)

        return lat.apply_momentum_function(v, spec)
    return lift(POLARIZATION[axis], spec.n_sites)


def fw_expectation(op_fw, sol, H, eriksen=None):
    """Expectation of an FW-representation operator two ways.

    ``full`` uses the transformed bispinor ``U_Er psi``; ``shortcut`` uses only
    the normalized two-component reference function and the matching diagonal
    block of ``op_fw``.
    """
    if eriksen is None:
        eriksen = u_eriksen(H)
    image = _matrix(eriksen) @ sol.state
    full = complex(np.vdot(image, op_fw @ image))
    phi, _ = reference_gauge(sol, H, eriksen)
    blocks = block_split(op_fw)
    block = blocks.upper_upper if sol.branch == POSITIVE else blocks.lower_lower
    shortcut = complex(np.vdot(phi, block @ phi))
    return {"full": full, "shortcut": shortcut}


def transform_operator(U, op_dirac):
    """Carry a Dirac-representation operator to the FW picture: ``U A U^dagger``."""
    U = _matrix(U)
    return U @ op_dirac @ U.conj().T


# -- coupling-derivative oracle ------------------------------------------------------

def low_mode_projector(spec, cutoff):
    """Projector onto Fourier modes with ``|p| <= cutoff`` (all four spinor components)."""
    keep = np.sqrt((spec.momenta ** 2).sum(axis=-1)) <= cutoff * (1 + 1e-12)
    f = spec.fourier_matrix
    return on_sites((f.conj().T * keep) @ f)


def coupling_derivative_check(build_hamiltonian, linear_part, spec, step=1e-3, cutoff=None):
    """Compare ``d/dg [U_Er H(g) U_Er^dagger]`` at ``g = 0`` with an analytic linear term.

    The derivative is a Richardson-extrapolated central difference.  Returns the
    relative Frobenius error on the full grid and, when ``cutoff`` is given, on
    the Fourier modes with ``|p| <= cutoff``, plus the difference-step error
    estimate.
    """
    def transformed(g):
        H = build_hamiltonian(g)
        return u_eriksen(H).conjugate(H)

    deriv, fd_error = finite_difference_derivative(transformed, step)
    diff = deriv - linear_part
    out = {"full": float(np.linalg.norm(diff) / np.linalg.norm(linear_part)),
           "fd_error": fd_error}
    if cutoff is not None:
        P = low_mode_projector(spec, cutoff)
        out["subspace"] = float(np.linalg.norm(P @ diff @ P) / np.linalg.norm(P @ linear_part @ P))
    return out


# -- reports ------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformReport:
    kind: str
    necessary: float
    unitarity: float
    states: tuple
    is_fw: bool
    tolerances: Tolerances = field(default_factory=Tolerances)

    @property
    def max_lower(self):
        return max((s.lower for s in self.states), default=0.0)

    @property
    def max_match(self):
        return max((s.match for s in self.states), default=0.0)

    @property
    def max_normalization(self):
        return max((s.normalization for s in self.states), default=0.0)

    def as_dict(self):
        return {"kind": self.kind, "necessary": self.necessary, "unitarity": self.unitarity,
                "states": [s.as_dict() for s in self.states], "is_fw": self.is_fw}


@dataclass(frozen=True)
class VerificationReport:
    scenario: dict
    tolerances: Tolerances
    per_transform: tuple

    def as_dict(self):
        return {"scenario": self.scenario, "tolerances": self.tolerances.as_dict(),
                "per_transform": [t.as_dict() for t in self.per_transform]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False, allow_nan=True) + "\n"

    def by_kind(self, kind):
        for t in self.per_transform:
            if t.kind == kind:
                return t
        raise KeyError(kind)


def verdict(necessary, states, tolerances):
    return bool(necessary < tolerances.block_tol
                and max((s.lower for s in states), default=0.0) < tolerances.lower_tol
                and max((s.match for s in states), default=0.0) < tolerances.match_tol)


def evaluate_transform(kind, U, H, states, tolerances, eriksen=None):
    """Residuals and verdict for one transformation over the given eigenstates."""
    if eriksen is None:
        eriksen = u_eriksen(H)
    nec = necessary_residual(U, H)
    residuals = tuple(sufficiency_residual(U, s, H, eriksen) for s in states)
    return TransformReport(kind, float(nec), unitarity_residual(U), residuals,
                           verdict(nec, residuals, tolerances), tolerances)


def assemble_report(scenario, H, transforms, tolerances=None, per_branch=8, full_spectrum=False,
                    solutions=None, eriksen=None):
    """Evaluate every ``(kind, UnitaryMap[, Tolerances])`` entry of ``transforms``.

    States sampled are the ``per_branch`` lowest-|energy| eigenstates of each
    branch, or every eigenstate with ``full_spectrum=True``.  Construction
    errors are re-raised with the transform kind attached.  ``solutions`` and
    ``eriksen`` may be passed in to avoid recomputing them.
    """
    tolerances = tolerances or Tolerances()
    solutions = eigensolve(H) if solutions is None else solutions
    states = solutions if full_spectrum else sample_states(solutions, per_branch)
    eriksen = u_eriksen(H) if eriksen is None else eriksen
    reports = []
    for entry in transforms:
        kind, U = entry[0], entry[1]
        tol = entry[2] if len(entry) > 2 and entry[2] is not None else tolerances
        try:
            reports.append(evaluate_transform(kind, U, H, states, tol, eriksen))
        except (ArithmeticError, ValueError) as exc:
            raise type(exc)(f"transform {kind!r}: {exc}") from exc
    return VerificationReport(dict(scenario), tolerances, tuple(reports))


__all__ = [
    "Tolerances", "StateResidual", "TransformReport", "VerificationReport",
    "necessary_residual", "unitarity_residual", "sufficiency_residual",
    "spinor_relations_check", "observable_fw", "fw_expectation", "transform_operator",
    "assemble_report", "evaluate_transform", "verdict", "low_mode_projector",
    "coupling_derivative_check",
]
