"""Dirac-representation spin matrices and the spinor/site index convention.

Every lattice operator in this package is a ``4n x 4n`` complex matrix whose
row index is ``spinor * n + site``: the spinor index is slow, the site index
fast.  With this ordering the first ``2n`` rows are the upper (beta = +1)
components and the last ``2n`` rows the lower (beta = -1) components, so
upper/lower blocks are plain slices.  Use :func:`lift` and :func:`block_split`
instead of indexing by hand.
"""

from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

SIGMA_0 = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)

_ZERO2 = np.zeros((2, 2), dtype=np.complex128)


def _blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


IDENTITY = np.eye(4, dtype=np.complex128)
BETA = _blocks(SIGMA_0, _ZERO2, _ZERO2, -SIGMA_0)
ALPHA = tuple(_blocks(_ZERO2, s, s, _ZERO2) for s in PAULI)
SIGMA = tuple(_blocks(s, _ZERO2, _ZERO2, s) for s in PAULI)
GAMMA5 = 1j * ALPHA[0] @ ALPHA[1] @ ALPHA[2]
POLARIZATION = tuple(BETA @ s for s in SIGMA)

for _m in (IDENTITY, BETA, GAMMA5, *ALPHA, *SIGMA, *POLARIZATION):
    _m.setflags(write=False)


def dirac_basis():
    """Return the Dirac-representation constants as a read-only mapping.

    Keys: ``identity``, ``beta``, ``alpha1..3``, ``gamma5``, ``Sigma1..3``
    and ``Pi1..3`` (the polarization matrices ``beta @ Sigma``).
    """
    basis = {"identity": IDENTITY, "beta": BETA, "gamma5": GAMMA5}
    for i in range(3):
        basis[f"alpha{i + 1}"] = ALPHA[i]
        basis[f"Sigma{i + 1}"] = SIGMA[i]
        basis[f"Pi{i + 1}"] = POLARIZATION[i]
    return MappingProxyType(basis)


def lift(matrix, sites):
    """Act with a 4x4 spin matrix on spinor indices and trivially on sites."""
    if sites < 1:
        raise ValueError(f"need at least one site, got {sites}")
    return np.kron(np.asarray(matrix, dtype=np.complex128), np.eye(sites))


def on_sites(op, spin=IDENTITY):
    """Embed an ``n x n`` site operator as ``spin (x) op`` in the 4n space."""
    return np.kron(np.asarray(spin, dtype=np.complex128), op)


def pauli_on_sites(op, spin=SIGMA_0):
    """Embed an ``n x n`` site operator in a 2n two-component space."""
    return np.kron(np.asarray(spin, dtype=np.complex128), op)


def projectors(sites=1):
    """Return ``((1 + beta)/2, (1 - beta)/2)`` lifted to ``sites`` sites."""
    b = lift(BETA, sites)
    one = np.eye(b.shape[0])
    return 0.5 * (one + b), 0.5 * (one - b)


@dataclass(frozen=True)
class BlockSplit:
    """The four blocks of an operator relative to the beta = +-1 subspaces."""

    upper_upper: np.ndarray
    upper_lower: np.ndarray
    lower_upper: np.ndarray
    lower_lower: np.ndarray

    def assemble(self):
        return np.block([[self.upper_upper, self.upper_lower],
                         [self.lower_upper, self.lower_lower]])

    def off_diagonal_norm(self):
        """Frobenius norm of the odd (upper-lower coupling) part."""
        return float(np.hypot(np.linalg.norm(self.upper_lower),
                              np.linalg.norm(self.lower_upper)))


def block_split(matrix):
    matrix = np.asarray(matrix)
    dim = matrix.shape[0]
    if matrix.ndim != 2 or matrix.shape[1] != dim or dim % 4:
        raise ValueError(f"expected a square matrix with dimension divisible by 4, got {matrix.shape}")
    h = dim // 2
    return BlockSplit(matrix[:h, :h], matrix[:h, h:], matrix[h:, :h], matrix[h:, h:])


def off_diagonal_norm(matrix):
    return block_split(matrix).off_diagonal_norm()


def upper(vector):
    """Upper two-component half of a bispinor vector (or batch of columns)."""
    vector = np.asarray(vector)
    return vector[: vector.shape[0] // 2]


def lower(vector):
    vector = np.asarray(vector)
    return vector[vector.shape[0] // 2:]


def bispinor(upper_part, lower_part):
    return np.concatenate([np.asarray(upper_part), np.asarray(lower_part)])


def anticommutator(a, b):
    return a @ b + b @ a


def commutator(a, b):
    return a @ b - b @ a
