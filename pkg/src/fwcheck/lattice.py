"""Periodic Fourier lattices and the operators that live on them.

Momentum functions are exact on the grid: they are diagonal in the discrete
Fourier basis.  Position-dependent fields come in two flavours:

* :func:`position_multiplier` -- the collocation multiplier, diagonal in the
  position basis.  Products of collocation multipliers are collocation
  multipliers of pointwise products, but ``[p, f]`` equals ``-i f'`` only up
  to aliasing at the edge of the momentum grid.
* :func:`galerkin_multiplier` -- the Fourier-Galerkin (truncated convolution)
  multiplier.  It satisfies ``[p, f] = -i f'`` *exactly* as matrices, which is
  what the Hamiltonian builders need for the operator identities they rely on
  (``[pi_x, pi_y] = i e B`` in particular).

A :class:`PlaneWave` is a one-site "lattice" carrying a single fixed 3-momentum;
all operators reduce to 4x4 spin matrices on it.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .clifford import on_sites


@dataclass(frozen=True)
class LatticeSpec:
    """Periodic box of ``sites_per_axis ** dim`` sites with side ``box_length``.

    Sites and Fourier modes are flattened in C order over the axes.  Integer
    wavenumbers follow the FFT convention, so each axis covers
    ``-N/2 .. N/2 - 1`` and ``p_k = 2 pi k / L``.
    """

    dim: int
    sites_per_axis: int
    box_length: float

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.sites_per_axis < 2 or self.sites_per_axis % 2:
            raise ValueError(f"sites_per_axis must be even and >= 2, got {self.sites_per_axis}")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")

    @property
    def n_sites(self):
        return self.sites_per_axis ** self.dim

    @property
    def spacing(self):
        return self.box_length / self.sites_per_axis

    @property
    def cell_volume(self):
        return self.spacing ** self.dim

    @cached_property
    def positions(self):
        """Site coordinates, shape ``(n_sites, dim)``, on ``[0, L)``."""
        axis = np.arange(self.sites_per_axis) * self.spacing
        grids = np.meshgrid(*([axis] * self.dim), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    @cached_property
    def wavenumbers(self):
        """Integer Fourier labels, shape ``(n_sites, dim)``."""
        k = np.fft.fftfreq(self.sites_per_axis, d=1.0 / self.sites_per_axis).round().astype(int)
        grids = np.meshgrid(*([k] * self.dim), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    @cached_property
    def momenta(self):
        return 2 * np.pi / self.box_length * self.wavenumbers

    @cached_property
    def fourier_matrix(self):
        """Unitary DFT taking position samples to Fourier coefficients."""
        n = self.sites_per_axis
        one_axis = np.fft.fft(np.eye(n), axis=0, norm="ortho")
        f = one_axis
        for _ in range(self.dim - 1):
            f = np.kron(f, one_axis)
        return f

    def samples(self, func):
        """Evaluate ``func(x)`` with ``x`` of shape ``(n_sites, dim)``."""
        return np.asarray(func(self.positions), dtype=float)


@dataclass(frozen=True)
class PlaneWave:
    """Single momentum mode: a 3-D "lattice" with one site and fixed momentum."""

    momentum: tuple

    def __post_init__(self):
        p = tuple(float(c) for c in self.momentum)
        if len(p) != 3:
            raise ValueError("plane-wave momentum must have three components")
        object.__setattr__(self, "momentum", p)

    dim = 3
    n_sites = 1
    cell_volume = 1.0

    @property
    def momenta(self):
        return np.array([self.momentum])

    @property
    def fourier_matrix(self):
        return np.ones((1, 1), dtype=np.complex128)


@dataclass(frozen=True)
class ScalarField:
    """Real samples of a scalar field at the lattice sites."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("field samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, func, spec):
        return cls(spec.samples(func))

    @classmethod
    def constant(cls, value, spec):
        return cls(np.full(spec.n_sites, float(value)))

    def is_constant(self):
        return bool(np.all(self.values == self.values[0]))


@dataclass(frozen=True)
class VectorField:
    """Real samples of a vector field, shape ``(n_sites, dim)``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise ValueError("vector field samples must have shape (n_sites, dim)")
        if not np.all(np.isfinite(v)):
            raise ValueError("field samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def component(self, axis):
        return ScalarField(self.values[:, axis])


def _as_samples(field, spec):
    values = field.values if isinstance(field, ScalarField) else np.asarray(field, dtype=float)
    values = values.reshape(-1)
    if values.shape[0] != spec.n_sites:
        raise ValueError(f"field has {values.shape[0]} samples, lattice has {spec.n_sites} sites")
    return values


def _fourier_diagonal(values, spec):
    f = spec.fourier_matrix
    return (f.conj().T * values) @ f


def site_momentum_function(func, spec):
    """``n x n`` operator diagonal in Fourier space with entries ``func(p_k)``.

    ``func`` receives the momentum array of shape ``(n_modes, dim)``.
    """
    values = np.asarray(func(spec.momenta), dtype=np.complex128).reshape(-1)
    if values.shape[0] != spec.n_sites:
        raise ValueError("momentum function must return one value per mode")
    if not np.all(np.isfinite(values)):
        bad = spec.momenta[~np.isfinite(values)][0]
        raise ValueError(f"momentum function is not finite at p = {bad}")
    if spec.n_sites == 1:
        return values.reshape(1, 1)
    op = _fourier_diagonal(values, spec)
    if np.all(values.imag == 0):
        op = 0.5 * (op + op.conj().T)
    return op


def site_momentum(spec, axis):
    if not 0 <= axis < spec.dim:
        raise ValueError(f"axis {axis} out of range for a {spec.dim}-D lattice")
    return site_momentum_function(lambda p: p[:, axis], spec)


def momentum_operator(spec, axis):
    """Momentum component ``-i d/dx_axis`` acting on all four spinor components."""
    return on_sites(site_momentum(spec, axis))


def apply_momentum_function(func, spec):
    return on_sites(site_momentum_function(func, spec))


def momentum_squared(spec):
    return site_momentum_function(lambda p: (p ** 2).sum(axis=-1), spec)


def site_position_multiplier(field, spec):
    values = _as_samples(field, spec)
    return np.diag(values.astype(np.complex128))


def position_multiplier(field, spec):
    """Collocation multiplier: diagonal in the position basis."""
    return on_sites(site_position_multiplier(field, spec))


def fourier_coefficients(field, spec):
    """Coefficients ``c_k`` with ``f(x) = sum_k c_k exp(i p_k x)``.

    Returned as an array of shape ``(N,) * dim`` indexed by wavenumber modulo N.
    The unpaired Nyquist coefficient is dropped so that real fields stay real.
    """
    n = spec.sites_per_axis
    values = _as_samples(field, spec).reshape((n,) * spec.dim)
    coeffs = np.fft.fftn(values) / spec.n_sites
    for axis in range(spec.dim):
        index = [slice(None)] * spec.dim
        index[axis] = n // 2
        coeffs[tuple(index)] = 0.0
    return coeffs


def site_galerkin_multiplier(field, spec):
    values = _as_samples(field, spec)
    if np.all(values == values[0]):
        return values[0] * np.eye(spec.n_sites, dtype=np.complex128)
    n = spec.sites_per_axis
    coeffs = fourier_coefficients(values, spec)
    diff = spec.wavenumbers[:, None, :] - spec.wavenumbers[None, :, :]
    inside = np.all(np.abs(diff) < n // 2, axis=-1)
    idx = tuple(np.mod(diff[..., a], n) for a in range(spec.dim))
    toeplitz = np.where(inside, coeffs[idx], 0.0)
    f = spec.fourier_matrix
    op = f.conj().T @ toeplitz @ f
    return 0.5 * (op + op.conj().T)


def galerkin_multiplier(field, spec):
    """Fourier-Galerkin multiplier: truncated convolution in Fourier space."""
    return on_sites(site_galerkin_multiplier(field, spec))


def spectral_gradient(field, spec):
    """Spectral derivative of a periodic field, shape ``(n_sites, dim)``."""
    coeffs = fourier_coefficients(field, spec)
    k = np.fft.fftfreq(spec.sites_per_axis, d=1.0 / spec.sites_per_axis)
    out = []
    for axis in range(spec.dim):
        shape = [1] * spec.dim
        shape[axis] = -1
        q = (2 * np.pi / spec.box_length * k).reshape(shape)
        out.append(np.fft.ifftn(1j * q * coeffs).real * spec.n_sites)
    return np.stack([o.ravel() for o in out], axis=-1)


def spectral_laplacian(field, spec):
    grad = spectral_gradient(field, spec)
    return sum(spectral_gradient(grad[:, a], spec)[:, a] for a in range(spec.dim))


def symmetrized_product(f_of_x, g_of_p):
    """Half the anticommutator of two operators of the same size."""
    f_of_x, g_of_p = np.asarray(f_of_x), np.asarray(g_of_p)
    if f_of_x.shape != g_of_p.shape:
        raise ValueError(f"size mismatch: {f_of_x.shape} vs {g_of_p.shape}")
    return 0.5 * (f_of_x @ g_of_p + g_of_p @ f_of_x)


def field_norm(vector, spec):
    """Continuum norm ``sqrt(sum |psi|^2 dV)`` of a sampled field."""
    return float(np.sqrt(np.vdot(vector, vector).real * spec.cell_volume))
