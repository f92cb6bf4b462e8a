"""Block-diagonalizing unitary maps: exact FW, Eriksen, Eriksen-Kolsrud, SU(2)
super-algebra, and the truncated electric and gravitational series.

Exact maps are assembled from Hermitian matrix functions; the series maps are
assembled term by term and keep every summand in :class:`PerturbativeTerms`.
"""

from dataclasses import dataclass, field

import numpy as np

from . import lattice as lat
from .clifford import ALPHA, BETA, GAMMA5, SIGMA, lift, on_sites
from .hamiltonians import ConfigurationError, alpha_dot, site_momenta
from .spectra import (
    DEFAULT_ZERO_MODE_TOL,
    _fix_phase,
    _lexicographic_basis,
    hermitian_function,
    inverse_sqrt_operator,
    sign_operator,
    spectral_norm,
)

EXACT_KINDS = ("fw_free", "eriksen", "eriksen_kolsrud", "ek_corrector", "ek_corrected",
               "su2_plus", "su2_minus", "case_closed_form")
SERIES_KINDS = ("fw_perturbative_electric", "fw_perturbative_gravity", "ek_perturbative_gravity")


@dataclass(frozen=True)
class UnitaryMap:
    matrix: np.ndarray
    kind: str
    metadata: dict = field(default_factory=dict)

    @property
    def unitarity_defect(self):
        """Frobenius norm of ``U U^dagger - 1`` (an upper bound on the spectral norm)."""
        u = self.matrix
        return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])))

    def apply(self, state):
        return self.matrix @ state

    def conjugate(self, H):
        """``U H U^dagger``."""
        return self.matrix @ H @ self.matrix.conj().T

    def compose(self, other, kind=None):
        """The map ``self`` applied after ``other``."""
        meta = {"first": other.kind, "then": self.kind}
        return UnitaryMap(self.matrix @ other.matrix, kind or f"{self.kind}*{other.kind}", meta)


class PerturbativeTerms(dict):
    """Named summands of a truncated series; :meth:`total` reassembles them."""

    def total(self):
        terms = list(self.values())
        out = terms[0].copy()
        for t in terms[1:]:
            out = out + t
        return out


def _beta(spec):
    return lift(BETA, spec.n_sites)


def _scalar_site(values, spec):
    return lat.site_galerkin_multiplier(np.asarray(values, dtype=float).reshape(-1), spec)


def _values(f):
    return np.asarray(getattr(f, "values", f), dtype=float).reshape(-1)


# -- exact maps ------------------------------------------------------------------

def u_free_fw(m, spec):
    """``sqrt((E+m)/2E) (1 + beta alpha.p / (E+m))`` on every momentum mode."""
    if not m > 0:
        raise ConfigurationError(f"mass must be positive, got {m}")

    def energy(p):
        return np.sqrt((p ** 2).sum(axis=-1) + m * m)

    def norm(p):
        E = energy(p)
        return np.sqrt((E + m) / (2 * E))

    out = on_sites(lat.site_momentum_function(norm, spec))
    for i in range(spec.dim):
        coeff = lat.site_momentum_function(lambda p, i=i: norm(p) * p[:, i] / (energy(p) + m), spec)
        out = out + on_sites(coeff, BETA @ ALPHA[i])
    return UnitaryMap(out, "fw_free", {"m": m})


def u_eriksen(H, zero_mode_tol=DEFAULT_ZERO_MODE_TOL, factor_order="projector_first", sign=None):
    """Eriksen's exact transformation ``1/2 (1 + beta lam) (1/2 + (beta lam + lam beta)/4)^-1/2``.

    ``lam`` is the sign operator of ``H`` (pass it as ``sign`` to reuse one
    already computed).  ``factor_order="norm_first"`` returns the equivalent
    product with the two factors swapped.
    """
    lam = sign_operator(H, zero_mode_tol) if sign is None else sign
    beta = _beta_for(H)
    one = np.eye(H.shape[0])
    even = beta @ lam + lam @ beta
    weight = 0.5 * one + 0.25 * even
    weight = 0.5 * (weight + weight.conj().T)
    inv_sqrt = inverse_sqrt_operator(weight)
    projector = 0.5 * (one + beta @ lam)
    if factor_order == "projector_first":
        u = projector @ inv_sqrt
    elif factor_order == "norm_first":
        u = inv_sqrt @ projector
    else:
        raise ValueError(f"unknown factor_order {factor_order!r}")
    scale = max(np.linalg.norm(H), 1.0)
    meta = {
        "sign_square_defect": float(np.linalg.norm(lam @ lam - one)),
        "even_part_defect": float(np.linalg.norm(beta @ even - even @ beta)),
        "factor_order": factor_order,
    }
    if meta["sign_square_defect"] > 1e-8 * scale or meta["even_part_defect"] > 1e-8 * scale:
        raise ArithmeticError(f"sign operator algebra violated: {meta}")
    return UnitaryMap(u, "eriksen", meta)


def _beta_for(H):
    return lift(BETA, H.shape[0] // 4)


def chiral_involution(sites):
    """``J = i gamma5 beta``: Hermitian, squares to one, anticommutes with beta."""
    return lift(1j * GAMMA5 @ BETA, sites)


def u_eriksen_kolsrud(H, zero_mode_tol=DEFAULT_ZERO_MODE_TOL, sign=None):
    """``(1 + beta J)/sqrt2 . (1 + J Lambda)/sqrt2`` with ``Lambda`` the sign operator.

    Requires ``{J, H} = 0`` (free, magnetic and gravity cases); otherwise the
    product is not unitary and a ``ConfigurationError`` is raised.
    """
    sites = H.shape[0] // 4
    J = chiral_involution(sites)
    defect = np.linalg.norm(J @ H + H @ J)
    if defect > 1e-10 * max(np.linalg.norm(H), 1.0):
        raise ConfigurationError(f"Eriksen-Kolsrud map needs {{J, H}} = 0; got |{{J, H}}| = {defect:.3e}")
    lam = sign_operator(H, zero_mode_tol) if sign is None else sign
    one = np.eye(H.shape[0])
    beta = lift(BETA, sites)
    u = 0.5 * (one + beta @ J) @ (one + J @ lam)
    return UnitaryMap(u, "eriksen_kolsrud", {"chiral_defect": float(defect)})


def ek_to_fw_corrector(m, spec):
    """``sqrt((E+m)/2E) (1 - i beta Sigma.p / (E+m))`` for the free case."""
    if not m > 0:
        raise ConfigurationError(f"mass must be positive, got {m}")

    def energy(p):
        return np.sqrt((p ** 2).sum(axis=-1) + m * m)

    def norm(p):
        E = energy(p)
        return np.sqrt((E + m) / (2 * E))

    out = on_sites(lat.site_momentum_function(norm, spec))
    for i in range(spec.dim):
        coeff = lat.site_momentum_function(lambda p, i=i: norm(p) * p[:, i] / (energy(p) + m), spec)
        out = out - 1j * on_sites(coeff, BETA @ SIGMA[i])
    return UnitaryMap(out, "ek_corrector", {"m": m})


def u_su2(H, pair, m, sign="+", keep_angle=False):
    """SU(2) super-algebra rotation ``exp(+-i J2 theta)`` for ``H = Q + Q^dag + beta m``.

    The rotation angle obeys ``tan(theta) = {Q, Q^dag}^1/2 / m``.  With
    ``sign="+"`` this is ``sqrt((E+m)/2E)(1 + beta(Q+Q^dag)/(E+m))``.  With
    ``sign="-"`` the exponent is reversed and, by default, the angle is re-chosen
    (``theta -> pi - theta``) so that the result still block-diagonalizes
    ``H`` (to ``-beta E``).  ``keep_angle=True`` keeps the original angle and
    returns ``sqrt((E+m)/2E)(1 - beta(Q+Q^dag)/(E+m))`` literally.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not m > 0:
        raise ConfigurationError(f"mass must be positive, got {m}")
    K2 = pair.anticommutator
    K2 = 0.5 * (K2 + K2.conj().T)
    odd = pair.odd
    beta = _beta_for(H)

    def energy(s):
        return np.sqrt(np.clip(s, 0.0, None) + m * m)

    def half_cos(s):
        # cos(theta/2) with cos(theta) = m / E
        return np.sqrt(0.5 * (1 + m / energy(s)))

    def half_sin_over_root(s):
        # sin(theta/2) / sqrt(s), finite as s -> 0
        E = energy(s)
        return 1.0 / np.sqrt(2 * E * (E + m))

    w, v = np.linalg.eigh(K2)
    kernel = np.abs(w) <= 1e-12 * max(1.0, np.abs(w).max())
    w = np.where(kernel, 0.0, w)
    func = lambda f: (v * f(w)) @ v.conj().T  # noqa: E731
    rotation = beta @ odd  # 2 i J2 * sqrt({Q,Q^dag})
    if sign == "+":
        u = func(half_cos) + rotation @ func(half_sin_over_root)
        kind = "su2_plus"
    elif keep_angle:
        u = func(half_cos) - rotation @ func(half_sin_over_root)
        kind = "su2_minus_literal"
    else:
        # exp(-i J2 (pi - theta)) = sin(theta/2) - 2 i J2 cos(theta/2)
        def half_sin(s):
            return np.sqrt(np.clip(s, 0.0, None)) * half_sin_over_root(s)

        def half_cos_over_root(s):
            root = np.sqrt(np.clip(s, 0.0, None))
            safe = np.where(root > 0, root, 1.0)
            return np.where(root > 0, half_cos(s) / safe, 0.0)

        u = func(half_sin) - rotation @ func(half_cos_over_root)
        # theta = 0 on the kernel of {Q, Q^dag}, where the map must swap blocks
        u = u + _kernel_swap(v[:, kernel])
        kind = "su2_minus"
    return UnitaryMap(u, kind, {"sign": sign, "keep_angle": keep_angle, "m": m})


def _kernel_swap(kernel):
    """Odd unitary on span(kernel) pairing its upper and lower parts in a fixed order.

    The kernel of ``{Q, Q^dag}`` splits into ``ker M`` (upper) and ``ker M^dag``
    (lower), which have equal dimension for square ``M``.
    """
    dim = kernel.shape[0]
    if kernel.shape[1] == 0:
        return np.zeros((dim, dim), dtype=np.complex128)
    proj = kernel @ kernel.conj().T
    half = dim // 2
    bases = []
    for block in (slice(0, half), slice(half, dim)):
        w, v = np.linalg.eigh(proj[block, block])
        vecs = v[:, w > 0.5]
        vecs = _lexicographic_basis(vecs) if vecs.shape[1] > 1 else vecs
        full = np.zeros((dim, vecs.shape[1]), dtype=np.complex128)
        full[block] = np.column_stack([_fix_phase(c) for c in vecs.T]) if vecs.shape[1] else vecs
        bases.append(full)
    up, low = bases
    if up.shape[1] != low.shape[1]:
        raise ArithmeticError(f"unbalanced kernel: {up.shape[1]} upper vs {low.shape[1]} lower states")
    return low @ up.conj().T - up @ low.conj().T


def case_closed_form(H):
    """``sqrt((E+m)/2E)(1 + beta O/(E+m))`` with ``E = sqrt(H^2)`` for ``H = O + beta m``.

    Valid whenever the odd part ``O`` anticommutes with beta and ``H^2`` is even
    (free, magnetic, susy cases); ``m`` is read off the even part.
    """
    beta = _beta_for(H)
    even = 0.5 * (H + beta @ H @ beta)
    odd = H - even
    m = float(np.real(np.trace(beta @ even)) / H.shape[0])
    if np.linalg.norm(even - m * beta) > 1e-10 * max(np.linalg.norm(H), 1.0):
        raise ConfigurationError("closed-form FW map needs H = odd + beta m")
    w, v = np.linalg.eigh(H @ H)
    E = np.sqrt(np.clip(w, 0.0, None))
    norm = (v * np.sqrt((E + m) / (2 * E))) @ v.conj().T
    inv = (v * (np.sqrt((E + m) / (2 * E)) / (E + m))) @ v.conj().T
    return UnitaryMap(norm + beta @ odd @ inv, "case_closed_form", {"m": m})


# -- truncated series: electric --------------------------------------------------

def _gradient_ops(values, spec):
    grad = lat.spectral_gradient(values, spec)
    return [_scalar_site(grad[:, a], spec) for a in range(spec.dim)]


def u_perturbative_electric(m, e, A0, spec):
    """FW series for ``alpha.p + beta m + e A0`` kept to first order in ``e`` and ``(v/c)^2``.

    ``1 + beta alpha.p/2m - p^2/8m^2 - (ie/4m^2) alpha.grad A0
    - (ie beta/16m^3)[alpha.p, alpha.grad A0]``.
    """
    n = spec.n_sites
    alpha_p = alpha_dot(site_momenta(spec))
    alpha_g = alpha_dot(_gradient_ops(_values(A0), spec))
    beta = _beta(spec)
    p2 = on_sites(lat.momentum_squared(spec))
    terms = PerturbativeTerms()
    terms["identity"] = np.eye(4 * n, dtype=np.complex128)
    terms["odd_kinetic"] = beta @ alpha_p / (2 * m)
    terms["normalization"] = -p2 / (8 * m * m)
    terms["odd_field"] = -1j * e / (4 * m * m) * alpha_g
    terms["field_commutator"] = -1j * e / (16 * m ** 3) * beta @ (alpha_p @ alpha_g - alpha_g @ alpha_p)
    meta = {"order_in_charge": 1, "order_in_velocity": 2, "m": m, "e": e}
    u = UnitaryMap(terms.total(), "fw_perturbative_electric", meta)
    u.metadata["unitarity_defect"] = u.unitarity_defect
    return u, terms


def h_fw_perturbative_electric(m, e, A0, spec):
    """``beta m + beta p^2/2m + e (A0 + (i/8m^2)[alpha.p, alpha.grad A0])``."""
    alpha_p = alpha_dot(site_momenta(spec))
    alpha_g = alpha_dot(_gradient_ops(_values(A0), spec))
    beta = _beta(spec)
    p2 = on_sites(lat.momentum_squared(spec))
    terms = PerturbativeTerms()
    terms["rest"] = m * beta
    terms["kinetic"] = beta @ p2 / (2 * m)
    terms["potential"] = e * on_sites(_scalar_site(_values(A0), spec))
    terms["darwin_spin_orbit"] = 1j * e / (8 * m * m) * (alpha_p @ alpha_g - alpha_g @ alpha_p)
    return terms.total(), terms


def electric_linear_part(m, A0, spec):
    """Coefficient of ``e`` in :func:`h_fw_perturbative_electric`."""
    _, terms = h_fw_perturbative_electric(m, 1.0, A0, spec)
    return terms["potential"] + terms["darwin_spin_orbit"]


# -- truncated series: gravity -----------------------------------------------------

def _cross_with_p(vec_ops, p_ops):
    """Site operators ``(f x p)_i = eps_ijk f_j p_k`` (zero components below 3-D)."""
    d = len(p_ops)
    comps = []
    for i in range(3):
        acc = 0.0
        for j in range(3):
            for k in range(3):
                eps = _levi_civita(i, j, k)
                if eps and j < d and k < d:
                    acc = acc + eps * vec_ops[j] @ p_ops[k]
        comps.append(acc)
    return comps


def _levi_civita(i, j, k):
    return int((i - j) * (j - k) * (k - i) / 2)


def _sigma_cross(vec_ops, p_ops, n):
    out = np.zeros((4 * n, 4 * n), dtype=np.complex128)
    for i, comp in enumerate(_cross_with_p(vec_ops, p_ops)):
        if not np.isscalar(comp):
            out = out + on_sites(comp, SIGMA[i])
    return out


def _divergence(grad_values, spec):
    return sum(lat.spectral_gradient(grad_values[:, a], spec)[:, a] for a in range(spec.dim))


def _gravity_inputs(V, W, spec):
    V, W = _values(V), _values(W)
    if np.any(V <= 0) or np.any(W <= 0):
        raise ConfigurationError("metric functions V and W must be positive everywhere")
    return V, W, V / W


def _anti(a, b):
    return a @ b + b @ a


def u_perturbative_gravity(m, V, W, spec):
    """Gravity FW series, first order in ``V-1``, ``F-1`` and through ``(v/c)^2``.

    ``1 + beta alpha.p/2m - p^2/8m^2 + (beta/4m){F-V, alpha.p}
    - (1/16m^2)((F-V)p^2 + 2 alpha.p (F-V) alpha.p + p^2 (F-V))``.
    """
    V, W, F = _gravity_inputs(V, W, spec)
    n = spec.n_sites
    alpha_p = alpha_dot(site_momenta(spec))
    beta = _beta(spec)
    p2 = on_sites(lat.momentum_squared(spec))
    dfv = on_sites(_scalar_site(F - V, spec))
    terms = PerturbativeTerms()
    terms["identity"] = np.eye(4 * n, dtype=np.complex128)
    terms["odd_kinetic"] = beta @ alpha_p / (2 * m)
    terms["normalization"] = -p2 / (8 * m * m)
    terms["odd_field"] = beta @ _anti(dfv, alpha_p) / (4 * m)
    terms["even_field"] = -(dfv @ p2 + 2 * alpha_p @ dfv @ alpha_p + p2 @ dfv) / (16 * m * m)
    meta = {"order_in_potentials": 1, "order_in_velocity": 2, "m": m}
    u = UnitaryMap(terms.total(), "fw_perturbative_gravity", meta)
    u.metadata["unitarity_defect"] = u.unitarity_defect
    return u, terms


def h_fw_perturbative_gravity(m, V, W, spec):
    """Gravity FW Hamiltonian to first order in the potentials::

        beta m + beta p^2/2m + beta m (V-1) - (beta/4m){p^2, V-1} + (beta/2m){p^2, F-1}
        + (beta/4m)(2 Sigma.(f x p) + div f) - (beta/8m)(2 Sigma.(Phi x p) + div Phi)

    with ``f = grad F`` and ``Phi = grad V``.
    """
    V, W, F = _gravity_inputs(V, W, spec)
    n = spec.n_sites
    beta = _beta(spec)
    p_ops = site_momenta(spec)
    p2_site = lat.momentum_squared(spec)
    p2 = on_sites(p2_site)
    f_grad = lat.spectral_gradient(F, spec)
    phi_grad = lat.spectral_gradient(V, spec)
    f_ops = [_scalar_site(f_grad[:, a], spec) for a in range(spec.dim)]
    phi_ops = [_scalar_site(phi_grad[:, a], spec) for a in range(spec.dim)]
    v1 = on_sites(_scalar_site(V - 1, spec))
    f1 = on_sites(_scalar_site(F - 1, spec))
    div_f = on_sites(_scalar_site(_divergence(f_grad, spec), spec))
    div_phi = on_sites(_scalar_site(_divergence(phi_grad, spec), spec))
    terms = PerturbativeTerms()
    terms["rest"] = m * beta
    terms["kinetic"] = beta @ p2 / (2 * m)
    terms["mass_potential"] = m * beta @ v1
    terms["kinetic_V"] = -beta @ _anti(p2, v1) / (4 * m)
    terms["kinetic_F"] = beta @ _anti(p2, f1) / (2 * m)
    terms["spin_orbit_F"] = beta @ (2 * _sigma_cross(f_ops, p_ops, n) + div_f) / (4 * m)
    terms["spin_orbit_V"] = -beta @ (2 * _sigma_cross(phi_ops, p_ops, n) + div_phi) / (8 * m)
    return terms.total(), terms


def gravity_linear_part(m, V_shape, W_shape, spec):
    """Coefficient of ``lam`` in :func:`h_fw_perturbative_gravity` for
    ``V = 1 + lam V_shape``, ``W = 1 + lam W_shape`` (to first order ``F = 1 + lam (V_shape - W_shape)``).
    """
    V_shape = _values(V_shape)
    W_shape = _values(W_shape)
    # the series Hamiltonian is affine in (V-1, F-1), so the slope is exact
    return _gravity_affine(m, V_shape, V_shape - W_shape, spec)


def _gravity_affine(m, v1_values, f1_values, spec):
    """Field-dependent part of the gravity FW Hamiltonian for given ``V-1`` and ``F-1``."""
    n = spec.n_sites
    beta = _beta(spec)
    p_ops = site_momenta(spec)
    p2 = on_sites(lat.momentum_squared(spec))
    f_grad = lat.spectral_gradient(f1_values, spec)
    phi_grad = lat.spectral_gradient(v1_values, spec)
    f_ops = [_scalar_site(f_grad[:, a], spec) for a in range(spec.dim)]
    phi_ops = [_scalar_site(phi_grad[:, a], spec) for a in range(spec.dim)]
    v1 = on_sites(_scalar_site(v1_values, spec))
    f1 = on_sites(_scalar_site(f1_values, spec))
    div_f = on_sites(_scalar_site(_divergence(f_grad, spec), spec))
    div_phi = on_sites(_scalar_site(_divergence(phi_grad, spec), spec))
    return (m * beta @ v1
            - beta @ _anti(p2, v1) / (4 * m)
            + beta @ _anti(p2, f1) / (2 * m)
            + beta @ (2 * _sigma_cross(f_ops, p_ops, n) + div_f) / (4 * m)
            - beta @ (2 * _sigma_cross(phi_ops, p_ops, n) + div_phi) / (8 * m))


def u_ek_perturbative_gravity(m, V, W, spec):
    """Eriksen-Kolsrud map for the gravity case, first order in the potentials::

        1/2 (1 + i g5 - (beta g5/2){Sigma.p, F} / (mV)
             - (i g5/4m^2)(W^-1 p^2 F + F p^2 W^-1) V^-1
             - (i g5/4m^2)(div f + 2 Sigma.(f x p))
             - (i g5 beta/2m) Sigma.Phi - (g5/4m^2){Sigma.p, F} Sigma.Phi) (1 - i g5)
    """
    V, W, F = _gravity_inputs(V, W, spec)
    n = spec.n_sites
    one = np.eye(4 * n, dtype=np.complex128)
    beta = _beta(spec)
    g5 = lift(GAMMA5, n)
    p_ops = site_momenta(spec)
    sigma_p = sum(on_sites(p, SIGMA[i]) for i, p in enumerate(p_ops))
    p2 = on_sites(lat.momentum_squared(spec))
    f_grad = lat.spectral_gradient(F, spec)
    phi_grad = lat.spectral_gradient(V, spec)
    f_ops = [_scalar_site(f_grad[:, a], spec) for a in range(spec.dim)]
    sigma_phi = sum(on_sites(_scalar_site(phi_grad[:, a], spec), SIGMA[a]) for a in range(spec.dim))
    F_op = on_sites(_scalar_site(F, spec))
    inv_v = on_sites(_scalar_site(1 / V, spec))
    inv_w = on_sites(_scalar_site(1 / W, spec))
    div_f = on_sites(_scalar_site(_divergence(f_grad, spec), spec))
    anti_pF = _anti(sigma_p, F_op)
    terms = PerturbativeTerms()
    terms["leading"] = one + 1j * g5
    terms["odd_kinetic"] = -(beta @ g5 / 2) @ anti_pF @ inv_v / m
    terms["kinetic"] = -(1j * g5 / (4 * m * m)) @ (inv_w @ p2 @ F_op + F_op @ p2 @ inv_w) @ inv_v
    terms["spin_orbit"] = -(1j * g5 / (4 * m * m)) @ (div_f + 2 * _sigma_cross(f_ops, p_ops, n))
    terms["gradient_V"] = -(1j * g5 @ beta / (2 * m)) @ sigma_phi
    terms["mixed"] = -(g5 / (4 * m * m)) @ anti_pF @ sigma_phi
    bracket = terms.total()
    u = 0.5 * bracket @ (one - 1j * g5)
    meta = {"order_in_potentials": 1, "order_in_inverse_mass": 2, "m": m}
    out = UnitaryMap(u, "ek_perturbative_gravity", meta)
    out.metadata["unitarity_defect"] = out.unitarity_defect
    return out, terms


def finite_difference_derivative(func, step, richardson=True):
    """Central difference of a matrix-valued ``func`` at 0, optionally Richardson-extrapolated.

    Returns ``(derivative, estimate_of_error)``.
    """
    d1 = (func(step) - func(-step)) / (2 * step)
    if not richardson:
        return d1, float("nan")
    half = step / 2
    d2 = (func(half) - func(-half)) / (2 * half)
    extrapolated = (4 * d2 - d1) / 3
    return extrapolated, float(np.linalg.norm(extrapolated - d2))


def eriksen_transformed(H):
    u = u_eriksen(H)
    return u.conjugate(H)


__all__ = [
    "UnitaryMap", "PerturbativeTerms", "u_free_fw", "u_eriksen", "u_eriksen_kolsrud",
    "ek_to_fw_corrector", "u_su2", "case_closed_form", "u_perturbative_electric",
    "h_fw_perturbative_electric", "electric_linear_part", "u_perturbative_gravity",
    "h_fw_perturbative_gravity", "gravity_linear_part", "u_ek_perturbative_gravity",
    "finite_difference_derivative", "eriksen_transformed", "chiral_involution",
    "hermitian_function", "spectral_norm",
]
