"""Static gravitational field: compare the first-order FW and Eriksen-Kolsrud
series with the exact transformation as the field amplitude shrinks."""

import numpy as np

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck import transforms as tf
from fwcheck import verify as vf
from fwcheck.cli import slope_fit

m = 1.0
spec = lat.LatticeSpec(1, 16, 4 * np.pi)
shape = np.cos(2 * np.pi * spec.positions[:, 0] / spec.box_length)
ones = np.ones(spec.n_sites)


def ground(V):
    H = hm.build_gravity(m, V, ones, spec)
    return H, [s for s in sp.eigensolve(H) if s.branch == sp.POSITIVE][0]


def residuals(lam):
    V = 1 + lam * shape
    H, sol = ground(V)
    fw = vf.sufficiency_residual(tf.u_perturbative_gravity(m, V, ones, spec)[0], sol, H)
    ek = vf.sufficiency_residual(tf.u_ek_perturbative_gravity(m, V, ones, spec)[0], sol, H)
    case = hm.HamiltonianCase("gravity", m, spec, fields={"V": V, "W": ones})
    chi = sp.gravity_lower_from_upper(sol.state[:2 * spec.n_sites], case)
    rec = np.linalg.norm(chi - sol.state[2 * spec.n_sites:]) / np.linalg.norm(sol.state[:2 * spec.n_sites])
    return fw.match, ek.match, rec


lams = np.geomspace(1e-3, 1e-2, 5)
ek0 = residuals(0.0)[1]
rows = np.array([residuals(lam) for lam in lams])
print(" lambda     fw match   ek match - free   reconstruction")
for lam, (fw, ek, rec) in zip(lams, rows):
    print(f"{lam:.2e}  {fw:.3e}  {ek - ek0:.3e}        {rec:.3e}")
print("slopes: fw %.2f, ek %.2f, reconstruction %.2f" % (
    slope_fit(lams, rows[:, 0])[0], slope_fit(lams, rows[:, 1] - ek0)[0], slope_fit(lams, rows[:, 2])[0]))

# the series Hamiltonian against the derivative of the exact one, low modes only
big = lat.LatticeSpec(1, 64, 40.0)
c = np.cos(2 * np.pi * big.positions[:, 0] / 40.0)
one = np.ones(64)
out = vf.coupling_derivative_check(lambda g: hm.build_gravity(2.0, one + g * c, one, big),
                                   tf.gravity_linear_part(2.0, c, 0 * c, big), big, cutoff=0.5)
print("d H_FW / d lambda vs series:", out)
