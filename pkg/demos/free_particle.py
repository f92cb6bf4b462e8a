"""Free Dirac particle: the exact FW map, Eriksen's map, and the
Eriksen-Kolsrud map that block-diagonalizes H but distorts the wave function."""

import numpy as np

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck import transforms as tf
from fwcheck import verify as vf

m, p = 3.0, (0.0, 0.0, 4.0)
mode = lat.PlaneWave(p)
H = hm.build_free(m, mode)
print("energies", np.linalg.eigvalsh(H))  # +-5, twice each

U0 = tf.u_free_fw(m, mode)
print("U0 H U0^dag =\n", np.round(U0.conjugate(H).real, 12))

# Eriksen's general formula collapses to U0 for a free particle
Er = tf.u_eriksen(H)
print("|U_Er - U0| =", np.linalg.norm(Er.matrix - U0.matrix))

# a positive-energy state with spinor (1, 1)/sqrt2
sol = sp.plane_wave_solution(p, m, np.array([1.0, 1.0]) / np.sqrt(2))
for name, U in [("fw", U0), ("eriksen", Er), ("ek", tf.u_eriksen_kolsrud(H))]:
    r = vf.sufficiency_residual(U, sol, H)
    print(f"{name:8s} necessary {vf.necessary_residual(U, H):.1e}  lower {r.lower:.1e}"
          f"  match {r.match:.4f}  fidelity {r.fidelity:.6f}")

# the E-K image differs by sqrt(8/10)(1 + i sigma3/2); the corrector removes it
fixed = tf.ek_to_fw_corrector(m, mode).compose(tf.u_eriksen_kolsrud(H))
print("corrected match", vf.sufficiency_residual(fixed, sol, H).match)

# the same story on a 1-D lattice of 16 momentum modes
spec = lat.LatticeSpec(1, 16, 2 * np.pi)
Hl = hm.build_free(1.0, spec)
report = vf.assemble_report({"name": "free-1d"}, Hl, [
    ("fw", tf.u_free_fw(1.0, spec)),
    ("eriksen", tf.u_eriksen(Hl)),
    ("ek", tf.u_eriksen_kolsrud(Hl)),
])
for t in report.per_transform:
    print(f"{t.kind:8s} is_fw={t.is_fw}  max match {t.max_match:.3g}")
