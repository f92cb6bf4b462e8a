"""Magnetic, electric and supersymmetric cases on small lattices.

Eriksen's map is the reference in every case; the free-particle map and the
SU(2) rotation with the wrong sign are shown failing the wave-function test.
"""

import numpy as np

from fwcheck import hamiltonians as hm
from fwcheck import lattice as lat
from fwcheck import spectra as sp
from fwcheck import transforms as tf
from fwcheck import verify as vf
from fwcheck.scenario import FieldSpec, flux_quanta, landau_potential

# magnetic: B_z = B0 sin(x) on a 2-D torus of side 2 pi, one flux quantum per lobe
spec = lat.LatticeSpec(2, 8, 2 * np.pi)
B = FieldSpec("sine", amplitude=0.5, wavenumber=1)
print("flux quanta per lobe:", flux_quanta(B, 1.0, spec.box_length))
case = hm.HamiltonianCase("magnetic", 2.0, spec, e=1.0, fields={"A": landau_potential(B, spec)})
H = case.hamiltonian
rep = vf.assemble_report({}, H, [("eriksen", tf.u_eriksen(H)),
                                 ("closed_form", tf.case_closed_form(H)),
                                 ("fw", tf.u_free_fw(2.0, spec))])
for t in rep.per_transform:
    print(f"magnetic {t.kind:12s} necessary {t.necessary:.1e}  is_fw={t.is_fw}")
sols = sp.eigensolve(H)
print("reduced two-component equation, worst residual:", max(sp.two_component_residuals(sols, case)))

# electric: weak cosine potential; the truncated series is close but not exact
spec = lat.LatticeSpec(1, 16, 100.0)
A0 = np.cos(2 * np.pi * spec.positions[:, 0] / 100.0)
H = hm.build_electric(2.0, 0.05, A0, spec)
series, terms = tf.u_perturbative_electric(2.0, 0.05, A0, spec)
print("series terms:", list(terms))
rep = vf.assemble_report({}, H, [("eriksen", tf.u_eriksen(H)), ("fw_perturbative", series)])
for t in rep.per_transform:
    print(f"electric {t.kind:16s} necessary {t.necessary:.1e}  max lower {t.max_lower:.1e}"
          f"  max match {t.max_match:.1e}")

# susy: Dirac-oscillator surrogate; only the + rotation satisfies the wave-function test
spec = lat.LatticeSpec(1, 32, 4 * np.pi)
H, pair = hm.build_susy(1.0, spec, E=hm.oscillator_surrogate(spec))
rep = vf.assemble_report({}, H, [("su2_plus", tf.u_su2(H, pair, 1.0, "+")),
                                 ("su2_minus", tf.u_su2(H, pair, 1.0, "-"))])
for t in rep.per_transform:
    print(f"susy {t.kind:10s} necessary {t.necessary:.1e}  max lower {t.max_lower:.3f}  is_fw={t.is_fw}")
