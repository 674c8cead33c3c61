"""Cutoff wavenumbers of a 2:1 rectangular guide and the mesh-convergence rate."""
from qtem.waveguide import convergence_study, cutoff_modes

for mode_type in ("te", "tm"):
    print(mode_type.upper())
    for r in cutoff_modes(2.0, 1.0, 16, 8, mode_type, 5):
        print(f"  ({r.m},{r.n})  k_c {r.k_c:.9f}  exact {r.analytic:.9f}  rel.err {r.rel_error:+.1e}")

# lowest TM eigenvalue of the unit square under halving; quadratic elements give O(h^4)
for r in convergence_study("tm", levels=4):
    order = "" if r.order is None else f"  order {r.order:.2f}"
    print(f"nx={r.nx:3d}  error {r.error:.3e}{order}")
