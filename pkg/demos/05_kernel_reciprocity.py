"""Reciprocity of the dipole field above a surface.

For a reciprocal surface the field at x + dx due to a dipole at x, component
i from component j, equals the field at x with the roles swapped. A
non-reciprocal reflection matrix shows up as a mismatch.
"""
import numpy as np

from emfluct.fdt import retarded_kernel, vacuum_kernel
from emfluct.materials import DrudeBornChiral, FedorovChiral, Vacuum

np.set_printoptions(precision=5, suppress=True)
dx, w = np.array([0.6, -0.4]), -0.5

# Without a surface the kernel is the free-space dipole field.
k = retarded_kernel(Vacuum(), 1.0, dx, w)
print("vacuum kernel, numerical minus closed form:", np.abs(k.t - vacuum_kernel(1.0, dx)).max())

for name, model in (("Fedorov", FedorovChiral(2.25 + 0.1j, 1.0, 0.1)), ("Drude-Born", DrudeBornChiral(2.25 + 0.1j, 0.2))):
    fwd = retarded_kernel(model, 1.0, dx, w)
    bwd = retarded_kernel(model, 1.0, -dx, w)
    defect = np.abs(fwd.t - bwd.t.T).max()
    print(f"{name}: |K(dx) - K(-dx)^T| = {defect:.2e} (quadrature error {fwd.error + bwd.error:.1e})")
