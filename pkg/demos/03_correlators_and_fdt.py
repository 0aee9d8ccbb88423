"""Field correlators per mode and their fluctuation-dissipation cross-check.

The correlators are built from R alone. The same R also fixes the retarded
field of a dipole above the surface. At thermal equilibrium the two must be
related by the fluctuation-dissipation theorem, mode by mode and after
integration over k_perp.
"""
import numpy as np

from emfluct.correlators import ThermalState, c_infinity, c_surface_ew, c_surface_pw, mode_spectral_matrix
from emfluct.fdt import fdt_residual_modewise, fdt_residual_realspace
from emfluct.kinematics import make_mode
from emfluct.materials import Drude, FresnelHalfSpace, Vacuum

np.set_printoptions(precision=4, suppress=True)
state = ThermalState(temperature=0.5)
metal = FresnelHalfSpace(Drude(3.0, 0.1))

# Propagating mode: a black surface emits exactly what arrives from far away.
pw = make_mode(1.0, (0.6, 0.0))
print("C_inf            ", np.diag(c_infinity(pw, state).c).real)
print("C_SS, black body ", np.diag(c_surface_pw(np.zeros((2, 2)), pw, state).c).real)
print("C_SS, Drude metal", np.diag(c_surface_pw(metal.reflect(pw), pw, state).c).real)

# Evanescent mode: only the antihermitean part of R radiates.
ew = make_mode(1.0, (1.8, 0.0))
print("\nEW C_SS, Drude metal\n", c_surface_ew(metal.reflect(ew), ew, state).c)
print("EW C_SS, eps = 0.64 \n", c_surface_ew(FresnelHalfSpace(0.64).reflect(ew), ew, state).c)

# Spectral matrix of the transverse field at height w, and the FDT residual.
w = -0.3
print("\nspectral matrix at w = -0.3, black surface\n", mode_spectral_matrix(Vacuum(), pw, state, w))
for mode in (pw, ew):
    res = fdt_residual_modewise(metal, mode, state, w)
    bad = fdt_residual_modewise(metal, mode, state, w, corrupt=True)
    print(f"{mode.kind.value}: residual {res:.1e}, with R + R^+ in place of R - R^+: {bad:.1e}")

# The same identity after integrating over the whole k_perp plane.
for dx in ((0.0, 0.0), (0.4, -0.2)):
    print(f"real-space residual at dx = {dx}: {fdt_residual_realspace(metal, 1.0, dx, -0.5, state):.1e}")
