"""Energy density above a surface and its emissivity.

Far from any surface the thermal energy density is Planck's. Close to a
lossy surface evanescent modes add a contribution growing like 1/|z|^3.
A transparent surface with hermitean R adds none.
"""
import numpy as np

from emfluct.correlators import ThermalState
from emfluct.materials import Drude, FedorovChiral, FresnelHalfSpace, Mirror, Vacuum
from emfluct.observables import energy_density_spectrum, hemispherical_emissivity, planck_energy_density

state = ThermalState(temperature=0.7)
omega = 1.0
print(f"Planck: {planck_energy_density(omega, state):.6e}")

surfaces = {
    "black": Vacuum(),
    "mirror": Mirror(),
    "Drude metal": FresnelHalfSpace(Drude(3.0, 0.1)),
    "eps = 0.64": FresnelHalfSpace(0.64),
    "chiral, eps = 0.64": FedorovChiral(0.64, 1.0, 0.625),
}
print(f"\n{'surface':20s} {'z':>7s} {'thermal/Planck':>15s} {'EW share':>9s}")
for name, surface in surfaces.items():
    for z in (-1.0, -0.1, -0.01):
        u = energy_density_spectrum(surface, omega, z, state)
        ratio = u.thermal / planck_energy_density(omega, state)
        print(f"{name:20s} {z:7.2f} {ratio:15.6g} {u.ew / u.total:9.3f}")

print("\nemissivity")
for name in ("black", "mirror", "Drude metal"):
    values = [hemispherical_emissivity(surfaces[name], w).value for w in np.geomspace(0.3, 3.0, 4)]
    print(f"{name:12s}", " ".join(f"{v:.4f}" for v in values))
