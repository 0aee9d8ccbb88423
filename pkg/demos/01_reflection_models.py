"""Reflection matrices of the built-in surface models.

Every quantity in the package is driven by the 2x2 matrix R(omega, k_perp)
in the (s, p) basis. This script evaluates it for a few surfaces and points
out the features the later demos rely on.
"""
import numpy as np

from emfluct.materials import Drude, DrudeBornChiral, FedorovChiral, FresnelHalfSpace, Layer, Multilayer

np.set_printoptions(precision=4, suppress=True)
omega = 1.0  # natural units: hbar = c = k_B = 1

# A glass-like dielectric at normal incidence: r_s = -1/3, r_p = +1/3 for eps = 4.
glass = FresnelHalfSpace(4.0)
print("eps = 4 at normal incidence\n", glass.matrix(omega, 0.0, 0.0))

# r_p vanishes at Brewster's angle, sin(theta_B) = sqrt(eps / (eps + 1)).
eps = 2.25
k_b = omega * np.sqrt(eps / (eps + 1))
print(f"\nBrewster angle {np.degrees(np.arcsin(k_b)):.2f} deg, |r_p| =", abs(FresnelHalfSpace(eps).matrix(omega, k_b, 0.0)[1, 1]))

# A quarter-wave coating with n1 = sqrt(n_substrate) removes normal-incidence reflection.
n_sub = 2.0
n1 = np.sqrt(n_sub)
coating = Multilayer((Layer(n1**2, np.pi / (2 * n1 * omega)),), n_sub**2)
print("\nquarter-wave coating, max |r| =", np.abs(coating.matrix(omega, 0.0, 0.0)).max())

# A Drude metal: |r| close to 1 on the propagating band, large Im r_p on the
# evanescent band near the surface-plasmon pole.
metal = FresnelHalfSpace(Drude(plasma_frequency=3.0, collision_rate=0.1))
for frac in (0.5, 1.5, 3.0):
    r = metal.matrix(omega, frac * omega, 0.0)
    print(f"Drude metal, k_perp = {frac} omega/c: r_s = {r[0, 0]:.4f}, r_p = {r[1, 1]:.4f}")

# Chiral media mix s and p. In the Fedorov model r_sp = -r_ps; in the
# Drude-Born model the off-diagonal entries are equal instead.
fed = FedorovChiral(2.25 + 0.1j, 1.0, beta=0.1)
db = DrudeBornChiral(2.25 + 0.1j, f=0.2)
for name, model in (("Fedorov", fed), ("Drude-Born", db)):
    r = model.matrix(omega, 0.5, 0.0)
    print(f"\n{name}: r_sp = {r[0, 1]:.4f}, r_ps = {r[1, 0]:.4f}")
