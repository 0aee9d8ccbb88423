"""Screening reflection models for thermodynamic admissibility.

Reciprocity ties R at k_perp to R at -k_perp. A model that breaks it cannot
describe a body in thermal equilibrium, whatever else it gets right.
"""
import tempfile
from pathlib import Path

import numpy as np

from emfluct.materials import (
    Drude,
    DrudeBornChiral,
    FedorovChiral,
    FresnelHalfSpace,
    Layer,
    Multilayer,
    read_reflection_csv,
    write_reflection_csv,
)
from emfluct.symmetry import default_sample_grid, hermiticity_check, onsager_check, passivity_check, sample_modes

grid = default_sample_grid(0.1, 5.0, 7)  # log-spaced omega, +-k_perp pairs on both bands

models = {
    "Drude half-space": FresnelHalfSpace(Drude(3.0, 0.1)),
    "coated substrate": Multilayer((Layer(2.0 + 0.05j, 0.4),), 5.0),
    "Fedorov chiral": FedorovChiral(2.25 + 0.1j, 1.0, 0.1),
    "Drude-Born chiral": DrudeBornChiral(2.25 + 0.1j, 0.2),
}
print(f"{'model':20s} {'passed':>7s} {'ss':>9s} {'pp':>9s} {'sp/ps':>9s}")
for name, model in models.items():
    rep = onsager_check(model, *grid, relative=True)
    print(
        f"{name:20s} {str(rep.passed):>7s} {rep.max_violation_ss:9.1e} "
        f"{rep.max_violation_pp:9.1e} {rep.max_violation_sp_ps:9.1e}"
    )

# The Drude-Born failure is entirely in the cross terms.
rep = onsager_check(models["Drude-Born chiral"], *grid, relative=True)
print("\nworst Drude-Born mode:", rep.to_dict()["worst_mode"])

# Hermiticity on the evanescent band predicts whether a surface is EW-dark.
ew = sample_modes(*default_sample_grid(0.1, 1.0, 4, band="EW"), relative=True)
for name, model in (("eps = 0.64", FresnelHalfSpace(0.64)), ("eps = 2.25", FresnelHalfSpace(2.25))):
    print(f"hermitean on EW, {name}: {hermiticity_check(model, ew).passed}")

# Passivity is reported separately; a gain medium fails it.
pw = sample_modes(*default_sample_grid(0.1, 1.0, 4, band="PW"), relative=True)
print("passive, eps = 2 - 0.3j:", passivity_check(FresnelHalfSpace(2 - 0.3j), pw).passed)

# Tabulated data are stored on |k_perp| only and extended reciprocally.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "measured.csv"
    omega = np.array([0.5, 1.0, 2.0])
    kperp = np.linspace(0.0, 12.0, 49)
    vals = np.stack([models["Drude half-space"].matrix(w, kperp, 0.0) for w in omega])
    write_reflection_csv(path, omega, kperp, vals)
    table = read_reflection_csv(path)
    rep = onsager_check(table, [0.5, 0.8, 2.0], grid[1], relative=True)
    print(f"\ntabulated copy: passed={rep.passed}, max defect {rep.max_violation:.1e}, tol {rep.tol:g}")
