"""Fluctuating electromagnetic fields outside a flat surface.

Everything is computed from the surface's 2x2 reflection matrix R(omega, k_perp):
amplitude correlators on the propagating and evanescent bands, thermodynamic
admissibility checks on R, the retarded dipole kernel used to cross-check the
correlators, and mode-integrated observables.
"""
from . import materials
from .correlators import (
    CorrelatorKind,
    CorrelatorMatrix,
    ThermalState,
    c_cross,
    c_infinity,
    c_surface_ew,
    c_surface_pw,
    mode_spectral_matrix,
    thermal_factor,
)
from .exceptions import (
    BandError,
    ConfigError,
    GrazingModeError,
    ModelDomainError,
    NumericalError,
    QuadratureError,
    TableParseError,
    TableRangeError,
)
from .fdt import fdt_residual_modewise, fdt_residual_realspace, retarded_kernel, vacuum_kernel
from .kinematics import Mode, ModeKind, make_mode, polarization_basis, transverse_map
from .observables import energy_density_spectrum, hemispherical_emissivity, planck_energy_density
from .quadrature import QuadSpec
from .symmetry import (
    SymmetryReport,
    default_sample_grid,
    hermiticity_check,
    onsager_check,
    passivity_check,
    sample_modes,
)
from .units import NATURAL, SI

__version__ = "0.1.0"

__all__ = [
    "BandError",
    "ConfigError",
    "CorrelatorKind",
    "CorrelatorMatrix",
    "GrazingModeError",
    "Mode",
    "ModeKind",
    "ModelDomainError",
    "NATURAL",
    "NumericalError",
    "QuadSpec",
    "QuadratureError",
    "SI",
    "SymmetryReport",
    "TableParseError",
    "TableRangeError",
    "ThermalState",
    "c_cross",
    "c_infinity",
    "c_surface_ew",
    "c_surface_pw",
    "default_sample_grid",
    "energy_density_spectrum",
    "fdt_residual_modewise",
    "fdt_residual_realspace",
    "hemispherical_emissivity",
    "hermiticity_check",
    "make_mode",
    "materials",
    "mode_spectral_matrix",
    "onsager_check",
    "passivity_check",
    "planck_energy_density",
    "polarization_basis",
    "retarded_kernel",
    "sample_modes",
    "thermal_factor",
    "transverse_map",
    "vacuum_kernel",
]
