"""Unit presets.

All formulas are written in Gaussian form. Switching presets only changes
the numerical values of hbar, c and k_B; lengths, frequencies and
temperatures are then read in the matching units.
"""
from dataclasses import dataclass

from scipy import constants


@dataclass(frozen=True)
class Units:
    name: str
    hbar: float
    c: float
    kB: float

    def describe(self):
        return f"units={self.name} (hbar={self.hbar:.9g}, c={self.c:.9g}, k_B={self.kB:.9g})"


NATURAL = Units("natural", 1.0, 1.0, 1.0)
SI = Units("si", constants.hbar, constants.c, constants.k)

PRESETS = {u.name: u for u in (NATURAL, SI)}
