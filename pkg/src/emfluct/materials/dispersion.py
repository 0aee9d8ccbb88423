"""Frequency-dependent permittivity/permeability models."""
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..exceptions import TableParseError, TableRangeError


@dataclass(frozen=True)
class Constant:
    value: complex

    def __call__(self, omega):
        return np.full(np.shape(omega), complex(self.value))[()]


@dataclass(frozen=True)
class Drude:
    """eps(omega) = 1 - wp^2 / (omega (omega + i gamma))."""

    plasma_frequency: float
    collision_rate: float

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        wp, g = self.plasma_frequency, self.collision_rate
        return (1.0 - wp**2 / (omega * (omega + 1j * g)))[()]


@dataclass(frozen=True, eq=False)
class TabulatedDispersion:
    """Piecewise-linear interpolation of real and imaginary parts on an omega grid."""

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        if om.ndim != 1 or om.size < 2 or np.any(np.diff(om) <= 0):
            raise ValueError("dispersion table needs at least two strictly increasing omega values")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        if np.any(omega < self.omega[0]) or np.any(omega > self.omega[-1]):
            raise TableRangeError(
                f"omega outside dispersion table [{self.omega[0]}, {self.omega[-1]}]"
            )
        re = np.interp(omega, self.omega, self.values.real)
        im = np.interp(omega, self.omega, self.values.imag)
        return (re + 1j * im)[()]

    @classmethod
    def from_csv(cls, path):
        """Read a CSV with header ``omega,re,im``."""
        path = Path(path)
        with path.open(newline="") as fh:
            lines = [(n, t) for n, t in enumerate(fh, start=1) if t.strip() and not t.lstrip().startswith("#")]
        if not lines or [h.strip() for h in next(csv.reader([lines[0][1]]))] != ["omega", "re", "im"]:
            raise TableParseError("expected header 'omega,re,im'", row=lines[0][0] if lines else 1)
        om, val = [], []
        for lineno, text in lines[1:]:
            row = next(csv.reader([text]))
            if len(row) != 3:
                raise TableParseError(f"expected 3 columns, got {len(row)}", row=lineno)
            try:
                w, re, im = (float(x) for x in row)
            except ValueError as exc:
                raise TableParseError(str(exc), row=lineno) from None
            om.append(w)
            val.append(re + 1j * im)
        try:
            return cls(np.array(om), np.array(val))
        except ValueError as exc:
            raise TableParseError(str(exc)) from None


def as_dispersion(value):
    """Wrap plain numbers as :class:`Constant`; pass callables through."""
    if callable(value):
        return value
    return Constant(complex(value))
