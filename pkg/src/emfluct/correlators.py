"""Amplitude correlators of the fluctuating field outside the surface.

For each mode the incoming (from z = -infinity) and surface-emitted
amplitudes a_inf, a_S have 2x2 spectral matrices

    C_inf_inf = F (2 pi omega / c^2) Re(1/k_z) * identity
    C_inf_S   = C_S_inf = 0
    C_SS      = (2 pi omega / (c^2 k_z)) F (1 - R R^+)            (PW)
    C_SS      = -i (2 pi omega / (c^2 |k_z|)) F (R - R^+)         (EW)

with F(omega, T) = (hbar omega / 2) coth(hbar omega / (2 k_B T)), read as
symmetrized spectral densities.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import BandError, GrazingModeError
from .kinematics import ModeKind

__all__ = [
    "ThermalState",
    "CorrelatorKind",
    "CorrelatorMatrix",
    "thermal_factor",
    "thermal_excess",
    "c_infinity",
    "c_cross",
    "c_surface_pw",
    "c_surface_ew",
    "mode_spectral_matrix",
    "surface_correlator",
    "spectral_matrix_local",
]


@dataclass(frozen=True)
class ThermalState:
    temperature: float
    hbar: float = 1.0
    kB: float = 1.0

    def __post_init__(self):
        if not self.temperature >= 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature!r}")


def thermal_excess(omega, state):
    """F - hbar omega / 2 = hbar omega / (exp(hbar omega / k_B T) - 1)."""
    omega = np.asarray(omega, dtype=float)
    quantum = state.hbar * omega
    if state.temperature == 0:
        return np.zeros_like(quantum)[()]
    return (quantum / np.expm1(quantum / (state.kB * state.temperature)))[()]


def thermal_factor(omega, state):
    """F(omega, T); equals hbar omega / 2 at T = 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be positive")
    return (0.5 * state.hbar * omega + thermal_excess(omega, state))[()]


class CorrelatorKind(enum.Enum):
    INFINITY_INFINITY = "InfinityInfinity"
    SURFACE_SURFACE = "SurfaceSurface"
    CROSS = "Cross"


@dataclass(frozen=True, eq=False)
class CorrelatorMatrix:
    c: np.ndarray
    mode: object
    kind: CorrelatorKind


def _dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def _require_band(mode, kind):
    if mode.kind is ModeKind.GRAZING:
        raise GrazingModeError(f"correlators diverge on the light cone (kperp={mode.kperp!r})")
    if kind is not None and mode.kind is not kind:
        raise BandError(f"expected a {kind.value} mode, got {mode.kind.value}")


def surface_correlator(R, kz, omega, f, c=1.0, corrupt=False):
    """Vectorized C_SS; the band of each entry follows from k_z.

    ``corrupt`` swaps R - R^+ for R + R^+ on the EW band. It exists only as
    a negative control for the consistency checks.
    """
    R = np.asarray(R, dtype=complex)
    kz = np.asarray(kz, dtype=complex)
    pref = 2 * np.pi * np.asarray(omega) * np.asarray(f) / (c**2 * np.abs(kz))
    pw = kz.imag == 0
    pw_part = np.eye(2) - R @ _dagger(R)
    ew_part = -1j * (R + _dagger(R) if corrupt else R - _dagger(R))
    return np.asarray(pref)[..., None, None] * np.where(pw[..., None, None], pw_part, ew_part)


def spectral_matrix_local(R, kz, omega, f, c=1.0, w=-1.0, corrupt=False):
    """Mode-resolved spectral matrix of the transverse field at height w.

    Returned in the (e_perp, khat_perp) component basis:
    M = A C_inf A^+ + W_out C_SS W_out^+,  A = W_in + W_out R.
    """
    R = np.asarray(R, dtype=complex)
    kz = np.asarray(kz, dtype=complex)
    omega = np.asarray(omega, dtype=float)
    pw = kz.imag == 0
    q = c * kz / omega
    out = np.exp(-1j * kz * w)
    d_out = np.stack(np.broadcast_arrays(out, q * out), axis=-1)
    css = surface_correlator(R, kz, omega, f, c, corrupt)
    M = d_out[..., :, None] * css * np.conj(d_out)[..., None, :]

    # incoming term only on the PW band, where C_inf is nonzero and the
    # growing phase exp(i k_z w) stays bounded
    kz_pw = np.where(pw, kz, 0.0)
    ph_in = np.exp(1j * kz_pw * w)
    d_in = np.stack(np.broadcast_arrays(ph_in, -q * ph_in), axis=-1)
    A = d_out[..., :, None] * R
    A[..., 0, 0] += d_in[..., 0]
    A[..., 1, 1] += d_in[..., 1]
    c_inf = np.where(pw, 2 * np.pi * omega * np.asarray(f) / (c**2 * np.where(pw, kz.real, 1.0)), 0.0)
    M_inf = c_inf[..., None, None] * (A @ _dagger(A))
    return M + np.where(pw[..., None, None], M_inf, 0.0)


def c_infinity(mode, state):
    _require_band(mode, None)
    f = thermal_factor(mode.omega, state)
    value = f * 2 * np.pi * mode.omega / mode.c**2 * (1 / mode.kz).real
    return CorrelatorMatrix(value * np.eye(2, dtype=complex), mode, CorrelatorKind.INFINITY_INFINITY)


def c_cross(mode):
    return CorrelatorMatrix(np.zeros((2, 2), dtype=complex), mode, CorrelatorKind.CROSS)


def c_surface_pw(r, mode, state):
    _require_band(mode, ModeKind.PW)
    f = thermal_factor(mode.omega, state)
    css = surface_correlator(r, mode.kz, mode.omega, f, mode.c)
    return CorrelatorMatrix(css, mode, CorrelatorKind.SURFACE_SURFACE)


def c_surface_ew(r, mode, state):
    _require_band(mode, ModeKind.EW)
    f = thermal_factor(mode.omega, state)
    css = surface_correlator(r, mode.kz, mode.omega, f, mode.c)
    return CorrelatorMatrix(css, mode, CorrelatorKind.SURFACE_SURFACE)


def mode_spectral_matrix(provider, mode, state, w, corrupt=False):
    """k_perp-resolved spectral matrix of (E_eperp, E_khat) at height w < 0."""
    if not w < 0:
        raise ValueError(f"field point must satisfy w < 0, got {w!r}")
    _require_band(mode, None)
    R = provider.reflect(mode)
    f = thermal_factor(mode.omega, state)
    return spectral_matrix_local(R, mode.kz, mode.omega, f, mode.c, w, corrupt)
