"""Wavevector geometry of the vacuum half-space z < 0.

The body fills z > 0. A mode is a pair (omega, k_perp); its longitudinal
wavenumber k_z = sqrt(omega^2/c^2 - k_perp^2) is taken on the branch with
Re k_z >= 0 and Im k_z >= 0. Fields are expanded on the s/p basis

    s:      e_perp = z_hat x khat_perp
    p (in): (c/omega) k_in  x e_perp,   k_in  = k_perp + k_z z_hat
    p (out):(c/omega) k_out x e_perp,   k_out = k_perp - k_z z_hat

with time dependence exp(-i omega t).
"""
import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import GrazingModeError

__all__ = [
    "ModeKind",
    "Mode",
    "PolarizationBasis",
    "TransverseMap",
    "sqrt_upper",
    "longitudinal_wavenumber",
    "make_mode",
    "polarization_basis",
    "transverse_map",
    "in_plane_basis",
    "local_to_cartesian",
]


class ModeKind(enum.Enum):
    PW = "PW"
    EW = "EW"
    GRAZING = "Grazing"


def sqrt_upper(z):
    """Complex square root on the branch Im >= 0.

    On the negative real axis this returns +i sqrt(|z|) regardless of the
    sign of a zero imaginary part.
    """
    s = np.sqrt(np.asarray(z, dtype=complex))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    s = np.where(flip, -s, s)
    return s[()] if s.ndim == 0 else s


def longitudinal_wavenumber(omega, kperp_mag, c=1.0):
    """k_z for vacuum; real on the PW band, +i|k_z| on the EW band.

    Works elementwise on arrays.
    """
    k0 = np.asarray(omega, dtype=float) / c
    k = np.asarray(kperp_mag, dtype=float)
    # factored form keeps relative accuracy close to the light cone
    d = (k0 - k) * (k0 + k)
    root = np.sqrt(np.abs(d))
    kz = np.where(d >= 0, root + 0j, 1j * root)
    return kz[()] if kz.ndim == 0 else kz


@dataclass(frozen=True)
class Mode:
    omega: float
    kperp: tuple
    kz: complex
    kind: ModeKind
    c: float = 1.0

    @property
    def kperp_mag(self):
        return float(np.hypot(*self.kperp))

    @property
    def k0(self):
        return self.omega / self.c

    def require_off_cone(self):
        if self.kind is ModeKind.GRAZING:
            raise GrazingModeError(
                f"mode omega={self.omega!r}, kperp={self.kperp!r} lies on the light cone (k_z = 0)"
            )


def make_mode(omega, kperp, c=1.0):
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    kx, ky = (float(v) for v in kperp)
    kz = complex(longitudinal_wavenumber(omega, np.hypot(kx, ky), c))
    if kz == 0:
        kind = ModeKind.GRAZING
    elif kz.imag == 0:
        kind = ModeKind.PW
    else:
        kind = ModeKind.EW
    return Mode(float(omega), (kx, ky), kz, kind, float(c))


def in_plane_basis(kx, ky):
    """Unit vectors (e_perp, khat_perp) as (..., 2) arrays.

    At k_perp = 0 the direction is fixed to khat_perp = x_hat.
    """
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    # exact power-of-two rescaling keeps subnormal kperp from losing precision
    _, e = np.frexp(np.maximum(np.abs(kx), np.abs(ky)))
    kx, ky = np.ldexp(kx, -e), np.ldexp(ky, -e)
    k = np.hypot(kx, ky)
    safe = np.where(k > 0, k, 1.0)
    hx = np.where(k > 0, kx / safe, 1.0)
    hy = np.where(k > 0, ky / safe, 0.0)
    khat = np.stack([hx, hy], axis=-1)
    e_perp = np.stack([-hy, hx], axis=-1)
    return e_perp, khat


def local_to_cartesian(kx, ky):
    """Matrix whose columns are e_perp and khat_perp in (x, y) components.

    A tensor T given in the (e_perp, khat_perp) basis maps to Cartesian
    components as U T U^T.
    """
    e_perp, khat = in_plane_basis(kx, ky)
    return np.stack([e_perp, khat], axis=-1)


@dataclass(frozen=True)
class PolarizationBasis:
    e_perp: np.ndarray
    khat_perp: np.ndarray
    k_in: np.ndarray
    k_out: np.ndarray

    def p_in(self, omega, c=1.0):
        return (c / omega) * np.cross(self.k_in, self.e_perp)

    def p_out(self, omega, c=1.0):
        return (c / omega) * np.cross(self.k_out, self.e_perp)


def polarization_basis(mode):
    e2, k2 = in_plane_basis(*mode.kperp)
    e_perp = np.array([e2[0], e2[1], 0.0])
    khat = np.array([k2[0], k2[1], 0.0])
    kp = np.array([mode.kperp[0], mode.kperp[1], 0.0], dtype=complex)
    zhat = np.array([0.0, 0.0, 1.0])
    return PolarizationBasis(e_perp, khat, kp + mode.kz * zhat, kp - mode.kz * zhat)


@dataclass(frozen=True)
class TransverseMap:
    """Maps (s, p) amplitudes to transverse field components (e_perp, khat_perp)."""

    w_in: np.ndarray
    w_out: np.ndarray


def _transverse_diagonals(kz, omega, c, w):
    q = c * kz / omega
    ph_in = np.exp(1j * kz * w)
    ph_out = np.exp(-1j * kz * w)
    return q, ph_in, ph_out


def transverse_map(mode, w):
    """Transverse projection matrices at height ``w``.

    ``w = 0`` is accepted as the vacuum-side limit at the surface.
    """
    if not w <= 0:
        raise ValueError(f"field point must lie in the vacuum region w <= 0, got w={w!r}")
    q, ph_in, ph_out = _transverse_diagonals(mode.kz, mode.omega, mode.c, w)
    return TransverseMap(
        np.diag([ph_in, -q * ph_in]).astype(complex),
        np.diag([ph_out, q * ph_out]).astype(complex),
    )
