"""Mode-integrated observables: hemispherical emissivity and spectral energy density."""
from dataclasses import dataclass

import numpy as np

from .correlators import _dagger, surface_correlator, thermal_excess, thermal_factor
from .quadrature import QuadSpec, integrate_band

__all__ = [
    "SpectrumPoint",
    "EnergyDensity",
    "hemispherical_emissivity",
    "energy_density_spectrum",
    "planck_energy_density",
]


@dataclass(frozen=True)
class SpectrumPoint:
    omega: float
    value: float
    quadrature_error: float


def hemispherical_emissivity(provider, omega, quad_spec=QuadSpec(), c=1.0):
    """PW-band average of tr(1 - R R^+)/2 weighted by the emitted flux.

    Normalized so that R = 0 gives exactly 1:
    e = (1 / (2 pi k0^2)) int_PW d^2k tr(1 - R R^+).
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")

    def absorbed(kz, kx, ky):
        R = provider.matrix(omega, kx, ky, c)
        return np.real(2 - np.einsum("...ij,...ij->...", R, np.conj(R)))

    k0 = omega / c
    res = integrate_band(absorbed, omega, "PW", quad_spec, c=c, breakpoints=provider.critical_kperp(omega, c))
    norm = 2 * np.pi * k0**2
    return SpectrumPoint(float(omega), float(res.value) / norm, res.error / norm)


@dataclass(frozen=True)
class EnergyDensity:
    """Spectral energy density u(omega, z) per unit angular frequency.

    ``total``, ``pw`` and ``ew`` use the full F(omega, T); ``thermal`` and
    ``zero_point`` split ``total`` into the T-dependent part and the
    hbar omega / 2 vacuum part.
    """

    omega: float
    z: float
    total: float
    pw: float
    ew: float
    quad_error: float
    thermal: float
    zero_point: float


def _field_matrices(kz, omega, c, kperp, z):
    """3x2 maps from (s, p) amplitudes to E and B in the (e_perp, khat, z) frame.

    Returns (E_in, E_out, B_in, B_out) with their z-dependent phases applied.
    """
    q = c * kz / omega
    s = c * kperp / omega
    ph_out = np.exp(-1j * kz * z)
    ph_in = np.exp(1j * kz * z) if kz.imag == 0 else 0.0
    E_in = np.array([[1, 0], [0, -q], [0, s]], dtype=complex) * ph_in
    E_out = np.array([[1, 0], [0, q], [0, s]], dtype=complex) * ph_out
    B_in = np.array([[0, -1], [-q, 0], [s, 0]], dtype=complex) * ph_in
    B_out = np.array([[0, -1], [q, 0], [s, 0]], dtype=complex) * ph_out
    return E_in, E_out, B_in, B_out


def _trace_sandwich(X, C):
    """tr(X C X^+) for X (..., 3, 2), C (..., 2, 2)."""
    return np.real(np.einsum("...ij,...jk,...ik->...", X, C, np.conj(X)))


def _energy_integrand(provider, omega, c, z):
    def f(kz, kx, ky):
        R = provider.matrix(omega, kx, ky, c)
        kperp = float(np.hypot(kx[0], ky[0]))
        E_in, E_out, B_in, B_out = _field_matrices(kz, omega, c, kperp, z)
        css = surface_correlator(R, kz, omega, 1.0, c)
        total = _trace_sandwich(E_out, css) + _trace_sandwich(B_out, css)
        if kz.imag == 0:
            c_inf = 2 * np.pi * omega / (c**2 * kz.real)
            A_E = E_in + E_out @ R
            A_B = B_in + B_out @ R
            eye = np.eye(2)
            total = total + c_inf * (_trace_sandwich(A_E, eye) + _trace_sandwich(A_B, eye))
        return total

    return f


def energy_density_spectrum(provider, omega, z, state, quad_spec=QuadSpec(), c=1.0):
    """u(omega, z) = (1/4 pi) int d^2k/(2 pi)^3 tr(M_E + M_B) at height z < 0.

    M_E, M_B are the mode-resolved spectral matrices of the full 3-component
    electric and magnetic fields. With R = 0 the thermal part reduces to
    Planck's hbar omega^3 / (pi^2 c^3 (exp(hbar omega / k_B T) - 1)).
    """
    if not z < 0:
        raise ValueError(f"field point must lie in the vacuum region z < 0, got {z!r}")
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    func = _energy_integrand(provider, omega, c, z)
    bp = provider.critical_kperp(omega, c)
    pw = integrate_band(func, omega, "PW", quad_spec, c=c, breakpoints=bp)
    ew = integrate_band(func, omega, "EW", quad_spec, c=c, depth=-z, breakpoints=bp)
    norm = 1 / (4 * np.pi * (2 * np.pi) ** 3)
    f = float(thermal_factor(omega, state))
    per_f_pw = norm * float(pw.value)
    per_f_ew = norm * float(ew.value)
    per_f = per_f_pw + per_f_ew
    return EnergyDensity(
        omega=float(omega),
        z=float(z),
        total=f * per_f_pw + f * per_f_ew,
        pw=f * per_f_pw,
        ew=f * per_f_ew,
        quad_error=f * norm * (pw.error + ew.error),
        thermal=float(thermal_excess(omega, state)) * per_f,
        zero_point=0.5 * state.hbar * omega * per_f,
    )


def planck_energy_density(omega, state, c=1.0):
    """Free-space thermal spectral energy density (both polarizations)."""
    return float(thermal_excess(omega, state)) * omega**2 / (np.pi**2 * c**3)
