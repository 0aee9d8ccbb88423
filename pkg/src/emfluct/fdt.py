"""Retarded dipole-field kernel and fluctuation-dissipation consistency.

The in-plane field produced at height w by an in-plane dipole at the same
height is, per unit charge times velocity,

    K(omega; dx, w) = (2 pi / c) int d^2k / (2 pi)^2  T(k) exp(i k . dx)

with, in the (e_perp, khat_perp) basis and q = c k_z / omega,
psi = exp(-2 i k_z w),

    T = [[-(1/q)(1 + r_ss psi),   r_sp psi           ],
         [ -r_ps psi,             q (-1 + r_pp psi)  ]]

(row = field component, column = dipole component). Thermal equilibrium
then requires, mode by mode,

    M = -(2 pi F / c) (T + T^+)

where M is the transverse-field spectral matrix assembled from the
amplitude correlators. ``fdt_residual_modewise`` measures the failure of
this identity; ``fdt_residual_realspace`` its k-integrated version.
"""
from dataclasses import dataclass

import numpy as np

from .correlators import _dagger, spectral_matrix_local, thermal_factor
from .kinematics import local_to_cartesian
from .quadrature import QuadSpec, integrate_band

__all__ = [
    "KernelTensor",
    "kernel_local",
    "kernel_integrand",
    "retarded_kernel",
    "vacuum_kernel",
    "fdt_residual_modewise",
    "fdt_residual_realspace",
    "realspace_sides",
]


def kernel_local(R, kz, omega, c=1.0, w=-1.0, part="all"):
    """Braced kernel tensor in the (e_perp, khat_perp) basis, vectorized.

    ``part`` selects the vacuum terms, the reflected terms or both.
    """
    R = np.asarray(R, dtype=complex)
    kz = np.asarray(kz, dtype=complex)
    q = c * kz / np.asarray(omega, dtype=float)
    shape = np.broadcast(R[..., 0, 0], q).shape
    T = np.zeros(shape + (2, 2), dtype=complex)
    if part in ("all", "vacuum"):
        T[..., 0, 0] -= 1 / q
        T[..., 1, 1] -= q
    if part in ("all", "reflected"):
        psi = np.exp(-2j * kz * w)
        T[..., 0, 0] -= R[..., 0, 0] * psi / q
        T[..., 0, 1] += R[..., 0, 1] * psi
        T[..., 1, 0] -= R[..., 1, 0] * psi
        T[..., 1, 1] += q * R[..., 1, 1] * psi
    elif part != "vacuum":
        raise ValueError(f"part must be 'all', 'vacuum' or 'reflected', got {part!r}")
    return T


def _to_cartesian(T, kx, ky):
    U = local_to_cartesian(kx, ky)
    return U @ T @ np.swapaxes(U, -1, -2)


def kernel_integrand(provider, mode, w, part="all"):
    """Kernel integrand at one mode, in Cartesian (x, y) components."""
    if not w < 0:
        raise ValueError(f"dipoles must sit in the vacuum region w < 0, got {w!r}")
    R = provider.reflect(mode)
    T = kernel_local(R, mode.kz, mode.omega, mode.c, w, part)
    return _to_cartesian(T, *mode.kperp)


def vacuum_kernel(omega, delta_x, c=1.0):
    """Closed-form free-space kernel (i/omega) G_perp for in-plane separation dx != 0.

    G is the Gaussian-units dipole field tensor
    exp(i k r) [k^2 (1 - n n)/r + (3 n n - 1)(1/r^3 - i k/r^2)].
    """
    dx = np.asarray(delta_x, dtype=float)
    r = float(np.hypot(*dx))
    if r == 0:
        raise ValueError("the free-space kernel is singular at zero separation")
    k = omega / c
    n = dx / r
    nn = np.outer(n, n)
    eye = np.eye(2)
    G = np.exp(1j * k * r) * (k**2 * (eye - nn) / r + (3 * nn - eye) * (1 / r**3 - 1j * k / r**2))
    return 1j / omega * G


@dataclass(frozen=True, eq=False)
class KernelTensor:
    """Retarded kernel at (omega, dx, w) with its parts.

    ``t = pw + ew_reflected + vacuum_reactive``. The EW vacuum term is the
    reactive near field; it diverges at dx = 0 and is then left out
    (``vacuum_reactive`` is None and ``t`` excludes it).
    """

    t: np.ndarray
    pw: np.ndarray
    ew_reflected: np.ndarray
    vacuum_reactive: np.ndarray
    error: float
    omega: float
    delta_x: tuple
    w: float


def _phase(kx, ky, delta_x):
    return np.exp(1j * (kx * delta_x[0] + ky * delta_x[1]))


def retarded_kernel(provider, omega, delta_x, w, quad_spec=QuadSpec(), c=1.0, include_reactive_vacuum=True):
    """Numerical k_perp integral of the kernel.

    PW band: full integrand. EW band: reflected terms, truncated where
    exp(-2 |k_z| |w|) < quad_spec.ew_cutoff. The EW vacuum terms do not
    decay; they are added in closed form (free-space kernel minus its
    dissipative part) when dx != 0.
    """
    if not w < 0:
        raise ValueError(f"dipoles must sit in the vacuum region w < 0, got {w!r}")
    delta_x = tuple(float(v) for v in delta_x)
    sep = float(np.hypot(*delta_x))

    def integrand(part):
        def f(kz, kx, ky):
            R = provider.matrix(omega, kx, ky, c)
            T = _to_cartesian(kernel_local(R, kz, omega, c, w, part), kx, ky)
            return T * _phase(kx, ky, delta_x)[:, None, None]

        return f

    bp = provider.critical_kperp(omega, c)
    pref = 1 / (2 * np.pi * c)
    pw = integrate_band(integrand("all"), omega, "PW", quad_spec, c=c, breakpoints=bp, oscillation=sep)
    ew = integrate_band(
        integrand("reflected"), omega, "EW", quad_spec, c=c, depth=-w, breakpoints=bp, oscillation=sep
    )
    t = pref * (pw.value + ew.value)
    reactive = None
    if include_reactive_vacuum and sep > 0:
        reactive = 1j * vacuum_kernel(omega, delta_x, c).imag
        t = t + reactive
    return KernelTensor(
        t, pref * pw.value, pref * ew.value, reactive, pref * (pw.error + ew.error), float(omega), delta_x, float(w)
    )


def _modewise_pair(provider, mode, state, w, corrupt):
    R = provider.reflect(mode)
    f = thermal_factor(mode.omega, state)
    M = spectral_matrix_local(R, mode.kz, mode.omega, f, mode.c, w, corrupt)
    T = kernel_local(R, mode.kz, mode.omega, mode.c, w)
    M_kernel = -(2 * np.pi * f / mode.c) * (T + _dagger(T))
    return R, f, _to_cartesian(M, *mode.kperp), _to_cartesian(M_kernel, *mode.kperp)


def fdt_residual_modewise(provider, mode, state, w, corrupt=False):
    """Relative mismatch between the correlator and kernel sides at one mode.

    The denominator is max(|M|, kappa |W_out|^2) with kappa the modal
    prefactor 2 pi omega F / (c^2 |k_z|), so that modes where both sides
    vanish (hermitean R on the EW band, standing-wave nodes) do not turn
    rounding noise into O(1) residuals.
    """
    if not w < 0:
        raise ValueError(f"field point must satisfy w < 0, got {w!r}")
    mode.require_off_cone()
    R, f, M, M_kernel = _modewise_pair(provider, mode, state, w, corrupt)
    kz = mode.kz
    kappa = 2 * np.pi * mode.omega * f / (mode.c**2 * abs(kz))
    q = mode.c * kz / mode.omega
    w_out_sq = abs(np.exp(-1j * kz * w)) ** 2 * (1 + abs(q) ** 2)
    scale = max(np.linalg.norm(M), kappa * w_out_sq)
    return float(np.linalg.norm(M - M_kernel) / scale)


def realspace_sides(provider, omega, delta_x, w, state, quad_spec=QuadSpec(), c=1.0):
    """Both sides of the integrated identity at separation dx.

    Returns (lhs, rhs, error) with lhs = 2 pi S(dx) from the correlators
    and rhs = -F [K(dx) + K(-dx)^+] from the retarded kernel.
    """
    if not w < 0:
        raise ValueError(f"field point must satisfy w < 0, got {w!r}")
    delta_x = tuple(float(v) for v in delta_x)
    sep = float(np.hypot(*delta_x))
    f = thermal_factor(omega, state)

    def spectral(kz, kx, ky):
        R = provider.matrix(omega, kx, ky, c)
        M = _to_cartesian(spectral_matrix_local(R, kz, omega, f, c, w), kx, ky)
        return M * _phase(kx, ky, delta_x)[:, None, None]

    bp = provider.critical_kperp(omega, c)
    pw = integrate_band(spectral, omega, "PW", quad_spec, c=c, breakpoints=bp, oscillation=sep)
    ew = integrate_band(spectral, omega, "EW", quad_spec, c=c, depth=-w, breakpoints=bp, oscillation=sep)
    lhs = (pw.value + ew.value) / (2 * np.pi) ** 2
    lhs_err = (pw.error + ew.error) / (2 * np.pi) ** 2

    forward = retarded_kernel(provider, omega, delta_x, w, quad_spec, c, include_reactive_vacuum=sep > 0)
    backward = retarded_kernel(
        provider, omega, (-delta_x[0], -delta_x[1]), w, quad_spec, c, include_reactive_vacuum=sep > 0
    )
    rhs = -f * (forward.t + _dagger(backward.t))
    return lhs, rhs, lhs_err + f * (forward.error + backward.error)


def fdt_residual_realspace(provider, omega, delta_x, w, state, quad_spec=QuadSpec(), c=1.0):
    lhs, rhs, _ = realspace_sides(provider, omega, delta_x, w, state, quad_spec, c)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs))
