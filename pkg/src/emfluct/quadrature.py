"""Integration over the transverse wavevector plane.

The two bands are parametrized so that the 1/k_z factors of the correlators
cancel against the Jacobian:

    PW band  t = k_z   in (0, k0):  k_perp = sqrt(k0^2 - t^2), d^2k = t dt dphi
    EW band  t = |k_z| in (0, U):   k_perp = sqrt(k0^2 + t^2), d^2k = t dt dphi

The radial integral uses adaptive Gauss-Kronrod panels (scipy's quad_vec);
the azimuthal one uses the trapezoid rule on nodes 2 pi j / N, doubled until
two successive levels agree. For even N the node set is symmetric under
k -> -k. The EW band is cut where exp(-2 t depth) drops below
``QuadSpec.ew_cutoff`` and the neglected tail is bounded by its leading
exponential term.
"""
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .exceptions import QuadratureError

__all__ = ["QuadSpec", "BandResult", "integrate_band", "integrate_plane"]


@dataclass(frozen=True)
class QuadSpec:
    epsrel: float = 1e-10
    epsabs: float = 0.0
    max_panels: int = 2000
    n_phi: int = 8
    max_phi: int = 1 << 14
    ew_cutoff: float = 1e-16


@dataclass(frozen=True)
class BandResult:
    value: np.ndarray
    error: float


def _azimuthal(func, t, kz, kperp, spec, oscillation):
    """Trapezoid over phi with node doubling.

    Returns (value, residual). Refinement also stops once the change between
    levels stalls, which happens at the rounding-noise floor near branch
    points of R; that floor is returned as ``residual``.
    """
    n = spec.n_phi
    if oscillation:
        n = max(n, 1 << int(np.ceil(np.log2(kperp * oscillation + 8))))
    n_start = n
    phi = 2 * np.pi * np.arange(n) / n
    total = func(kz, kperp * np.cos(phi), kperp * np.sin(phi)).sum(axis=0) * (2 * np.pi / n)
    previous = np.inf
    while True:
        if 2 * n > spec.max_phi:
            raise QuadratureError(f"azimuthal rule not converged with {n} nodes at t={t:.6g}", float(previous))
        phi = 2 * np.pi * (np.arange(n) + 0.5) / n
        extra = func(kz, kperp * np.cos(phi), kperp * np.sin(phi)).sum(axis=0) * (2 * np.pi / n)
        refined = 0.5 * (total + extra)
        n *= 2
        change = float(np.max(np.abs(refined - total)))
        total = refined
        if change <= max(spec.epsrel * np.max(np.abs(refined)), spec.epsabs):
            return total, 0.0
        if n >= 8 * n_start and change > 0.5 * previous:
            return total, change
        previous = change


def integrate_band(func, omega, band, spec=QuadSpec(), *, c=1.0, depth=None, breakpoints=(), oscillation=0.0):
    """Integrate ``func`` over one band of the k_perp plane.

    ``func(kz, kx, ky)`` receives a scalar k_z and arrays of azimuthal
    nodes and returns an array with the node axis first. ``depth`` (> 0)
    sets the EW decay length scale exp(-2 |k_z| depth) used for the cutoff.
    ``breakpoints`` are k_perp values where the integrand has kinks.
    """
    k0 = omega / c
    stalled = [0.0]

    def azimuthal(t, kz, kperp):
        value, residual = _azimuthal(func, t, kz, kperp, spec, oscillation)
        stalled[0] = max(stalled[0], t * residual)
        return value

    if band == "PW":
        lo, hi = 0.0, k0

        def radial(t):
            kz = complex(t)
            kperp = np.sqrt(max((k0 - t) * (k0 + t), 0.0))
            return t * azimuthal(t, kz, kperp)

        points = [np.sqrt(k0**2 - k**2) for k in breakpoints if 0 < k < k0]
    elif band == "EW":
        if depth is None or not depth > 0:
            raise ValueError("EW integration needs a positive decay depth")
        lo, hi = 0.0, np.log(1 / spec.ew_cutoff) / (2 * depth)

        def radial(t):
            kz = complex(0.0, t)
            kperp = np.sqrt(k0**2 + t**2)
            return t * azimuthal(t, kz, kperp)

        points = [np.sqrt(k**2 - k0**2) for k in breakpoints if k > k0]
        points.append(1.0 / depth)
        points = [p for p in points if 0 < p < hi]
    else:
        raise ValueError(f"band must be 'PW' or 'EW', got {band!r}")

    points = sorted(set(points))
    value, err, info = quad_vec(
        radial,
        lo,
        hi,
        epsabs=max(spec.epsabs, 1e-300),
        epsrel=spec.epsrel,
        norm="max",
        limit=spec.max_panels,
        points=points or None,
        full_output=True,
    )
    if info.status == 1:
        raise QuadratureError(f"{band} band: panel budget {spec.max_panels} exhausted", float(err))
    err += stalled[0] * (hi - lo)
    if band == "EW":
        # integrand ~ P(t) exp(-2 t depth); leading-order tail bound
        edge = np.max(np.abs(radial(hi)))
        err += edge / (2 * depth) * (1 + 4 / (2 * depth * hi))
    return BandResult(np.asarray(value), float(err))


def integrate_plane(func_pw, func_ew, omega, spec=QuadSpec(), *, c=1.0, depth=None, breakpoints=(), oscillation=0.0):
    """Both bands; returns (pw, ew) :class:`BandResult` pairs. ``func_ew`` may be None."""
    pw = integrate_band(func_pw, omega, "PW", spec, c=c, breakpoints=breakpoints, oscillation=oscillation)
    if func_ew is None:
        return pw, None
    ew = integrate_band(
        func_ew, omega, "EW", spec, c=c, depth=depth, breakpoints=breakpoints, oscillation=oscillation
    )
    return pw, ew
