"""Thermodynamic admissibility checks on reflection providers.

Three independent screens:

* Onsager reciprocity, comparing each sampled k_perp with -k_perp:
  r_ss(k) = r_ss(-k), r_pp(k) = r_pp(-k), r_sp(k) = -r_ps(-k).
* Hermiticity of R on the evanescent band. A hermitean R makes the
  evanescent surface correlator vanish, so such a surface is EW-dark.
* Passivity on the propagating band, i.e. largest singular value of R at most 1.

Passivity is reported on its own and never folded into the Onsager verdict.
"""
import json
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import BandError
from .kinematics import Mode, ModeKind, make_mode

__all__ = [
    "SymmetryReport",
    "BoundReport",
    "onsager_check",
    "hermiticity_check",
    "passivity_check",
    "default_sample_grid",
    "sample_modes",
]


def _mode_dict(mode):
    if mode is None:
        return None
    return {
        "omega": mode.omega,
        "kperp": list(mode.kperp),
        "kz": [mode.kz.real, mode.kz.imag],
        "kind": mode.kind.value,
    }


class _JsonReport:
    def to_dict(self):
        d = asdict(self)
        d["worst_mode"] = _mode_dict(self.worst_mode)
        return d

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True)
class SymmetryReport(_JsonReport):
    """Suprema of the three reciprocity defects over a sample set.

    ``passed`` is true iff every ``max_violation_*`` is at most ``tol``.
    """

    samples: int
    max_violation_ss: float
    max_violation_pp: float
    max_violation_sp_ps: float
    passed: bool
    worst_mode: Mode
    tol: float
    check: str = "onsager"

    @property
    def max_violation(self):
        return max(self.max_violation_ss, self.max_violation_pp, self.max_violation_sp_ps)


@dataclass(frozen=True)
class BoundReport(_JsonReport):
    """Supremum of a single nonnegative defect (hermiticity or passivity)."""

    check: str
    samples: int
    max_violation: float
    passed: bool
    worst_mode: Mode
    tol: float


def _tolerance(provider, tol):
    return provider.default_tol if tol is None else float(tol)


def sample_modes(omega_samples, kperp_samples, relative=False, c=1.0):
    """Cross product of frequencies and transverse wavevectors as Modes.

    With ``relative`` the kperp vectors are read in units of omega / c.
    Grazing samples raise :class:`GrazingModeError`.
    """
    omega_samples = [float(w) for w in omega_samples]
    kperp_samples = [tuple(float(v) for v in k) for k in kperp_samples]
    if not omega_samples or not kperp_samples:
        raise ValueError("sample sets must be non-empty")
    modes = []
    for w in omega_samples:
        scale = w / c if relative else 1.0
        for kx, ky in kperp_samples:
            mode = make_mode(w, (kx * scale, ky * scale), c)
            mode.require_off_cone()
            modes.append(mode)
    return modes


def _as_modes(samples, c):
    modes = []
    for s in samples:
        mode = s if isinstance(s, Mode) else make_mode(s[0], s[1], c)
        mode.require_off_cone()
        modes.append(mode)
    if not modes:
        raise ValueError("sample set must be non-empty")
    return modes


def _batched(provider, modes, sign=1.0):
    """R at every mode; one provider call per distinct omega."""
    out = np.empty((len(modes), 2, 2), dtype=complex)
    by_omega = {}
    for i, m in enumerate(modes):
        by_omega.setdefault((m.omega, m.c), []).append(i)
    for (omega, c), idx in by_omega.items():
        kx = np.array([modes[i].kperp[0] for i in idx])
        ky = np.array([modes[i].kperp[1] for i in idx])
        out[idx] = provider.matrix(omega, sign * kx, sign * ky, c)
    return out


def onsager_check(provider, omega_samples, kperp_samples, tol=None, *, relative=False, c=1.0):
    """Reciprocity defects between k_perp and -k_perp on a sample grid.

    Parameters
    ----------
    provider : ReflectionModel
    omega_samples : sequence of float
    kperp_samples : sequence of 2-vectors
        Absolute transverse wavevectors, or in units of omega / c when
        ``relative`` is set.
    tol : float, optional
        Defaults to ``provider.default_tol``.

    Returns
    -------
    SymmetryReport
    """
    tol = _tolerance(provider, tol)
    modes = sample_modes(omega_samples, kperp_samples, relative, c)
    fwd = _batched(provider, modes)
    bwd = _batched(provider, modes, sign=-1.0)
    d_ss = np.abs(fwd[:, 0, 0] - bwd[:, 0, 0])
    d_pp = np.abs(fwd[:, 1, 1] - bwd[:, 1, 1])
    d_sp = np.maximum(np.abs(fwd[:, 0, 1] + bwd[:, 1, 0]), np.abs(fwd[:, 1, 0] + bwd[:, 0, 1]))
    worst = np.maximum(np.maximum(d_ss, d_pp), d_sp)
    if not np.all(np.isfinite(worst)):
        bad = modes[int(np.flatnonzero(~np.isfinite(worst))[0])]
        raise ArithmeticError(f"provider returned non-finite R at omega={bad.omega!r}, kperp={bad.kperp!r}")
    mx = (float(d_ss.max()), float(d_pp.max()), float(d_sp.max()))
    return SymmetryReport(
        samples=len(modes),
        max_violation_ss=mx[0],
        max_violation_pp=mx[1],
        max_violation_sp_ps=mx[2],
        passed=bool(max(mx) <= tol),
        worst_mode=modes[int(np.argmax(worst))],
        tol=tol,
    )


def _bound_report(check, modes, defect, tol):
    i = int(np.argmax(defect))
    worst = float(defect[i])
    return BoundReport(check, len(modes), worst, bool(worst <= tol), modes[i], tol)


def hermiticity_check(provider, samples, tol=None, c=1.0):
    """sup ||R - R^+|| (spectral norm) over EW samples.

    ``samples`` holds Modes or (omega, kperp) pairs. A pass means the
    evanescent surface correlator vanishes at every sampled mode.
    """
    tol = _tolerance(provider, tol)
    modes = _as_modes(samples, c)
    for m in modes:
        if m.kind is not ModeKind.EW:
            raise BandError(f"hermiticity is checked on EW modes only, got {m.kind.value} at kperp={m.kperp!r}")
    R = _batched(provider, modes)
    defect = np.linalg.norm(R - np.conj(np.swapaxes(R, -1, -2)), ord=2, axis=(-2, -1))
    return _bound_report("hermiticity", modes, defect, tol)


def passivity_check(provider, samples, tol=None, c=1.0):
    """sup(sigma_max(R) - 1) over PW samples, clipped at zero.

    A pass implies 1 - R R^+ is positive semidefinite at every sampled mode.
    """
    tol = _tolerance(provider, tol)
    modes = _as_modes(samples, c)
    for m in modes:
        if m.kind is not ModeKind.PW:
            raise BandError(f"passivity is checked on PW modes only, got {m.kind.value} at kperp={m.kperp!r}")
    R = _batched(provider, modes)
    sigma = np.linalg.norm(R, ord=2, axis=(-2, -1))
    return _bound_report("passivity", modes, np.maximum(sigma - 1, 0.0), tol)


def default_sample_grid(omega_min=0.1, omega_max=100.0, count=7, band="both", azimuths=8):
    """Log-spaced frequencies and sign-symmetric kperp directions.

    Transverse wavevectors sit at fixed fractions of omega / c on the
    requested band(s), each along ``azimuths`` evenly spaced directions
    (an even count so that k and -k are both present).

    Returns
    -------
    (omegas, directions)
        Ready for ``onsager_check(provider, omegas, directions, relative=True)``
        or ``sample_modes(omegas, directions, relative=True)``.
    """
    if azimuths < 2 or azimuths % 2:
        raise ValueError(f"azimuths must be an even number >= 2, got {azimuths}")
    fractions = {"PW": (0.1, 0.5, 0.9, 0.99), "EW": (1.01, 1.3, 2.0, 5.0)}
    if band == "both":
        frac = fractions["PW"] + fractions["EW"]
    elif band in fractions:
        frac = fractions[band]
    else:
        raise ValueError(f"band must be 'PW', 'EW' or 'both', got {band!r}")
    omegas = np.geomspace(omega_min, omega_max, count)
    phi = 2 * np.pi * np.arange(azimuths) / azimuths
    directions = [(a * np.cos(p), a * np.sin(p)) for a in frac for p in phi]
    return list(omegas), directions
