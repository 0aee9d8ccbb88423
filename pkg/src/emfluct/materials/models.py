"""Reflection-matrix providers for a half-space filling z > 0.

Every provider exposes ``matrix(omega, kx, ky, c)``, vectorized over
broadcastable arrays and returning ``(..., 2, 2)`` complex arrays with
rows/columns ordered (s, p); entry [lam, mu] maps incident polarization mu
to reflected polarization lam. The sign convention follows the field basis
in :mod:`emfluct.kinematics`: a perfect mirror has R = diag(-1, +1).

Media wavenumbers are taken on the branch Im k_z >= 0.
"""
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import ModelDomainError, NumericalError
from ..kinematics import longitudinal_wavenumber, sqrt_upper
from .dispersion import as_dispersion

__all__ = [
    "ReflectionModel",
    "Vacuum",
    "Mirror",
    "ConstantReflection",
    "FresnelHalfSpace",
    "Layer",
    "Multilayer",
    "FedorovChiral",
    "DrudeBornChiral",
    "fresnel_halfspace",
    "multilayer_reflection",
    "fedorov_reflection",
    "drude_born_reflection",
]


class ReflectionModel:
    """Common interface of all providers."""

    #: tolerance used by the admissibility checks unless overridden
    default_tol = 1e-10

    def matrix(self, omega, kx, ky, c=1.0):
        raise NotImplementedError

    def reflect(self, mode):
        """Reflection matrix at a single off-cone :class:`~emfluct.kinematics.Mode`."""
        mode.require_off_cone()
        return self.matrix(mode.omega, mode.kperp[0], mode.kperp[1], mode.c)

    def critical_kperp(self, omega, c=1.0):
        """k_perp values where R is not smooth (branch points, poles).

        Only used as quadrature breakpoints; an empty tuple is always valid.
        """
        return ()


def _shape(omega, kx, ky):
    return np.broadcast(np.asarray(omega), np.asarray(kx), np.asarray(ky)).shape


def _diagonal(r_s, r_p):
    r_s, r_p = np.broadcast_arrays(r_s, r_p)
    out = np.zeros(r_s.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = r_s
    out[..., 1, 1] = r_p
    return out


def _medium_kz(eps, mu, k0, k):
    return sqrt_upper(eps * mu * k0**2 - k**2)


def _interface(eps_i, mu_i, kz_i, eps_j, mu_j, kz_j):
    """Reflection of an i-side wave at an i|j interface, per polarization."""
    r_s = (mu_j * kz_i - mu_i * kz_j) / (mu_j * kz_i + mu_i * kz_j)
    r_p = (eps_j * kz_i - eps_i * kz_j) / (eps_j * kz_i + eps_i * kz_j)
    return r_s, r_p


@dataclass(frozen=True)
class Vacuum(ReflectionModel):
    """No surface at all: R = 0 (a black surface)."""

    def matrix(self, omega, kx, ky, c=1.0):
        return np.zeros(_shape(omega, kx, ky) + (2, 2), dtype=complex)


@dataclass(frozen=True)
class Mirror(ReflectionModel):
    """Perfect conductor, R = diag(-1, +1)."""

    def matrix(self, omega, kx, ky, c=1.0):
        shape = _shape(omega, kx, ky)
        return _diagonal(np.full(shape, -1.0 + 0j), np.full(shape, 1.0 + 0j))


@dataclass(frozen=True, eq=False)
class ConstantReflection(ReflectionModel):
    """Mode-independent reflection matrix; useful for probing formulas."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=complex)
        if r.shape != (2, 2):
            raise ValueError(f"reflection matrix must be 2x2, got shape {r.shape}")
        object.__setattr__(self, "r", r)

    def matrix(self, omega, kx, ky, c=1.0):
        return np.broadcast_to(self.r, _shape(omega, kx, ky) + (2, 2)).copy()


@dataclass(frozen=True)
class FresnelHalfSpace(ReflectionModel):
    epsilon: object
    mu: object = 1.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_dispersion(self.epsilon))
        object.__setattr__(self, "mu", as_dispersion(self.mu))

    def matrix(self, omega, kx, ky, c=1.0):
        k = np.hypot(kx, ky)
        k0 = np.asarray(omega, dtype=float) / c
        eps, mu = self.epsilon(omega), self.mu(omega)
        kz = longitudinal_wavenumber(omega, k, c)
        r_s, r_p = _interface(1.0, 1.0, kz, eps, mu, _medium_kz(eps, mu, k0, k))
        return _diagonal(r_s, r_p)

    def critical_kperp(self, omega, c=1.0):
        k0 = omega / c
        eps, mu = complex(self.epsilon(omega)), complex(self.mu(omega))
        points = [k0 * sqrt_upper(eps * mu).real]
        # surface polariton pole of r_pp: eps kz + kz_m = 0
        if mu == 1 and eps.real < -1:
            points.append(k0 * np.sqrt(eps / (eps + 1)).real)
        return tuple(p for p in points if p > 0)


def fresnel_halfspace(epsilon, mu, mode):
    return FresnelHalfSpace(epsilon, mu).reflect(mode)


@dataclass(frozen=True)
class Layer:
    epsilon: object
    thickness: float
    mu: object = 1.0

    def __post_init__(self):
        if not self.thickness >= 0:
            raise ValueError(f"layer thickness must be >= 0, got {self.thickness!r}")
        object.__setattr__(self, "epsilon", as_dispersion(self.epsilon))
        object.__setattr__(self, "mu", as_dispersion(self.mu))


@dataclass(frozen=True)
class Multilayer(ReflectionModel):
    """Planar stack on a semi-infinite substrate.

    ``layers[0]`` touches the vacuum. The stack is folded from the substrate
    upwards by composing reflection coefficients, so only factors
    exp(2 i k_z d) with |.| <= 1 appear and thick evanescent layers cannot
    overflow.
    """

    layers: tuple = ()
    substrate: FresnelHalfSpace = field(default_factory=lambda: FresnelHalfSpace(1.0))

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not isinstance(self.substrate, FresnelHalfSpace):
            object.__setattr__(self, "substrate", FresnelHalfSpace(self.substrate))

    def matrix(self, omega, kx, ky, c=1.0):
        k = np.hypot(kx, ky)
        k0 = np.asarray(omega, dtype=float) / c
        media = [(1.0, 1.0, longitudinal_wavenumber(omega, k, c), None)]
        for layer in self.layers:
            eps, mu = layer.epsilon(omega), layer.mu(omega)
            media.append((eps, mu, _medium_kz(eps, mu, k0, k), layer.thickness))
        eps, mu = self.substrate.epsilon(omega), self.substrate.mu(omega)
        media.append((eps, mu, _medium_kz(eps, mu, k0, k), None))

        r_s, r_p = _interface(*media[-2][:3], *media[-1][:3])
        for j in range(len(media) - 2, 0, -1):
            eps_j, mu_j, kz_j, d_j = media[j]
            phase = np.exp(2j * kz_j * d_j)
            a_s, a_p = _interface(*media[j - 1][:3], eps_j, mu_j, kz_j)
            r_s = (a_s + r_s * phase) / (1 + a_s * r_s * phase)
            r_p = (a_p + r_p * phase) / (1 + a_p * r_p * phase)
            if not (np.all(np.isfinite(r_s)) and np.all(np.isfinite(r_p))):
                raise NumericalError(f"non-finite reflection coefficient at layer {j - 1}")
        if not (np.all(np.isfinite(r_s)) and np.all(np.isfinite(r_p))):
            raise NumericalError("non-finite reflection coefficient at the substrate interface")
        return _diagonal(r_s, r_p)

    def critical_kperp(self, omega, c=1.0):
        k0 = omega / c
        points = set(self.substrate.critical_kperp(omega, c))
        for layer in self.layers:
            n = sqrt_upper(complex(layer.epsilon(omega)) * complex(layer.mu(omega)))
            if n.real > 0:
                points.add(k0 * n.real)
        return tuple(sorted(points))


def multilayer_reflection(model, mode):
    return model.reflect(mode)


def _chiral_halfspace(omega, kx, ky, c, wavenumbers, admittances):
    """Match vacuum s/p waves to the two helicity eigenmodes of a chiral medium.

    ``wavenumbers[sigma]`` is |K| of the helicity-sigma mode (sigma = +1, -1)
    and ``admittances[sigma]`` the factor Y in H = -i sigma Y E for that mode.
    Solves the 4x4 continuity system for tangential E and H at z = 0 with
    unknowns (b_s, b_p, t_plus, t_minus).
    """
    k = np.hypot(kx, ky)
    k0 = np.asarray(omega, dtype=float) / c
    kz = longitudinal_wavenumber(omega, k, c)
    q = kz / k0
    shape = np.broadcast(q, wavenumbers[1], wavenumbers[-1]).shape
    q = np.broadcast_to(q, shape)

    A = np.zeros(shape + (4, 4), dtype=complex)
    A[..., 0, 0] = 1.0
    A[..., 1, 1] = q
    A[..., 2, 1] = -1.0
    A[..., 3, 0] = q
    for col, sigma in ((2, 1), (3, -1)):
        K = wavenumbers[sigma]
        Y = admittances[sigma]
        ratio = sqrt_upper(K**2 - k**2) / K
        A[..., 0, col] = -1.0
        A[..., 1, col] = 1j * sigma * ratio
        A[..., 2, col] = 1j * sigma * Y
        A[..., 3, col] = Y * ratio

    rhs = np.zeros(shape + (4, 2), dtype=complex)
    rhs[..., 0, 0] = -1.0  # incident s
    rhs[..., 3, 0] = q
    rhs[..., 1, 1] = q  # incident p
    rhs[..., 2, 1] = 1.0
    sol = np.linalg.solve(A, rhs)
    return sol[..., :2, :]


@dataclass(frozen=True)
class FedorovChiral(ReflectionModel):
    """D = eps (E + beta curl E), B = mu (H + beta curl H).

    Helicity-sigma eigenmodes have wavenumber k0 n / (1 - sigma beta k0 n)
    with n = sqrt(eps mu); both must propagate forward, which requires
    |beta k0 n| < 1.
    """

    epsilon: object
    mu: object = 1.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_dispersion(self.epsilon))
        object.__setattr__(self, "mu", as_dispersion(self.mu))

    def _eigenmodes(self, omega, c):
        k0 = np.asarray(omega, dtype=float) / c
        eps, mu = self.epsilon(omega), self.mu(omega)
        n = sqrt_upper(eps * mu)
        chi = self.beta * k0 * n
        if np.any(np.abs(chi) >= 1):
            raise ModelDomainError(
                f"Fedorov model needs |beta k0 n| < 1, got max {np.max(np.abs(chi)):.6g}"
            )
        wavenumbers = {s: k0 * n / (1 - s * chi) for s in (1, -1)}
        admittances = {s: n / mu for s in (1, -1)}
        return wavenumbers, admittances

    def matrix(self, omega, kx, ky, c=1.0):
        return _chiral_halfspace(omega, kx, ky, c, *self._eigenmodes(omega, c))

    def critical_kperp(self, omega, c=1.0):
        wavenumbers, _ = self._eigenmodes(omega, c)
        return tuple(sorted(float(np.real(K)) for K in wavenumbers.values() if np.real(K) > 0))


def fedorov_reflection(model, mode):
    return model.reflect(mode)


@dataclass(frozen=True)
class DrudeBornChiral(ReflectionModel):
    """D = eps E - f curl E, B = H.

    Helicity eigenmodes satisfy kappa^2 + k0^2 f kappa - k0^2 eps = 0 for
    curl E = kappa E; the two roots must have opposite signs.
    """

    epsilon: object
    f: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_dispersion(self.epsilon))

    def _eigenmodes(self, omega, c):
        k0 = np.asarray(omega, dtype=float) / c
        eps = self.epsilon(omega)
        disc = np.sqrt(k0**4 * self.f**2 + 4 * k0**2 * eps + 0j)
        wavenumbers = {s: s * (-(k0**2) * self.f + s * disc) / 2 for s in (1, -1)}
        if any(np.any(np.real(K) <= 0) for K in wavenumbers.values()):
            raise ModelDomainError("Drude-Born model: helicity eigenmodes are not both forward")
        admittances = {s: wavenumbers[s] / k0 for s in (1, -1)}
        return wavenumbers, admittances

    def matrix(self, omega, kx, ky, c=1.0):
        return _chiral_halfspace(omega, kx, ky, c, *self._eigenmodes(omega, c))

    def critical_kperp(self, omega, c=1.0):
        wavenumbers, _ = self._eigenmodes(omega, c)
        return tuple(sorted(float(np.real(K)) for K in wavenumbers.values()))


def drude_born_reflection(model, mode):
    return model.reflect(mode)
