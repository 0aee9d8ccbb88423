"""Reflection matrices from measured or precomputed tables.

CSV layout (rows sorted by omega, then kperp, forming a full grid)::

    omega,kperp,re_rss,im_rss,re_rsp,im_rsp,re_rps,im_rps,re_rpp,im_rpp

Strict tables add a ``phi`` column (azimuth of k_perp in radians, grid in
[0, 2 pi)) after ``kperp`` and are sorted by (omega, kperp, phi).

Isotropic tables give R on the half-plane of directions with
-pi/2 < phi <= pi/2 (plus k_perp = 0). The opposite half-plane is filled with

    R(-k) = [[r_ss(k), -r_ps(k)], [-r_sp(k), r_pp(k)]]

which satisfies the reciprocity conditions identically. For rotation
invariant reciprocal data (r_sp = -r_ps) this is the same as R(-k) = R(k);
data violating that are flagged with a warning at load time.
"""
import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..exceptions import TableParseError, TableRangeError
from .models import ReflectionModel

__all__ = ["Tabulated", "read_reflection_csv", "write_reflection_csv", "tabulated_reflection"]

VALUE_COLUMNS = ["re_rss", "im_rss", "re_rsp", "im_rsp", "re_rps", "im_rps", "re_rpp", "im_rpp"]
ISOTROPIC_HEADER = ["omega", "kperp"] + VALUE_COLUMNS
STRICT_HEADER = ["omega", "kperp", "phi"] + VALUE_COLUMNS


def _pack(values):
    """(..., 8) real columns -> (..., 2, 2) complex matrix."""
    z = values[..., 0::2] + 1j * values[..., 1::2]
    return z.reshape(z.shape[:-1] + (2, 2))


def _unpack(r):
    r = np.asarray(r, dtype=complex).reshape(r.shape[:-2] + (4,))
    out = np.empty(r.shape[:-1] + (8,))
    out[..., 0::2] = r.real
    out[..., 1::2] = r.imag
    return out


@dataclass(frozen=True, eq=False)
class Tabulated(ReflectionModel):
    """Bilinear (isotropic) or trilinear (strict) interpolation of R.

    ``values`` has shape (n_omega, n_kperp, 2, 2) for isotropic tables and
    (n_omega, n_kperp, n_phi, 2, 2) for strict ones.
    """

    omega: np.ndarray
    kperp: np.ndarray
    values: np.ndarray
    phi: np.ndarray = None
    default_tol = 1e-6

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        kp = np.asarray(self.kperp, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        for name, axis in (("omega", om), ("kperp", kp)):
            if axis.ndim != 1 or axis.size < 2 or np.any(np.diff(axis) <= 0):
                raise ValueError(f"{name} grid needs >= 2 strictly increasing values")
        grid = [om, kp]
        expected = (om.size, kp.size)
        if self.phi is not None:
            ph = np.asarray(self.phi, dtype=float)
            if ph.ndim != 1 or ph.size < 2 or np.any(np.diff(ph) <= 0) or ph[0] != 0 or ph[-1] >= 2 * np.pi:
                raise ValueError("phi grid must start at 0, increase strictly and stay below 2 pi")
            object.__setattr__(self, "phi", ph)
            expected += (ph.size,)
        if vals.shape != expected + (2, 2):
            raise ValueError(f"values shape {vals.shape} does not match grid {expected + (2, 2)}")
        if self.phi is not None:
            # periodic closure in azimuth
            grid.append(np.append(self.phi, 2 * np.pi))
            interp_vals = np.concatenate([vals, vals[:, :, :1]], axis=2)
        else:
            interp_vals = vals
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "kperp", kp)
        object.__setattr__(self, "values", vals)
        interp = RegularGridInterpolator(grid, _unpack(interp_vals), method="linear", bounds_error=False)
        object.__setattr__(self, "_interp", interp)

        if self.phi is None:
            defect = np.max(np.abs(self.values[..., 0, 1] + self.values[..., 1, 0]))
            if defect > self.default_tol:
                warnings.warn(
                    f"table has r_sp + r_ps up to {defect:.3g}; the reciprocal extension to "
                    "-k_perp is then not rotation invariant",
                    stacklevel=3,
                )

    @property
    def strict(self):
        return self.phi is not None

    def _check_hull(self, omega, k):
        if (
            np.any(omega < self.omega[0])
            or np.any(omega > self.omega[-1])
            or np.any(k < self.kperp[0])
            or np.any(k > self.kperp[-1])
        ):
            raise TableRangeError(
                f"query outside table hull omega in [{self.omega[0]}, {self.omega[-1]}], "
                f"kperp in [{self.kperp[0]}, {self.kperp[-1]}]"
            )

    def matrix(self, omega, kx, ky, c=1.0):
        omega, kx, ky = np.broadcast_arrays(
            np.asarray(omega, dtype=float), np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)
        )
        k = np.hypot(kx, ky)
        self._check_hull(omega, k)
        if self.strict:
            phi = np.mod(np.arctan2(ky, kx), 2 * np.pi)
            return _pack(self._interp(np.stack([omega, k, phi], axis=-1)).reshape(k.shape + (8,)))
        r = _pack(self._interp(np.stack([omega, k], axis=-1)).reshape(k.shape + (8,)))
        mirrored = (kx < 0) | ((kx == 0) & (ky < 0))
        ext = r.copy()
        ext[..., 0, 1] = -r[..., 1, 0]
        ext[..., 1, 0] = -r[..., 0, 1]
        return np.where(mirrored[..., None, None], ext, r)

    def critical_kperp(self, omega, c=1.0):
        return tuple(self.kperp[1:-1])


def read_reflection_csv(path):
    """Parse a reflection table; header decides isotropic vs strict."""
    path = Path(path)
    with path.open(newline="") as fh:
        lines = [(n, line) for n, line in enumerate(fh, start=1) if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise TableParseError("empty reflection table")
    header_line, header_text = lines[0]
    header = [h.strip() for h in next(csv.reader([header_text]))]
    if header == ISOTROPIC_HEADER:
        n_keys = 2
    elif header == STRICT_HEADER:
        n_keys = 3
    else:
        raise TableParseError(
            f"unexpected header {','.join(header)!r}; expected {','.join(ISOTROPIC_HEADER)!r}",
            row=header_line,
        )
    ncol = len(header)
    keys, data = [], []
    for lineno, text in lines[1:]:
        row = next(csv.reader([text]))
        if len(row) != ncol:
            raise TableParseError(f"expected {ncol} columns, got {len(row)}", row=lineno)
        try:
            nums = [float(x) for x in row]
        except ValueError as exc:
            raise TableParseError(str(exc), row=lineno) from None
        if not all(np.isfinite(nums)):
            raise TableParseError("non-finite value", row=lineno)
        key = tuple(nums[:n_keys])
        if keys and key <= keys[-1][0]:
            raise TableParseError("rows must be strictly sorted by (omega, kperp[, phi])", row=lineno)
        keys.append((key, lineno))
        data.append(nums[n_keys:])

    axes = [np.unique([k[0][i] for k in keys]) for i in range(n_keys)]
    shape = tuple(a.size for a in axes)
    if int(np.prod(shape)) != len(keys):
        # locate the first row that breaks the full-grid pattern
        expected = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n_keys)
        for (key, lineno), exp in zip(keys, expected):
            if not np.array_equal(key, exp):
                raise TableParseError("table is not a complete rectangular grid", row=lineno)
        raise TableParseError("table is not a complete rectangular grid", row=keys[-1][1])
    values = _pack(np.array(data).reshape(shape + (8,)))
    try:
        if n_keys == 2:
            return Tabulated(axes[0], axes[1], values)
        return Tabulated(axes[0], axes[1], values, phi=axes[2])
    except ValueError as exc:
        raise TableParseError(str(exc)) from None


def write_reflection_csv(path, omega, kperp, values, phi=None):
    """Write a grid of reflection matrices in the layout read by :func:`read_reflection_csv`."""
    omega = np.asarray(omega, dtype=float)
    kperp = np.asarray(kperp, dtype=float)
    cols = _unpack(np.asarray(values, dtype=complex))
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        if phi is None:
            writer.writerow(ISOTROPIC_HEADER)
            for i, w in enumerate(omega):
                for j, k in enumerate(kperp):
                    writer.writerow([repr(float(w)), repr(float(k))] + [repr(float(x)) for x in cols[i, j]])
        else:
            writer.writerow(STRICT_HEADER)
            for i, w in enumerate(omega):
                for j, k in enumerate(kperp):
                    for m, p in enumerate(phi):
                        writer.writerow(
                            [repr(float(w)), repr(float(k)), repr(float(p))]
                            + [repr(float(x)) for x in cols[i, j, m]]
                        )


def tabulated_reflection(table, mode):
    return table.reflect(mode)
