"""Command-line front end.

::

    emfluct reflect    --config m.cfg --omega-min 1 --kperp-min 0 --kperp-max 2 --kperp-count 5
    emfluct validate   --config m.cfg --omega-min 0.1 --omega-max 10 --omega-count 5 --omega-scale log
    emfluct correlate  --config m.cfg --kperp-min 0.5 --kperp-max 3 --kperp-count 6 --kperp-relative --w -0.5
    emfluct spectrum   --config m.cfg --observable energy --z -0.1 -1 --temperature 0.5
    emfluct fdt-check  --config m.cfg --random-modes 200 --seed 1 --delta-x 0.3,0

Exit status: 0 success, 1 validation failure, 2 input error, 3 numerical failure.
"""
import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .correlators import ThermalState, spectral_matrix_local, surface_correlator, thermal_factor
from .exceptions import QuadratureError
from .fdt import fdt_residual_modewise, fdt_residual_realspace
from .kinematics import ModeKind, make_mode
from .materials import load_config
from .materials.tabulated import ISOTROPIC_HEADER, STRICT_HEADER
from .observables import energy_density_spectrum, hemispherical_emissivity
from .quadrature import QuadSpec
from .symmetry import default_sample_grid, hermiticity_check, onsager_check, passivity_check, sample_modes
from .units import PRESETS

__all__ = ["SweepSpec", "main", "build_parser"]

EXIT_OK, EXIT_VALIDATION, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

_ENTRIES = ("ss", "sp", "ps", "pp")
_NEGATIVE_NUMBER = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")


class InputError(ValueError):
    pass


def _grid(lo, hi, count, scale, name):
    if count < 1:
        raise InputError(f"--{name}-count must be >= 1, got {count}")
    if count == 1:
        if hi is not None and hi != lo:
            raise InputError(f"--{name}-count 1 needs --{name}-max equal to --{name}-min or omitted")
        return np.array([float(lo)])
    if hi is None or not lo < hi:
        raise InputError(f"--{name}-min must be < --{name}-max when --{name}-count > 1")
    if scale == "log":
        if not lo > 0:
            raise InputError(f"log-spaced --{name} grid needs a positive minimum")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


@dataclass(frozen=True)
class SweepSpec:
    """Frequencies, transverse wavevectors and heights for one run.

    ``kperp`` holds magnitudes, in units of omega / c when ``kperp_relative``.
    ``phi`` are azimuths in radians.
    """

    omega: np.ndarray
    kperp: np.ndarray
    kperp_relative: bool
    phi: tuple
    z: tuple
    w: tuple
    temperature: float
    output: str = None
    fmt: str = "csv"

    def kperp_at(self, omega, c):
        return self.kperp * (omega / c) if self.kperp_relative else self.kperp

    def points(self, c):
        """(omega, |k|, phi, kx, ky) in sweep order."""
        for omega in self.omega:
            for k in self.kperp_at(omega, c):
                for phi in self.phi:
                    yield float(omega), float(k), float(phi), float(k * np.cos(phi)), float(k * np.sin(phi))


_DEFAULT_KPERP = (0.0, 2.4, 5)


def _sweep(args):
    omega = _grid(args.omega_min, args.omega_max, args.omega_count, args.omega_scale, "omega")
    if not np.all(omega > 0):
        raise InputError("frequencies must be positive")
    if args.kperp_min is None:
        if args.kperp_max is not None:
            raise InputError("--kperp-max given without --kperp-min")
        kperp = _grid(*_DEFAULT_KPERP, "lin", "kperp")
        relative = True
    else:
        kperp = _grid(args.kperp_min, args.kperp_max, args.kperp_count, args.kperp_scale, "kperp")
        relative = args.kperp_relative
    if np.any(kperp < 0):
        raise InputError("kperp magnitudes must be >= 0")
    for z in args.z or ():
        if not z < 0:
            raise InputError(f"field heights must satisfy z < 0 (vacuum side), got {z!r}")
    for w in args.w:
        if not w < 0:
            raise InputError(f"--w values must be < 0 (vacuum side), got {w!r}")
    if not args.temperature >= 0:
        raise InputError("--temperature must be >= 0")
    return SweepSpec(
        omega=omega,
        kperp=kperp,
        kperp_relative=relative,
        phi=tuple(sorted(set(args.phi))),
        z=tuple(args.z or ()),
        w=tuple(args.w),
        temperature=args.temperature,
        output=args.output,
        fmt=args.format,
    )


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return x
    return float(x)


def _fmt(x):
    x = _num(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


class _Context:
    def __init__(self, args):
        self.args = args
        self.units = PRESETS[args.units]
        self.c = self.units.c
        self.provider = load_config(args.config)
        self.sweep = _sweep(args)
        self.state = ThermalState(self.sweep.temperature, self.units.hbar, self.units.kB)
        self.quad = QuadSpec(epsrel=args.rel_tol, max_panels=args.max_panels)

    def header(self):
        return f"emfluct {__version__} {self.args.command} {self.units.describe()} config={self.args.config}"

    def emit(self, columns, rows, summary=None):
        if self.sweep.fmt == "json":
            doc = {
                "tool": "emfluct",
                "version": __version__,
                "command": self.args.command,
                "units": self.units.describe(),
            }
            if summary is not None:
                doc.update(summary)
            doc["columns"] = list(columns)
            doc["rows"] = [{c: _num(v) for c, v in zip(columns, row)} for row in rows]
            text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
        else:
            buf = io.StringIO()
            buf.write(f"# {self.header()}\n")
            if summary is not None:
                for key, value in summary.items():
                    buf.write(f"# {key}: {json.dumps(value, allow_nan=False)}\n")
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows([[_fmt(v) for v in row] for row in rows])
            text = buf.getvalue()
        if self.sweep.output:
            with open(self.sweep.output, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def pool_map(self, func, tasks):
        """Ordered map; results follow task order whatever the completion order."""
        tasks = list(tasks)
        if self.args.workers <= 1 or len(tasks) <= 1:
            return [func(t) for t in tasks]
        with ProcessPoolExecutor(max_workers=self.args.workers) as pool:
            return list(pool.map(func, tasks))


def _complex_columns(prefix):
    return [f"{part}_{prefix}{e}" for e in _ENTRIES for part in ("re", "im")]


def _complex_values(m):
    flat = np.asarray(m).reshape(4)
    return [v for z in flat for v in (z.real, z.imag)]


def _skip_note(n):
    if n:
        print(f"emfluct: skipped {n} grazing mode(s) with k_z = 0", file=sys.stderr)


def cmd_reflect(ctx):
    sweep = ctx.sweep
    with_phi = sweep.phi != (0.0,)
    columns = list(STRICT_HEADER if with_phi else ISOTROPIC_HEADER)
    rows = []
    for omega, k, phi, kx, ky in sweep.points(ctx.c):
        R = ctx.provider.matrix(omega, kx, ky, ctx.c)
        keys = [omega, k, phi] if with_phi else [omega, k]
        rows.append(keys + _complex_values(R))
    ctx.emit(columns, rows)
    return EXIT_OK


def cmd_validate(ctx):
    args, sweep, provider = ctx.args, ctx.sweep, ctx.provider
    omegas = list(sweep.omega)
    if args.kperp_min is None:
        _, directions = default_sample_grid(azimuths=8)
        relative = True
    else:
        phis = sweep.phi if sweep.phi != (0.0,) else tuple(2 * np.pi * np.arange(8) / 8)
        directions = [(k * np.cos(p), k * np.sin(p)) for k in sweep.kperp for p in phis]
        relative = sweep.kperp_relative
    tol = args.tol
    onsager = onsager_check(provider, omegas, directions, tol, relative=relative, c=ctx.c)
    modes = sample_modes(omegas, directions, relative, ctx.c)
    ew = [m for m in modes if m.kind is ModeKind.EW]
    pw = [m for m in modes if m.kind is ModeKind.PW]
    herm = hermiticity_check(provider, ew, tol, ctx.c) if ew else None
    passive = passivity_check(provider, pw, tol, ctx.c) if pw else None
    reports = [("onsager", onsager), ("hermiticity", herm), ("passivity", passive)]

    if sweep.fmt == "json":
        doc = {
            "tool": "emfluct",
            "version": __version__,
            "command": "validate",
            "units": ctx.units.describe(),
            "passed": onsager.passed,
        }
        for name, rep in reports:
            doc[name] = None if rep is None else rep.to_dict()
        text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
        if sweep.output:
            with open(sweep.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        columns = ["check", "samples", "max_violation", "tol", "passed"]
        rows = [[name, rep.samples, rep.max_violation, rep.tol, rep.passed] for name, rep in reports if rep]
        ctx.emit(columns, rows, {"passed": onsager.passed})
    return EXIT_OK if onsager.passed else EXIT_VALIDATION


def cmd_correlate(ctx):
    sweep, provider, c = ctx.sweep, ctx.provider, ctx.c
    columns = ["omega", "kperp", "phi", "band", "w", "c_inf"] + _complex_columns("css_") + _complex_columns("m_")
    rows, skipped = [], 0
    for omega, k, phi, kx, ky in sweep.points(c):
        mode = make_mode(omega, (kx, ky), c)
        if mode.kind is ModeKind.GRAZING:
            skipped += 1
            continue
        R = provider.reflect(mode)
        f = thermal_factor(omega, ctx.state)
        css = surface_correlator(R, mode.kz, omega, f, c)
        c_inf = f * 2 * np.pi * omega / c**2 * (1 / mode.kz).real
        for w in sweep.w:
            M = spectral_matrix_local(R, mode.kz, omega, f, c, w)
            rows.append([omega, k, phi, mode.kind.value, w, c_inf] + _complex_values(css) + _complex_values(M))
    _skip_note(skipped)
    ctx.emit(columns, rows)
    return EXIT_OK


def _emissivity_task(task):
    provider, omega, quad, c = task
    return hemispherical_emissivity(provider, omega, quad, c)


def _energy_task(task):
    provider, omega, z, state, quad, c = task
    return energy_density_spectrum(provider, omega, z, state, quad, c)


def cmd_spectrum(ctx):
    sweep, args = ctx.sweep, ctx.args
    if args.observable == "emissivity":
        tasks = [(ctx.provider, float(w), ctx.quad, ctx.c) for w in sweep.omega]
        results = ctx.pool_map(_emissivity_task, tasks)
        rows = [[p.omega, p.value, p.quadrature_error] for p in results]
        ctx.emit(["omega", "emissivity", "quad_error"], rows)
        return EXIT_OK
    if not sweep.z:
        raise InputError("the energy density needs at least one --z height")
    tasks = [(ctx.provider, float(w), z, ctx.state, ctx.quad, ctx.c) for w in sweep.omega for z in sweep.z]
    results = ctx.pool_map(_energy_task, tasks)
    columns = ["omega", "z", "total", "pw_part", "ew_part", "quad_error", "thermal", "zero_point"]
    rows = [[u.omega, u.z, u.total, u.pw, u.ew, u.quad_error, u.thermal, u.zero_point] for u in results]
    ctx.emit(columns, rows)
    return EXIT_OK


def _random_modes(sweep, count, seed, c):
    rng = np.random.default_rng(seed)
    lo, hi = float(sweep.omega[0]), float(sweep.omega[-1])
    out = []
    while len(out) < count:
        omega = lo if lo == hi else float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        frac = rng.uniform(0.0, 3.0)
        phi = rng.uniform(0.0, 2 * np.pi)
        if abs(frac - 1) < 1e-9:
            continue
        k = frac * omega / c
        out.append((omega, k, phi, k * np.cos(phi), k * np.sin(phi)))
    return out


def _realspace_task(task):
    provider, omega, dx, w, state, quad, c = task
    return fdt_residual_realspace(provider, omega, dx, w, state, quad, c)


def cmd_fdt_check(ctx):
    args, sweep, provider, c = ctx.args, ctx.sweep, ctx.provider, ctx.c
    tol = 1e-10 if args.tol is None else args.tol
    points = [] if args.random_modes and args.kperp_min is None else list(sweep.points(c))
    points += _random_modes(sweep, args.random_modes, args.seed, c)
    columns = ["check", "omega", "kx", "ky", "dx", "dy", "w", "residual", "tol", "passed"]
    rows, skipped = [], 0
    worst_mw = 0.0
    for omega, k, phi, kx, ky in points:
        mode = make_mode(omega, (kx, ky), c)
        if mode.kind is ModeKind.GRAZING:
            skipped += 1
            continue
        for w in sweep.w:
            res = fdt_residual_modewise(provider, mode, ctx.state, w, corrupt=args.corrupt)
            worst_mw = max(worst_mw, res)
            rows.append(["modewise", omega, kx, ky, 0.0, 0.0, w, res, tol, res <= tol])
    _skip_note(skipped)

    deltas = [_parse_pair(s) for s in args.delta_x]
    tasks = [(provider, float(omega), d, w, ctx.state, ctx.quad, c) for omega in sweep.omega for d in deltas for w in sweep.w]
    results = ctx.pool_map(_realspace_task, tasks)
    worst_rs = 0.0
    for (_, omega, d, w, *_), res in zip(tasks, results):
        worst_rs = max(worst_rs, res)
        rows.append(["realspace", omega, 0.0, 0.0, d[0], d[1], w, res, args.realspace_tol, res <= args.realspace_tol])
    if not rows:
        raise InputError("nothing to check: every sampled mode was grazing and no --delta-x was given")
    passed = all(r[-1] for r in rows)
    summary = {"passed": passed, "max_modewise": worst_mw, "max_realspace": worst_rs, "corrupt": args.corrupt}
    ctx.emit(columns, rows, summary)
    return EXIT_OK if passed else EXIT_VALIDATION


def _parse_pair(text):
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"--delta-x expects 'x,y', got {text!r}") from None
    if len(parts) != 2:
        raise InputError(f"--delta-x expects 'x,y', got {text!r}")
    return tuple(parts)


COMMANDS = {
    "reflect": cmd_reflect,
    "validate": cmd_validate,
    "correlate": cmd_correlate,
    "spectrum": cmd_spectrum,
    "fdt-check": cmd_fdt_check,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="material config file")
    common.add_argument("--omega-min", type=float, default=1.0)
    common.add_argument("--omega-max", type=float)
    common.add_argument("--omega-count", type=int, default=1)
    common.add_argument("--omega-scale", choices=("lin", "log"), default="lin")
    common.add_argument("--kperp-min", type=float, help="default: 0 .. 2.4 omega/c in 5 steps")
    common.add_argument("--kperp-max", type=float)
    common.add_argument("--kperp-count", type=int, default=1)
    common.add_argument("--kperp-scale", choices=("lin", "log"), default="lin")
    common.add_argument("--kperp-relative", action="store_true", help="read kperp in units of omega/c")
    common.add_argument("--phi", type=float, nargs="+", default=[0.0], help="azimuths of kperp [rad]")
    common.add_argument("--z", type=float, nargs="+", help="field heights (< 0) for the energy density")
    common.add_argument("--w", type=float, nargs="+", default=[-1.0], help="field/dipole heights (< 0)")
    common.add_argument("--temperature", type=float, default=0.0)
    common.add_argument("--tol", type=float, help="validation tolerance (default: provider's)")
    common.add_argument("--units", choices=sorted(PRESETS), default="natural")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="output file (default: stdout)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--rel-tol", type=float, default=QuadSpec.epsrel, help="quadrature relative tolerance")
    common.add_argument("--max-panels", type=int, default=QuadSpec.max_panels, help="quadrature panel budget")

    parser = argparse.ArgumentParser(prog="emfluct", description="Fluctuating EM fields near a flat surface.")
    parser.add_argument("--version", action="version", version=f"emfluct {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("reflect", parents=[common], help="tabulate the reflection matrix")
    sub.add_parser("validate", parents=[common], help="Onsager, hermiticity and passivity screens")
    sub.add_parser("correlate", parents=[common], help="amplitude correlators and spectral matrices per mode")
    spectrum = sub.add_parser("spectrum", parents=[common], help="emissivity or energy density spectra")
    spectrum.add_argument("--observable", choices=("energy", "emissivity"), default="energy")
    fdt = sub.add_parser("fdt-check", parents=[common], help="fluctuation-dissipation consistency")
    fdt.add_argument("--random-modes", type=int, default=0, help="extra random modes (kperp up to 3 omega/c)")
    fdt.add_argument("--seed", type=int, default=0)
    fdt.add_argument("--delta-x", action="append", default=[], help="in-plane separation 'x,y' for the real-space check")
    fdt.add_argument("--realspace-tol", type=float, default=1e-6)
    fdt.add_argument("--corrupt", action="store_true", help="negative control: use R + R^+ on the EW band")
    # let values such as -1e-6 through as numbers rather than option flags
    for p in (parser, *sub.choices.values()):
        p._negative_number_matcher = _NEGATIVE_NUMBER
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = _Context(args)
        return COMMANDS[args.command](ctx)
    except (QuadratureError, ArithmeticError) as exc:
        print(f"emfluct: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"emfluct: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
