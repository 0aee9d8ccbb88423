"""Material configuration files.

Plain ``key = value`` lines; ``#`` starts a comment. Keys::

    model = vacuum | mirror | fresnel | multilayer | fedorov | drude_born | tabulated

    # any dispersive quantity P (epsilon, mu, layer.<i>.epsilon, substrate.mu, ...)
    P = 2.25+0.01j                 # constant shorthand
    P.kind = constant | drude | table
    P.value = <complex>            # constant
    P.plasma_frequency = <real>    # drude: 1 - wp^2/(w (w + i gamma))
    P.collision_rate = <real>
    P.file = <csv path>            # table with header omega,re,im

    fresnel:     epsilon, [mu]
    multilayer:  layer.<i>.epsilon, [layer.<i>.mu], layer.<i>.thickness   (i = 0, 1, ... from the vacuum side)
                 substrate.epsilon, [substrate.mu]
    fedorov:     epsilon, [mu], beta
    drude_born:  epsilon, f
    tabulated:   file, [mode = isotropic | strict]

Relative file paths are resolved against the config file's directory.
"""
import re
from pathlib import Path

from ..exceptions import ConfigError, TableParseError
from .dispersion import Constant, Drude, TabulatedDispersion
from .models import (
    DrudeBornChiral,
    FedorovChiral,
    FresnelHalfSpace,
    Layer,
    Mirror,
    Multilayer,
    Vacuum,
)
from .tabulated import read_reflection_csv

__all__ = ["parse_config", "load_config"]

_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z0-9_]+)*$")


class _Entries:
    """Key lookup that remembers line numbers and which keys were consumed."""

    def __init__(self, items):
        self.items = items  # key -> (value, line)
        self.used = set()

    def has(self, key):
        return key in self.items

    def line(self, key):
        return self.items[key][1] if key in self.items else None

    def raw(self, key, default=None, required=False):
        if key not in self.items:
            if required:
                raise ConfigError(f"missing required key '{key}'")
            return default
        self.used.add(key)
        return self.items[key][0]

    def number(self, key, kind=float, default=None, required=False):
        text = self.raw(key, required=required)
        if text is None:
            return default
        try:
            return kind(text.replace(" ", ""))
        except ValueError:
            raise ConfigError(f"'{key}' expects a {kind.__name__} value, got {text!r}", self.line(key)) from None

    def prefixed(self, prefix):
        return [k for k in self.items if k.startswith(prefix + ".")]

    def unused(self):
        return sorted(set(self.items) - self.used, key=self.line)


def _dispersion(entries, prefix, base_dir, default=None):
    if entries.has(prefix):
        return Constant(entries.number(prefix, complex))
    kind = entries.raw(prefix + ".kind")
    if kind is None:
        if entries.prefixed(prefix):
            raise ConfigError(f"'{prefix}.kind' is required", entries.line(entries.prefixed(prefix)[0]))
        if default is None:
            raise ConfigError(f"missing required key '{prefix}'")
        return Constant(default)
    kind = kind.lower()
    if kind == "constant":
        return Constant(entries.number(prefix + ".value", complex, required=True))
    if kind == "drude":
        return Drude(
            entries.number(prefix + ".plasma_frequency", required=True),
            entries.number(prefix + ".collision_rate", required=True),
        )
    if kind == "table":
        path = base_dir / entries.raw(prefix + ".file", required=True)
        try:
            return TabulatedDispersion.from_csv(path)
        except (OSError, TableParseError) as exc:
            raise ConfigError(f"{prefix}.file: {exc}", entries.line(prefix + ".file")) from None
    raise ConfigError(f"unknown dispersion kind {kind!r}", entries.line(prefix + ".kind"))


def _multilayer(entries, base_dir):
    indices = set()
    for key in entries.prefixed("layer"):
        part = key.split(".")[1]
        if not part.isdigit():
            raise ConfigError(f"layer index must be an integer in '{key}'", entries.line(key))
        indices.add(int(part))
    if indices and indices != set(range(len(indices))):
        raise ConfigError(f"layer indices must be contiguous from 0, got {sorted(indices)}")
    layers = []
    for i in range(len(indices)):
        p = f"layer.{i}"
        thickness = entries.number(p + ".thickness", required=True)
        try:
            layers.append(
                Layer(
                    _dispersion(entries, p + ".epsilon", base_dir),
                    thickness,
                    _dispersion(entries, p + ".mu", base_dir, default=1.0),
                )
            )
        except ValueError as exc:
            raise ConfigError(str(exc), entries.line(p + ".thickness")) from None
    substrate = FresnelHalfSpace(
        _dispersion(entries, "substrate.epsilon", base_dir),
        _dispersion(entries, "substrate.mu", base_dir, default=1.0),
    )
    return Multilayer(tuple(layers), substrate)


def parse_config(text, base_dir="."):
    """Build a reflection provider from config text."""
    base_dir = Path(base_dir)
    items = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not _KEY.match(key):
            raise ConfigError(f"invalid key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for '{key}'", lineno)
        if key in items:
            raise ConfigError(f"duplicate key '{key}' (first on line {items[key][1]})", lineno)
        items[key] = (value, lineno)

    entries = _Entries(items)
    model = entries.raw("model", required=True).lower()
    if model == "vacuum":
        provider = Vacuum()
    elif model == "mirror":
        provider = Mirror()
    elif model == "fresnel":
        provider = FresnelHalfSpace(
            _dispersion(entries, "epsilon", base_dir), _dispersion(entries, "mu", base_dir, default=1.0)
        )
    elif model == "multilayer":
        provider = _multilayer(entries, base_dir)
    elif model == "fedorov":
        provider = FedorovChiral(
            _dispersion(entries, "epsilon", base_dir),
            _dispersion(entries, "mu", base_dir, default=1.0),
            entries.number("beta", required=True),
        )
    elif model == "drude_born":
        provider = DrudeBornChiral(_dispersion(entries, "epsilon", base_dir), entries.number("f", required=True))
    elif model == "tabulated":
        path = base_dir / entries.raw("file", required=True)
        mode = entries.raw("mode", "isotropic").lower()
        try:
            provider = read_reflection_csv(path)
        except (OSError, TableParseError) as exc:
            raise ConfigError(f"file: {exc}", entries.line("file")) from None
        if mode not in ("isotropic", "strict"):
            raise ConfigError(f"mode must be 'isotropic' or 'strict', got {mode!r}", entries.line("mode"))
        if (mode == "strict") != provider.strict:
            raise ConfigError(f"table layout does not match mode={mode}", entries.line("file"))
    else:
        raise ConfigError(f"unknown model {model!r}", entries.line("model"))

    leftover = entries.unused()
    if leftover:
        key = leftover[0]
        raise ConfigError(f"unrecognized key '{key}' for model {model}", entries.line(key))
    return provider


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text, path.parent)
