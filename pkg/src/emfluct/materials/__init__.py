"""Reflection-matrix providers, dispersion models and their file formats."""
from .config import load_config, parse_config
from .dispersion import Constant, Drude, TabulatedDispersion, as_dispersion
from .models import (
    ConstantReflection,
    DrudeBornChiral,
    FedorovChiral,
    FresnelHalfSpace,
    Layer,
    Mirror,
    Multilayer,
    ReflectionModel,
    Vacuum,
    drude_born_reflection,
    fedorov_reflection,
    fresnel_halfspace,
    multilayer_reflection,
)
from .tabulated import Tabulated, read_reflection_csv, tabulated_reflection, write_reflection_csv

__all__ = [
    "Constant",
    "ConstantReflection",
    "Drude",
    "DrudeBornChiral",
    "FedorovChiral",
    "FresnelHalfSpace",
    "Layer",
    "Mirror",
    "Multilayer",
    "ReflectionModel",
    "Tabulated",
    "TabulatedDispersion",
    "Vacuum",
    "as_dispersion",
    "drude_born_reflection",
    "fedorov_reflection",
    "fresnel_halfspace",
    "load_config",
    "multilayer_reflection",
    "parse_config",
    "read_reflection_csv",
    "tabulated_reflection",
    "write_reflection_csv",
]
