"""Trace codes over F_2 + uF_2: construction, exact weight enumeration and verification."""

from .code import CodeSpec, WeightDistribution, enumerate_weights, ev, generator_rows, gray_image
from .gf2m import FieldElem, FieldParams, GF2m, make_field
from .ring import Ring, RingElem

__version__ = "0.1.0"

__all__ = [
    "CodeSpec",
    "FieldElem",
    "FieldParams",
    "GF2m",
    "Ring",
    "RingElem",
    "WeightDistribution",
    "enumerate_weights",
    "ev",
    "generator_rows",
    "gray_image",
    "make_field",
]
