"""Reverse PAC codes: construction, coset analysis, spectra, decoding and BLER simulation."""

from .code import SCHEMES, Code, make_code
from .construction import CodeProfile, construct_profile, load_profile, save_profile
from .precode import POLY_7, POLY_10, PrecoderSpec

__version__ = "0.1.0"

__all__ = [
    "Code",
    "CodeProfile",
    "POLY_10",
    "POLY_7",
    "PrecoderSpec",
    "SCHEMES",
    "construct_profile",
    "load_profile",
    "make_code",
    "save_profile",
]
