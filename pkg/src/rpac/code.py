"""A code = profile + pre-transform (+ optional CRC), and its encoder.

Encoding chain: message -> ``v`` (message bits, then CRC bits, on the
information set; zeros elsewhere) -> ``u`` = pre-transform of ``v`` ->
``x = u G_N``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import crc as _crc
from .bitlinalg import polar_transform
from .construction import CodeProfile, construct_profile
from .precode import FORWARD, IDENTITY, POLY_10, REVERSE, PrecoderSpec, apply, demap, profile_wmin

SCHEMES = ("polar", "pac", "rpac", "crc_polar")


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class Code:
    profile: CodeProfile
    precoder: PrecoderSpec
    crc_poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.crc_poly is not None:
            object.__setattr__(self, "crc_poly", tuple(self.crc_poly))
            if self.precoder.kind != IDENTITY:
                raise SchemeError("CRC is only supported on the plain polar code")
            if self.crc_len >= self.profile.K:
                raise SchemeError("CRC longer than the information set")
        if self.precoder.kind == REVERSE:
            if self.precoder.wmin_threshold != profile_wmin(self.profile):
                raise SchemeError("reverse precoder threshold does not match the profile")

    @property
    def scheme(self) -> str:
        if self.crc_poly is not None:
            return "crc_polar"
        return {IDENTITY: "polar", FORWARD: "pac", REVERSE: "rpac"}[self.precoder.kind]

    @property
    def N(self) -> int:
        return self.profile.N

    @property
    def crc_len(self) -> int:
        return 0 if self.crc_poly is None else _crc.degree(self.crc_poly)

    @property
    def k(self) -> int:
        """Message length (information bits minus CRC bits)."""
        return self.profile.K - self.crc_len

    @property
    def rate(self) -> float:
        return self.k / self.N

    def message_to_v(self, message) -> np.ndarray:
        m = np.asarray(message, dtype=np.uint8)
        if m.shape[-1] != self.k:
            raise ValueError(f"expected {self.k} message bits, got {m.shape[-1]}")
        if self.crc_poly is not None:
            m = _crc.crc_attach(m, self.crc_poly)
        v = np.zeros(m.shape[:-1] + (self.N,), dtype=np.uint8)
        v[..., list(self.profile.info_set)] = m
        return v

    def v_to_message(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.uint8)[..., list(self.profile.info_set)][..., : self.k]

    def precode(self, v) -> np.ndarray:
        return apply(v, self.precoder, self.profile)

    def demap(self, u) -> np.ndarray:
        return demap(u, self.precoder, self.profile)

    def encode_v(self, v) -> np.ndarray:
        return polar_transform(self.precode(v))

    def encode(self, message) -> np.ndarray:
        return self.encode_v(self.message_to_v(message))


def make_code(scheme: str, profile: CodeProfile, poly=None, crc_poly=None) -> Code:
    """Build a code by scheme name.

    ``poly`` defaults to the 10-tap polynomial for pac/rpac; ``crc_poly``
    defaults to the 11-bit CRC for crc_polar (``profile`` must already hold
    message + CRC positions).
    """
    if scheme == "polar":
        return Code(profile, PrecoderSpec.identity())
    if scheme == "pac":
        return Code(profile, PrecoderSpec.forward(poly or POLY_10))
    if scheme == "rpac":
        return Code(profile, PrecoderSpec.reverse(poly or POLY_10, profile))
    if scheme == "crc_polar":
        return Code(profile, PrecoderSpec.identity(), tuple(crc_poly or _crc.CRC11))
    raise SchemeError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")


def build_code(scheme: str, N: int, K: int, design_snr_db: float = 2.0, poly=None, crc_poly=None) -> Code:
    """Construct the profile and the code in one step.

    ``K`` counts message bits; for crc_polar the profile carries ``K`` plus
    the CRC length most reliable positions.
    """
    extra = 0
    if scheme == "crc_polar":
        extra = _crc.degree(tuple(crc_poly or _crc.CRC11))
    profile = construct_profile(N, K + extra, design_snr_db)
    return make_code(scheme, profile, poly, crc_poly)
