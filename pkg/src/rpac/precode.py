"""Forward (PAC) and reverse (RPAC) convolutional pre-transforms.

Forward:  ``u_i = sum_l p_l v_{i-l}``  (``v_j = 0`` for ``j < 0``).

Reverse:  ``u_i = sum_l p_l v_{i+l}`` when ``w(g_i) >= wmin`` and ``u_i = v_i``
otherwise (``v_j = 0`` for ``j >= N``).  The weight test runs over every
index, frozen ones included; ``wmin`` is the smallest row weight among the
information rows.

Both maps are unit triangular, so they are inverted exactly by substitution
(forward: ascending, reverse: descending).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitlinalg import row_weights
from .construction import CodeProfile

IDENTITY, FORWARD, REVERSE = "identity", "forward", "reverse"

POLY_10 = (1, 1, 0, 1, 1, 0, 1, 1, 0, 1)
POLY_7 = (1, 1, 0, 1, 1, 0, 1)


class PrecoderError(ValueError):
    pass


def parse_poly(text: str) -> tuple[int, ...]:
    """``"1,1,0,1"`` -> ``(1, 1, 0, 1)``; ``p_0`` comes first."""
    try:
        p = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok != "")
    except ValueError:
        raise PrecoderError(f"polynomial must be comma-separated 0/1 values, got {text!r}") from None
    if not p or any(c not in (0, 1) for c in p):
        raise PrecoderError(f"polynomial must be comma-separated 0/1 values, got {text!r}")
    return p


def format_poly(p) -> str:
    return ",".join(str(int(c)) for c in p)


@dataclass(frozen=True)
class PrecoderSpec:
    kind: str
    p: tuple[int, ...] = (1,)
    wmin_threshold: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(c) for c in self.p))
        if self.kind not in (IDENTITY, FORWARD, REVERSE):
            raise PrecoderError(f"unknown precoder kind {self.kind!r}")
        if not self.p or any(c not in (0, 1) for c in self.p):
            raise PrecoderError("coefficients must be 0/1")
        if self.p[0] != 1 or self.p[-1] != 1:
            raise PrecoderError(f"p_0 and p_s must both be 1, got {format_poly(self.p)}")
        if self.kind == IDENTITY and self.p != (1,):
            raise PrecoderError("identity precoder has p = [1]")
        if self.kind == REVERSE and self.wmin_threshold is None:
            raise PrecoderError("reverse precoder needs wmin_threshold")

    @property
    def s(self) -> int:
        return len(self.p) - 1

    @classmethod
    def identity(cls) -> "PrecoderSpec":
        return cls(IDENTITY)

    @classmethod
    def forward(cls, p=POLY_10) -> "PrecoderSpec":
        return cls(FORWARD, tuple(p))

    @classmethod
    def reverse(cls, p, profile: CodeProfile) -> "PrecoderSpec":
        """Reverse precoder with the threshold taken from ``profile``."""
        return cls(REVERSE, tuple(p), profile_wmin(profile))


PRESETS = {
    "polar": (IDENTITY, (1,)),
    "pac10": (FORWARD, POLY_10),
    "pac7": (FORWARD, POLY_7),
    "rpac10": (REVERSE, POLY_10),
    "rpac7": (REVERSE, POLY_7),
}


def preset(name: str, profile: CodeProfile) -> PrecoderSpec:
    try:
        kind, p = PRESETS[name]
    except KeyError:
        raise PrecoderError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if kind == REVERSE:
        return PrecoderSpec.reverse(p, profile)
    return PrecoderSpec(kind, p)


def profile_wmin(profile: CodeProfile) -> int:
    w = row_weights(profile.N)
    return int(w[list(profile.info_set)].min())


def reverse_condition(spec: PrecoderSpec, N: int) -> np.ndarray:
    """Boolean mask of indices whose output takes the reverse convolution."""
    return row_weights(N) >= spec.wmin_threshold


def _check_reverse(spec: PrecoderSpec, profile: CodeProfile | None):
    if spec.kind != REVERSE:
        raise PrecoderError(f"expected a reverse precoder, got {spec.kind}")
    if profile is not None and spec.wmin_threshold != profile_wmin(profile):
        raise PrecoderError(
            f"wmin_threshold {spec.wmin_threshold} does not match the profile "
            f"minimum row weight {profile_wmin(profile)}"
        )


def forward_map(v, spec: PrecoderSpec) -> np.ndarray:
    """Forward convolution along the last axis."""
    v = np.asarray(v, dtype=np.uint8)
    if spec.kind == REVERSE:
        raise PrecoderError("forward_map called with a reverse precoder")
    N = v.shape[-1]
    u = v.copy()
    for ell, c in enumerate(spec.p[1:], 1):
        if c and ell < N:
            u[..., ell:] ^= v[..., : N - ell]
    return u


def reverse_map(v, spec: PrecoderSpec, profile: CodeProfile | None = None) -> np.ndarray:
    """Conditional reverse convolution along the last axis.

    ``profile`` is only used to validate ``spec.wmin_threshold``.
    """
    _check_reverse(spec, profile)
    v = np.asarray(v, dtype=np.uint8)
    N = v.shape[-1]
    conv = v.copy()
    for ell, c in enumerate(spec.p[1:], 1):
        if c and ell < N:
            conv[..., : N - ell] ^= v[..., ell:]
    return np.where(reverse_condition(spec, N), conv, v).astype(np.uint8)


def apply(v, spec: PrecoderSpec, profile: CodeProfile | None = None) -> np.ndarray:
    if spec.kind == REVERSE:
        return reverse_map(v, spec, profile)
    if spec.kind == FORWARD:
        return forward_map(v, spec)
    return np.array(v, dtype=np.uint8, copy=True)


def demap(u, spec: PrecoderSpec, profile: CodeProfile | None = None) -> np.ndarray:
    """Exact inverse of :func:`apply` along the last axis."""
    u = np.asarray(u, dtype=np.uint8)
    v = u.copy()
    N = u.shape[-1]
    taps = [ell for ell, c in enumerate(spec.p) if c and ell > 0]
    if spec.kind == FORWARD:
        for i in range(N):
            for ell in taps:
                if i - ell < 0:
                    break
                v[..., i] ^= v[..., i - ell]
    elif spec.kind == REVERSE:
        _check_reverse(spec, profile)
        cond = reverse_condition(spec, N)
        for i in range(N - 1, -1, -1):
            if not cond[i]:
                continue
            for ell in taps:
                if i + ell >= N:
                    break
                v[..., i] ^= v[..., i + ell]
    return v


def precoder_matrix(spec: PrecoderSpec, N: int, profile: CodeProfile | None = None) -> np.ndarray:
    """``N x N`` matrix ``M`` with ``u = v M`` (unit diagonal)."""
    return apply(np.eye(N, dtype=np.uint8), spec, profile)
