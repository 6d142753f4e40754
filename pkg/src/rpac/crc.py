"""Systematic CRC over GF(2).

A polynomial is given by its exponents, e.g. ``(11, 10, 9, 5, 0)`` for
``x^11 + x^10 + x^9 + x^5 + 1``.  Message bits are read highest degree first
and the ``r`` parity bits are appended after them.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

CRC11 = (11, 10, 9, 5, 0)
PRESETS = {"crc11": CRC11}


def poly_bits(poly) -> np.ndarray:
    """Coefficient vector, highest degree first (length ``degree + 1``)."""
    deg = max(poly)
    c = np.zeros(deg + 1, dtype=np.uint8)
    for e in poly:
        c[deg - e] ^= 1
    return c


def degree(poly) -> int:
    return max(poly)


def parse_crc(text: str):
    """``crc11`` or a comma-separated exponent list such as ``11,10,9,5,0``."""
    if text in PRESETS:
        return PRESETS[text]
    try:
        exps = tuple(sorted({int(t) for t in text.split(",")}, reverse=True))
    except ValueError:
        raise ValueError(f"bad CRC polynomial {text!r}") from None
    if not exps or exps[-1] != 0 or exps[0] < 1:
        raise ValueError(f"CRC polynomial needs a constant term and degree >= 1: {text!r}")
    return exps


def remainder(bits, poly) -> np.ndarray:
    """Remainder of ``m(x) x^r`` divided by the generator (long division)."""
    g = poly_bits(poly)
    r = g.size - 1
    reg = np.concatenate([np.asarray(bits, dtype=np.uint8), np.zeros(r, dtype=np.uint8)])
    for i in range(reg.size - r):
        if reg[i]:
            reg[i : i + r + 1] ^= g
    return reg[-r:].copy()


@lru_cache(maxsize=32)
def _parity_matrix(k: int, poly) -> np.ndarray:
    rows = np.zeros((k, degree(poly)), dtype=np.uint8)
    for i in range(k):
        e = np.zeros(k, dtype=np.uint8)
        e[i] = 1
        rows[i] = remainder(e, poly)
    rows.setflags(write=False)
    return rows


def parity_matrix(k: int, poly) -> np.ndarray:
    """``k x r`` matrix whose row ``i`` is the CRC of the ``i``-th unit message;
    CRC is linear, so ``crc(m) = m @ P mod 2``."""
    return _parity_matrix(k, tuple(poly))


def crc_attach(message, poly=CRC11) -> np.ndarray:
    """Append the CRC; works along the last axis of a batch."""
    m = np.asarray(message, dtype=np.uint8)
    P = parity_matrix(m.shape[-1], poly)
    parity = (m.astype(np.int64) @ P) & 1
    return np.concatenate([m, parity.astype(np.uint8)], axis=-1)


def crc_check(bits, poly=CRC11):
    """True where the trailing CRC matches the leading message bits."""
    b = np.asarray(bits, dtype=np.uint8)
    r = degree(poly)
    k = b.shape[-1] - r
    P = parity_matrix(k, poly)
    ok = (((b[..., :k].astype(np.int64) @ P) & 1) == b[..., k:]).all(axis=-1)
    return bool(ok) if np.ndim(ok) == 0 else ok
