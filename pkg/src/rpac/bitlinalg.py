"""Binary vectors, the polar transform, and row-weight/support arithmetic.

Bit blocks are plain ``numpy.uint8`` arrays of length ``N = 2**n``.  Index
``i`` of a block is the row ``g_i`` of the polar transform, and ``bin(i)``
uses the least significant bit as ``i_0``.  No bit-reversal permutation is
applied anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class InvalidLengthError(ValueError):
    """Block length is not a power of two."""


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def log2_length(N: int) -> int:
    if not is_power_of_two(N):
        raise InvalidLengthError(f"block length must be a power of two, got {N}")
    return N.bit_length() - 1


def as_bits(bits, length: int | None = None) -> np.ndarray:
    """Validate ``bits`` as a bit block and return it as ``uint8``.

    Raises
    ------
    InvalidLengthError
        If the length is not a power of two (or differs from ``length``).
    ValueError
        If an element is not 0 or 1.
    """
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError(f"bit block must be one-dimensional, got shape {arr.shape}")
    log2_length(arr.size)
    if length is not None and arr.size != length:
        raise InvalidLengthError(f"expected {length} bits, got {arr.size}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("bit block may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def unit(N: int, i: int) -> np.ndarray:
    e = np.zeros(N, dtype=np.uint8)
    e[i] = 1
    return e


def polar_transform(u) -> np.ndarray:
    """Return ``x = u G_N`` over GF(2) with ``G_N`` the n-fold Kronecker power
    of ``[[1, 0], [1, 1]]``.

    Works on the last axis, so a ``(B, N)`` batch is transformed row by row.
    ``N >= 2`` is required.  The transform is its own inverse.
    """
    x = np.array(u, dtype=np.uint8, copy=True)
    N = x.shape[-1]
    n = log2_length(N)
    if n < 1:
        raise InvalidLengthError("polar transform needs N >= 2")
    lead = x.shape[:-1]
    half = 1
    while half < N:
        # x = [c1 ^ c2, c2] on every block of size 2*half
        blocks = x.reshape(*lead, N // (2 * half), 2, half)
        blocks[..., 0, :] ^= blocks[..., 1, :]
        half *= 2
    return x


@lru_cache(maxsize=16)
def _generator(N: int) -> np.ndarray:
    g = np.ones((1, 1), dtype=np.uint8)
    while g.shape[0] < N:
        z = np.zeros_like(g)
        g = np.block([[g, z], [g, g]])
    g.setflags(write=False)
    return g


def generator_matrix(N: int) -> np.ndarray:
    """Explicit ``G_N`` (read-only); row ``i`` is ``g_i``."""
    log2_length(N)
    return _generator(N)


def row(i: int, N: int) -> np.ndarray:
    """Row ``g_i`` of ``G_N``."""
    return polar_transform(unit(N, i))


def popcount(i: int) -> int:
    return bin(i).count("1")


def row_weight(i: int, n: int) -> int:
    """Hamming weight of ``g_i`` in ``G_{2^n}``: ``2 ** popcount(i)``."""
    if not 0 <= i < (1 << n):
        raise ValueError(f"index {i} out of range for n={n}")
    return 1 << popcount(i)


def row_weights(N: int) -> np.ndarray:
    n = log2_length(N)
    return np.array([row_weight(i, n) for i in range(N)], dtype=np.int64)


def binary_support(i: int) -> frozenset[int]:
    """Bit positions set in ``bin(i)``."""
    return frozenset(a for a in range(i.bit_length()) if (i >> a) & 1)


def support(v) -> set[int]:
    return set(np.flatnonzero(np.asarray(v)).tolist())


def min_support(v) -> int | None:
    """First nonzero coordinate, or ``None`` for the all-zero block."""
    nz = np.flatnonzero(np.asarray(v))
    return int(nz[0]) if nz.size else None


def weight(v) -> int:
    return int(np.count_nonzero(v))


@dataclass(frozen=True)
class IndexInfo:
    index: int
    binary_support: frozenset[int]
    row_weight: int


def index_info(i: int, n: int) -> IndexInfo:
    return IndexInfo(i, binary_support(i), row_weight(i, n))
