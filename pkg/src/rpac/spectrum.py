"""Minimum-weight codeword counts by exhaustive enumeration.

Two oracles that share nothing beyond the encoder definition:

* :func:`enumerate_by_support` walks every binary word ``x`` of weight up to a
  cap and tests membership: ``x`` is a codeword iff
  ``v = demap(x G_N)`` vanishes on the frozen set (and, for CRC-polar, the
  CRC of the message part of ``v`` matches).  The test is linear in ``x``, so
  each unit vector's "syndrome" is computed once and patterns are checked by
  XOR.
* :func:`enumerate_by_message` encodes all ``2^k`` messages.

Codewords are attributed to cosets by the u-domain leader ``min supp(u)``,
``u = x G_N``.  With a reverse pre-transform that leader can be a frozen
index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from . import crc as _crc
from .bitlinalg import polar_transform
from .code import Code
from .structure import compute_wmin

DEFAULT_PATTERN_BUDGET = 10**8
DEFAULT_MAX_MESSAGE_BITS = 24


class BudgetExceeded(RuntimeError):
    def __init__(self, msg: str, required: int):
        super().__init__(msg)
        self.required = required


@dataclass
class SpectrumReport:
    scheme: str
    wmin_observed: int | None
    A_wmin: int
    per_coset: dict[int, int]
    method: str
    search_cap: int
    weight_distribution: np.ndarray | None = field(default=None, repr=False)

    def csv_row(self) -> str:
        w = "" if self.wmin_observed is None else self.wmin_observed
        return f"{self.scheme},{w},{self.A_wmin},{self.method}"


CSV_HEADER = "scheme,wmin,A_wmin,method"


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack the last axis into little-endian uint64 words (bit j -> word j//64)."""
    bits = np.asarray(bits, dtype=np.uint8)
    n = bits.shape[-1]
    W = max(1, -(-n // 64))
    padded = np.zeros(bits.shape[:-1] + (W * 64,), dtype=np.uint8)
    padded[..., :n] = bits
    by = np.packbits(padded.reshape(bits.shape[:-1] + (W, 64)), axis=-1, bitorder="little")
    return by.view(np.uint64).reshape(bits.shape[:-1] + (W,)).copy()


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    by = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(by, axis=-1, bitorder="little")[..., :n]


def _lowest_bit(words: np.ndarray) -> np.ndarray:
    """Index of the lowest set bit of each packed row (-1 for zero rows)."""
    out = np.full(words.shape[0], -1, dtype=np.int64)
    for w in range(words.shape[1] - 1, -1, -1):
        col = words[:, w]
        nz = col != 0
        low = col[nz] & (~col[nz] + np.uint64(1))
        out[nz] = 64 * w + np.log2(low.astype(np.float64)).astype(np.int64)
    return out


def syndrome_matrix(code: Code) -> np.ndarray:
    """Row ``j``: the membership syndrome of the unit word ``e_j``.

    Columns are the frozen coordinates of ``demap(e_j G_N)`` followed, for
    CRC-polar, by the CRC mismatch of its information part.
    """
    N = code.N
    eye = np.eye(N, dtype=np.uint8)
    v = code.demap(polar_transform(eye))
    parts = [v[:, list(code.profile.frozen_set)]]
    if code.crc_poly is not None:
        info = v[:, list(code.profile.info_set)]
        k = code.k
        P = _crc.parity_matrix(k, code.crc_poly)
        parts.append((((info[:, :k].astype(np.int64) @ P) & 1).astype(np.uint8)) ^ info[:, k:])
    return np.concatenate(parts, axis=1)


def pattern_count(N: int, w_cap: int) -> int:
    return sum(math.comb(N, w) for w in range(1, w_cap + 1))


@numba.njit(cache=True)
def _scan_weight(syn, w, out, cap):
    """Visit all weight-``w`` supports in colex order; store the zero-syndrome
    ones in ``out`` (up to ``cap``) and return how many there were."""
    N, W = syn.shape
    c = np.arange(w + 1)
    c[w] = N
    found = 0
    acc = np.zeros(W, dtype=np.uint64)
    while True:
        acc[:] = 0
        for t in range(w):
            for k in range(W):
                acc[k] ^= syn[c[t], k]
        zero = True
        for k in range(W):
            if acc[k] != 0:
                zero = False
                break
        if zero:
            if found < cap:
                for t in range(w):
                    out[found, t] = c[t]
            found += 1
        # colex successor
        j = 0
        while j < w and c[j] + 1 == c[j + 1]:
            j += 1
        if j == w:
            break
        c[j] += 1
        for t in range(j):
            c[t] = t
    return found


def enumerate_by_support(code: Code, w_cap: int, budget: int = DEFAULT_PATTERN_BUDGET) -> SpectrumReport:
    """Smallest nonzero codeword weight up to ``w_cap`` and its multiplicity."""
    N = code.N
    total = pattern_count(N, w_cap)
    if total > budget:
        raise BudgetExceeded(
            f"support enumeration of N={N} up to weight {w_cap} needs {total:.3e} patterns "
            f"(budget {budget:.3e})",
            total,
        )
    syn = _pack(syndrome_matrix(code))
    for w in range(1, min(w_cap, N) + 1):
        cap = 1 << 16
        while True:
            out = np.zeros((cap, w), dtype=np.int64)
            found = _scan_weight(syn, w, out, cap)
            if found <= cap:
                break
            cap = found
        if found:
            x = np.zeros((found, N), dtype=np.uint8)
            np.put_along_axis(x, out[:found], 1, axis=1)
            leaders = _lowest_bit(_pack(polar_transform(x)))
            per_coset = {int(i): int(c) for i, c in zip(*np.unique(leaders, return_counts=True))}
            return SpectrumReport(code.scheme, w, found, per_coset, "support_enum", w_cap)
    return SpectrumReport(code.scheme, None, 0, {}, "support_enum", w_cap)


def enumerate_by_message(code: Code, max_bits: int = DEFAULT_MAX_MESSAGE_BITS) -> SpectrumReport:
    """Encode every nonzero message; full weight distribution included."""
    k, N = code.k, code.N
    if k > max_bits:
        raise BudgetExceeded(
            f"message enumeration needs 2^{k} = {2**k:.3e} encodings (limit 2^{max_bits})", 2**k
        )
    eye = np.eye(k, dtype=np.uint8)
    v_rows = code.message_to_v(eye)
    u = code.precode(v_rows)
    u_rows, x_rows = _pack(u), _pack(polar_transform(u))

    low = min(k, 16)
    x_tab = np.zeros((1, x_rows.shape[1]), dtype=np.uint64)
    u_tab = np.zeros((1, u_rows.shape[1]), dtype=np.uint64)
    for t in range(low):
        x_tab = np.concatenate([x_tab, x_tab ^ x_rows[t]])
        u_tab = np.concatenate([u_tab, u_tab ^ u_rows[t]])

    dist = np.zeros(N + 1, dtype=np.int64)
    best_w, best_leaders = None, []
    for hi in range(1 << (k - low)):
        xs, us = x_tab.copy(), u_tab.copy()
        for t in range(k - low):
            if (hi >> t) & 1:
                xs ^= x_rows[low + t]
                us ^= u_rows[low + t]
        wts = np.bitwise_count(xs).sum(axis=1).astype(np.int64)
        if hi == 0:
            wts = wts[1:]
            xs, us = xs[1:], us[1:]
        dist += np.bincount(wts, minlength=N + 1)
        if wts.size == 0:
            continue
        wmin = int(wts.min())
        if best_w is None or wmin < best_w:
            best_w, best_leaders = wmin, []
        if wmin == best_w:
            best_leaders.append(_lowest_bit(us[wts == wmin]))

    if best_w is None:
        return SpectrumReport(code.scheme, None, 0, {}, "message_enum", 2**k, dist)
    leaders = np.concatenate(best_leaders)
    per_coset = {int(i): int(c) for i, c in zip(*np.unique(leaders, return_counts=True))}
    return SpectrumReport(code.scheme, best_w, int(leaders.size), per_coset, "message_enum", 2**k, dist)


def enumerate_spectrum(code: Code, method: str = "auto", w_cap: int | None = None,
                       budget: int = DEFAULT_PATTERN_BUDGET,
                       max_bits: int = DEFAULT_MAX_MESSAGE_BITS) -> SpectrumReport:
    if method == "message" or (method == "auto" and code.k <= 20):
        return enumerate_by_message(code, max_bits)
    if method in ("support", "auto"):
        if w_cap is None:
            w_cap = compute_wmin(code.profile)
        return enumerate_by_support(code, w_cap, budget)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class ComparisonRow:
    name: str
    report: SpectrumReport
    reduction_pct: float


def compare_schemes(codes, method: str = "auto", w_cap: int | None = None, **kw) -> list[ComparisonRow]:
    """``codes``: sequence of ``(name, Code)``.  Reductions are relative to the
    first entry's ``A_wmin`` (only meaningful when the minimum weights agree)."""
    rows = []
    base = None
    for name, code in codes:
        rep = enumerate_spectrum(code, method, w_cap, **kw)
        if base is None:
            base = rep.A_wmin
        pct = 0.0 if not base else 100.0 * (base - rep.A_wmin) / base
        rows.append(ComparisonRow(name, rep, pct))
    return rows


def format_comparison(rows) -> str:
    lines = ["name,scheme,wmin,A_wmin,method,reduction_pct"]
    for r in rows:
        w = "" if r.report.wmin_observed is None else r.report.wmin_observed
        lines.append(f"{r.name},{r.report.scheme},{w},{r.report.A_wmin},{r.report.method},{r.reduction_pct:.2f}")
    return "\n".join(lines) + "\n"
