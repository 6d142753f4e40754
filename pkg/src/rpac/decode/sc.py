"""Plain successive-cancellation decoding and a forced-path metric.

Both are written as straightforward recursions in numpy, sharing no code
with the compiled list decoder, so they serve as its reference.
"""

from __future__ import annotations

import numpy as np

from ..code import Code
from ..precode import FORWARD, REVERSE


def boxplus(a, b, minsum: bool = False):
    """LLR of the XOR of two bits with LLRs ``a`` and ``b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    s = np.where(a >= 0, 1.0, -1.0) * np.where(b >= 0, 1.0, -1.0)
    m = np.minimum(np.abs(a), np.abs(b))
    if minsum:
        return s * m
    return s * m + np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))


def branch_metric(u: int, llr: float, mode: str = "exact") -> float:
    """Path-metric increment for deciding bit ``u`` against soft value ``llr``.

    ``exact``: ``ln(1 + exp(-(1 - 2u) llr))``.  ``approx``: ``0`` when ``u``
    agrees with the hard decision of ``llr`` and ``|llr|`` otherwise.
    """
    if mode == "exact":
        x = llr if u == 0 else -llr
        return float(np.logaddexp(0.0, -x))
    if mode in ("approx", "approximate"):
        hard = 0 if llr >= 0 else 1
        return 0.0 if u == hard else abs(float(llr))
    raise ValueError(f"unknown metric mode {mode!r}")


def _sc(llr, decide, minsum):
    """Recursive SC over one node; ``decide(lam)`` returns the leaf's u bit.
    Returns the node's codeword bits."""
    if llr.size == 1:
        return np.array([decide(float(llr[0]))], dtype=np.uint8)
    h = llr.size // 2
    a, b = llr[:h], llr[h:]
    left = _sc(boxplus(a, b, minsum), decide, minsum)
    right = _sc(b + (1 - 2 * left.astype(float)) * a, decide, minsum)
    return np.concatenate([left ^ right, right])


def sc_decode(llr, code: Code, minsum: bool = False) -> np.ndarray:
    """Successive-cancellation estimate of the message (polar or PAC).

    On an information index the decision picks the ``v`` bit whose implied
    ``u`` agrees with the LLR sign; a zero LLR resolves to ``v = 0``.
    """
    if code.precoder.kind == REVERSE:
        raise ValueError("SC cannot decode a reverse pre-transform; use lascl_decode")
    llr = np.asarray(llr, dtype=float)
    N = code.N
    info = code.profile.info_mask
    taps = [ell for ell, c in enumerate(code.precoder.p) if c and ell > 0]
    forward = code.precoder.kind == FORWARD
    v = np.zeros(N, dtype=np.uint8)
    state = {"i": 0}

    def decide(lam):
        i = state["i"]
        state["i"] = i + 1
        c = 0
        if forward:
            for ell in taps:
                if i - ell >= 0:
                    c ^= int(v[i - ell])
        if info[i]:
            hard = 0 if lam > 0 else 1
            v[i] = 0 if lam == 0 else hard ^ c
        return int(v[i]) ^ c

    _sc(llr, decide, minsum)
    return code.v_to_message(v)


def forced_path_metric(llr, code: Code, v, mode: str = "exact", minsum: bool = False) -> float:
    """Path metric of the single path that follows ``v`` throughout."""
    llr = np.asarray(llr, dtype=float)
    u = code.precode(np.asarray(v, dtype=np.uint8))
    total = [0.0]
    state = {"i": 0}

    def decide(lam):
        i = state["i"]
        state["i"] = i + 1
        total[0] += branch_metric(int(u[i]), lam, mode)
        return int(u[i])

    _sc(llr, decide, minsum)
    return total[0]
