"""Compiled list-decoder core shared by SCL, PAC-SCL and LA-SCL.

Every scheme is run as a look-ahead list decoder with window ``d``: before
deciding ``u_i`` each path has fixed ``v_0 .. v_{i+d}``.  Polar and PAC use
``d = 0``; RPAC uses ``d = s``.  At stage ``i`` every path is extended at
``v_{i+d}`` (two children on an information index, one child ``0`` on a
frozen index, none past the block end), ``u_i`` is computed from the path's
``v`` by the pre-transform, the branch metric is added, and the list is cut
back to ``L`` by smallest metric.  Children are generated parent by parent,
bit 0 before bit 1, and cut with a stable sort.

SC state: ``alpha`` level ``k`` holds the ``2^k`` LLRs of the current node at
that level (level ``n`` is the channel, shared by all paths) and ``beta``
level ``k`` the partial sums of the most recent left child there.  Natural
order: bit ``k`` of ``i`` selects the left (f) or right (g) child when going
from level ``k + 1`` to ``k``.  Level buffers live in pools and are shared
between paths by reference; a path takes a private buffer only when it is
about to overwrite a shared one, so branching copies no soft values.
"""

from __future__ import annotations

import numba
import numpy as np

KIND_IDENTITY, KIND_FORWARD, KIND_REVERSE = 0, 1, 2

# stats slots
VISITS, MAX_PATHS, PRUNES = 0, 1, 2


@numba.njit(cache=True, inline="always")
def _boxplus(a, b, minsum):
    sa = 1.0 if a >= 0 else -1.0
    sb = 1.0 if b >= 0 else -1.0
    m = min(abs(a), abs(b))
    if minsum:
        return sa * sb * m
    return sa * sb * m + np.log1p(np.exp(-abs(a + b))) - np.log1p(np.exp(-abs(a - b)))


@numba.njit(cache=True, inline="always")
def _branch_metric(u, lam, approx):
    if approx:
        hard = 0 if lam >= 0 else 1
        return 0.0 if u == hard else abs(lam)
    x = lam if u == 0 else -lam
    if x > 0:
        return np.log1p(np.exp(-x))
    return -x + np.log1p(np.exp(x))


@numba.njit(cache=True)
def _ctz(i):
    t = 0
    while (i & 1) == 0:
        i >>= 1
        t += 1
    return t


@numba.njit(cache=True)
def _writable(ptr, refs, free, nfree, p, k):
    """Make path ``p``'s level-``k`` buffer private; return its pool slot."""
    b = ptr[p, k]
    if refs[k, b] > 1:
        refs[k, b] -= 1
        nfree[k] -= 1
        b = free[k, nfree[k]]
        refs[k, b] = 1
        ptr[p, k] = b
    return b


@numba.njit(cache=True)
def _rebuild_refs(ptr, P, refs, free, nfree, L, n):
    refs[:, :] = 0
    for p in range(P):
        for k in range(n):
            refs[k, ptr[p, k]] += 1
    for k in range(n):
        c = 0
        for b in range(L):
            if refs[k, b] == 0:
                free[k, c] = b
                c += 1
        nfree[k] = c


@numba.njit(cache=True)
def _get_bit(v, p, j):
    return (v[p, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)


@numba.njit(cache=True)
def _u_bit(v, p, i, N, kind, taps, cond):
    if kind == KIND_IDENTITY:
        return _get_bit(v, p, i)
    acc = np.uint64(0)
    if kind == KIND_FORWARD:
        for ell in range(taps.size):
            if taps[ell] and i - ell >= 0:
                acc ^= _get_bit(v, p, i - ell)
        return acc
    if not cond[i]:
        return _get_bit(v, p, i)
    for ell in range(taps.size):
        if taps[ell] and i + ell < N:
            acc ^= _get_bit(v, p, i + ell)
    return acc


@numba.njit(cache=True)
def list_decode(chan, info, kind, taps, cond, d, L, approx, minsum,
                v_out, metric_out, stats):
    """Decode one block.  Fills the first ``P`` rows of ``v_out`` and
    ``metric_out`` best first and returns ``P`` (``-1`` if the initial
    look-ahead expansion does not fit in ``L``).  ``stats`` receives SC node
    visits, the peak path count and the number of pruning events."""
    N = chan.size
    n = 0
    while (1 << n) < N:
        n += 1
    W = (N + 63) // 64

    # level n, slot 0 holds the channel LLRs for every path
    alpha = np.zeros((n + 1, L, N))
    alpha[n, 0, :] = chan
    beta = np.zeros((n, L, max(N // 2, 1)), dtype=np.uint8)
    a_ptr = np.zeros((L, n + 1), dtype=np.int64)
    b_ptr = np.zeros((L, n), dtype=np.int64)
    a_ptr2 = np.zeros((L, n + 1), dtype=np.int64)
    b_ptr2 = np.zeros((L, n), dtype=np.int64)
    a_refs = np.zeros((n, L), dtype=np.int64)
    b_refs = np.zeros((n, L), dtype=np.int64)
    a_free = np.zeros((n, L), dtype=np.int64)
    b_free = np.zeros((n, L), dtype=np.int64)
    a_nfree = np.zeros(n, dtype=np.int64)
    b_nfree = np.zeros(n, dtype=np.int64)
    v = np.zeros((L, W), dtype=np.uint64)
    v2 = np.zeros((L, W), dtype=np.uint64)
    metric = np.zeros(L)
    metric2 = np.zeros(L)
    lam = np.zeros(L)
    cand_metric = np.zeros(2 * L)
    cand_parent = np.zeros(2 * L, dtype=np.int64)
    cand_bit = np.zeros(2 * L, dtype=np.uint8)
    cand_u = np.zeros(2 * L, dtype=np.uint8)
    path_u = np.zeros(L, dtype=np.uint8)
    cur = np.zeros(N, dtype=np.uint8)
    nxt = np.zeros(N, dtype=np.uint8)
    stats[:] = 0

    P = 1
    # look-ahead initialisation: fix v_0 .. v_{d-1}
    for j in range(min(d, N)):
        if info[j]:
            if 2 * P > L:
                return -1
            for p in range(P):
                for w in range(W):
                    v[P + p, w] = v[p, w]
                v[P + p, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
            P *= 2
    _rebuild_refs(a_ptr, P, a_refs, a_free, a_nfree, L, n)
    _rebuild_refs(b_ptr, P, b_refs, b_free, b_nfree, L, n)
    stats[MAX_PATHS] = P

    for i in range(N):
        top = n - 1 if i == 0 else _ctz(i)
        for p in range(P):
            for k in range(top, -1, -1):
                size = 1 << k
                db = _writable(a_ptr, a_refs, a_free, a_nfree, p, k)
                sb = a_ptr[p, k + 1]
                if k == top and i != 0:
                    bi = b_ptr[p, k]
                    for t in range(size):
                        if beta[k, bi, t]:
                            alpha[k, db, t] = alpha[k + 1, sb, size + t] - alpha[k + 1, sb, t]
                        else:
                            alpha[k, db, t] = alpha[k + 1, sb, size + t] + alpha[k + 1, sb, t]
                else:
                    for t in range(size):
                        alpha[k, db, t] = _boxplus(alpha[k + 1, sb, t], alpha[k + 1, sb, size + t], minsum)
                stats[VISITS] += size
            lam[p] = alpha[0, a_ptr[p, 0], 0]

        j = i + d
        branch = j < N and info[j]
        C = 0
        for p in range(P):
            for b in range(2 if branch else 1):
                if b:
                    v[p, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
                ub = _u_bit(v, p, i, N, kind, taps, cond)
                if b:
                    v[p, j >> 6] &= ~(np.uint64(1) << np.uint64(j & 63))
                cand_parent[C] = p
                cand_bit[C] = b
                cand_u[C] = ub
                cand_metric[C] = metric[p] + _branch_metric(ub, lam[p], approx)
                C += 1

        if branch:
            if C <= L:
                keep = np.arange(C)
            else:
                keep = np.argsort(cand_metric[:C], kind="mergesort")[:L]
                stats[PRUNES] += 1
            newP = keep.size
            for q in range(newP):
                c = keep[q]
                p = cand_parent[c]
                for k in range(n):
                    a_ptr2[q, k] = a_ptr[p, k]
                    b_ptr2[q, k] = b_ptr[p, k]
                for w in range(W):
                    v2[q, w] = v[p, w]
                if cand_bit[c]:
                    v2[q, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
                metric2[q] = cand_metric[c]
                path_u[q] = cand_u[c]
            a_ptr, a_ptr2 = a_ptr2, a_ptr
            b_ptr, b_ptr2 = b_ptr2, b_ptr
            v, v2 = v2, v
            metric, metric2 = metric2, metric
            P = newP
            _rebuild_refs(a_ptr, P, a_refs, a_free, a_nfree, L, n)
            _rebuild_refs(b_ptr, P, b_refs, b_free, b_nfree, L, n)
            if P > stats[MAX_PATHS]:
                stats[MAX_PATHS] = P
        else:
            for p in range(P):
                metric[p] = cand_metric[p]
                path_u[p] = cand_u[p]

        # fold u_i into the partial sums
        for p in range(P):
            cur[0] = path_u[p]
            size = 1
            k = 0
            while k < n and (i >> k) & 1:
                bb = beta[k, b_ptr[p, k]]
                for t in range(size):
                    nxt[t] = bb[t] ^ cur[t]
                    nxt[size + t] = cur[t]
                for t in range(2 * size):
                    cur[t] = nxt[t]
                size <<= 1
                k += 1
            if k < n:
                dst = beta[k, _writable(b_ptr, b_refs, b_free, b_nfree, p, k)]
                for t in range(size):
                    dst[t] = cur[t]

    order = np.argsort(metric[:P], kind="mergesort")
    for q in range(P):
        p = order[q]
        for jj in range(N):
            v_out[q, jj] = _get_bit(v, p, jj)
        metric_out[q] = metric[p]
    return P
