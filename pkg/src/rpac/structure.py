"""Coset structure of minimum-weight codewords and the truncated union bound.

The codewords of a polar code split into cosets ``C_i``, one per information
index ``i``: those whose u-domain form has its first nonzero coordinate at
``i``.  Only cosets whose leader row has the minimum weight (the set ``B``)
hold minimum-weight codewords, and coset ``i`` holds exactly ``2^|K_i|`` of
them, where ``K_i`` collects the larger information indices whose binary
support adds exactly one bit to that of ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import erfc

from .bitlinalg import popcount, row_weight
from .construction import CodeProfile

INCAPABLE_NO_FROZEN = "incapable_no_frozen"
INCAPABLE_ALL_SINGLETON = "incapable_all_singleton"
CAPABLE = "capable"


class InvalidProfileError(ValueError):
    pass


def _new_bits(j: int, i: int) -> int:
    """``|supp(bin(j)) \\ supp(bin(i))|``."""
    return popcount(j & ~i)


def compute_wmin(profile: CodeProfile) -> int:
    if not profile.info_set:
        raise InvalidProfileError("empty information set")
    return min(row_weight(i, profile.n) for i in profile.info_set)


def compute_Ki(i: int, profile: CodeProfile) -> frozenset[int]:
    if i not in profile.info_set:
        raise ValueError(f"{i} is not an information index")
    return frozenset(j for j in profile.info_set if j > i and _new_bits(j, i) == 1)


def classify_coset(i: int, profile: CodeProfile) -> str:
    """Which immunity case (if any) makes coset ``i`` immune to forward precoding."""
    if i not in profile.info_set:
        raise ValueError(f"{i} is not an information index")
    above = [f for f in profile.frozen_set if f > i]
    if not above:
        return INCAPABLE_NO_FROZEN
    if all(_new_bits(f, i) == 1 for f in above):
        return INCAPABLE_ALL_SINGLETON
    return CAPABLE


@dataclass(frozen=True)
class MinWeightSummary:
    wmin: int
    B: tuple[int, ...]
    A_wmin_formula: int
    per_coset: dict


def polar_Awmin_formula(profile: CodeProfile) -> MinWeightSummary:
    """Closed-form error coefficient of the plain polar code."""
    wmin = compute_wmin(profile)
    B = tuple(i for i in profile.info_set if row_weight(i, profile.n) == wmin)
    per_coset = {i: 2 ** len(compute_Ki(i, profile)) for i in B}
    return MinWeightSummary(wmin, B, sum(per_coset.values()), per_coset)


@dataclass(frozen=True)
class CosetReport:
    leader_index: int
    K_i: frozenset[int]
    lemma1_class: str
    in_B: bool
    A_i_wmin: int | None  # polar count 2^|K_i| for leaders in B, 0 otherwise

    @property
    def size_log2(self) -> int:
        return len(self.K_i)


def coset_reports(profile: CodeProfile) -> list[CosetReport]:
    wmin = compute_wmin(profile)
    out = []
    for i in profile.info_set:
        Ki = compute_Ki(i, profile)
        in_B = row_weight(i, profile.n) == wmin
        out.append(CosetReport(i, Ki, classify_coset(i, profile), in_B, 2 ** len(Ki) if in_B else 0))
    return out


def format_coset_table(reports) -> str:
    lines = ["leader,row_weight_in_B,K_i_size,class,two_pow_K_i,A_i_wmin"]
    for r in reports:
        lines.append(
            f"{r.leader_index},{int(r.in_B)},{r.size_log2},{r.lemma1_class},"
            f"{2 ** r.size_log2},{r.A_i_wmin}"
        )
    return "\n".join(lines) + "\n"


# -- union bound -----------------------------------------------------------

def qfunc(x: float) -> float:
    """Gaussian tail ``Q(x) = P(Z > x)``."""
    return 0.5 * float(erfc(x / math.sqrt(2.0)))


def qfunc_series(x: float, terms: int = 400) -> float:
    """Q from the erf power series below ``x = 2`` and the Laplace continued
    fraction above; independent of :func:`qfunc` so the two cross-check."""
    if x < 0:
        return 1.0 - qfunc_series(-x, terms)
    if x < 2.0:
        # erf(z) = 2/sqrt(pi) e^-z^2 sum_k 2^k z^(2k+1) / (2k+1)!!
        z = x / math.sqrt(2.0)
        term = z
        acc = z
        for k in range(1, terms):
            term *= 2.0 * z * z / (2 * k + 1)
            acc += term
            if term < 1e-18 * acc:
                break
        erf = 2.0 / math.sqrt(math.pi) * math.exp(-z * z) * acc
        return 0.5 * (1.0 - erf)
    # Q(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...))))
    frac = 0.0
    for k in range(terms, 0, -1):
        frac = k / (x + frac)
    return math.exp(-x * x / 2) / math.sqrt(2 * math.pi) / (x + frac)


def union_bound(A_wmin: int, wmin: int, rate: float, ebn0_db: float, q=qfunc) -> float:
    """Minimum-weight term of the BI-AWGN union bound on block error rate."""
    if A_wmin < 0:
        raise ValueError("A_wmin must be non-negative")
    if A_wmin == 0:
        return 0.0
    return A_wmin * q(math.sqrt(2.0 * wmin * rate * 10 ** (ebn0_db / 10.0)))
