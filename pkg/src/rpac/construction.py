"""Information-set construction and code profile persistence.

Reliabilities come from density evolution under the Gaussian approximation
(GA): every bit channel's LLR is modelled as N(m, 2m) and only the mean ``m``
is tracked through the butterfly.  With ``x = u G_N`` in natural order, the
most significant bit of ``i`` picks the first split seen from the channel,
so one split step maps the mean of node ``j`` to ``f_c(m)`` at ``2j`` and
``2m`` at ``2j + 1``.

The check-node update is ``f_c(t) = phi^-1(1 - (1 - phi(t))^2)`` with the
usual two-piece fit of ``phi``::

    phi(x) = exp(-0.4527 x^0.86 + 0.0218)                 0 < x < 10
    phi(x) = sqrt(pi / x) exp(-x / 4) (1 - 10 / (7 x))    x >= 10

The first piece is inverted in closed form, the second by bracketed root
finding on ``log phi`` so very reliable channels do not underflow.

The design SNR is Eb/N0 in dB; the channel mean is ``2 / sigma^2`` with
``sigma^2 = 1 / (2 R 10^(snr/10))`` and ``R = K / N``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .bitlinalg import log2_length

PHI_SPLIT = 10.0
_A, _B, _C = 0.4527, 0.86, 0.0218


class ProfileError(ValueError):
    """Inconsistent profile contents (sizes, ranges, overlaps)."""


class ProfileParseError(ProfileError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


def log_phi(x: float) -> float:
    if x <= 0:
        return 0.0
    if x < PHI_SPLIT:
        # the fit exceeds 1 for x below about 0.03; phi is a probability
        return min(-_A * x**_B + _C, 0.0)
    return 0.5 * math.log(math.pi / x) - x / 4 + math.log1p(-10.0 / (7.0 * x))


def phi(x: float) -> float:
    return math.exp(log_phi(x))


def inv_log_phi(ly: float) -> float:
    """Inverse of :func:`log_phi` on ``(0, inf)``; ``ly >= 0`` maps to 0."""
    if ly >= 0:
        return 0.0
    # the pieces overlap slightly at the split; prefer the lower one there
    if ly >= _C - _A * PHI_SPLIT**_B:
        return ((_C - ly) / _A) ** (1.0 / _B)
    hi = 2 * PHI_SPLIT
    while log_phi(hi) > ly:
        hi *= 2
    return brentq(lambda x: log_phi(x) - ly, PHI_SPLIT, hi, xtol=1e-12, rtol=1e-14)


def check_node_mean(t: float) -> float:
    lp = log_phi(t)
    # log(1 - (1 - phi)^2) = log phi + log(2 - phi)
    return inv_log_phi(lp + math.log(2.0 - math.exp(lp)))


def ga_means(N: int, design_snr_db: float, rate: float) -> np.ndarray:
    """Mean LLR of every bit channel ``0..N-1`` under GA density evolution."""
    n = log2_length(N)
    sigma2 = 1.0 / (2.0 * rate * 10 ** (design_snr_db / 10.0))
    means = np.array([2.0 / sigma2])
    for _ in range(n):
        nxt = np.empty(2 * means.size)
        nxt[0::2] = [check_node_mean(t) for t in means]
        nxt[1::2] = 2.0 * means
        means = nxt
    return means


def reliability_order(means: np.ndarray) -> list[int]:
    """Indices from least to most reliable; on equal means the lower index
    ranks as more reliable."""
    return sorted(range(means.size), key=lambda i: (means[i], -i))


@dataclass(frozen=True)
class CodeProfile:
    N: int
    K: int
    info_set: tuple[int, ...]
    design_snr_db: float | None = None
    reliability_order: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        try:
            log2_length(self.N)
        except ValueError as exc:
            raise ProfileError(str(exc)) from None
        info = tuple(sorted(int(i) for i in self.info_set))
        object.__setattr__(self, "info_set", info)
        if len(set(info)) != len(info):
            raise ProfileError("info_set has duplicate indices")
        if len(info) != self.K:
            raise ProfileError(f"|info_set| = {len(info)} but K = {self.K}")
        if info and (info[0] < 0 or info[-1] >= self.N):
            raise ProfileError(f"info_set index out of range [0, {self.N - 1}]")
        if not 1 <= self.K <= self.N:
            raise ProfileError(f"K must be in [1, {self.N}], got {self.K}")

    @property
    def n(self) -> int:
        return self.N.bit_length() - 1

    @property
    def frozen_set(self) -> tuple[int, ...]:
        info = set(self.info_set)
        return tuple(i for i in range(self.N) if i not in info)

    @property
    def info_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[list(self.info_set)] = True
        return mask

    @property
    def rate(self) -> float:
        return self.K / self.N

    @property
    def external(self) -> bool:
        return self.design_snr_db is None


def construct_profile(N: int, K: int, design_snr_db: float) -> CodeProfile:
    """Pick the ``K`` most reliable bit channels by GA density evolution.

    Examples
    --------
    >>> construct_profile(2, 1, 0.0).info_set
    (1,)
    """
    log2_length(N)
    if not 1 <= K <= N:
        raise ProfileError(f"K must be in [1, {N}], got {K}")
    order = reliability_order(ga_means(N, design_snr_db, K / N))
    return CodeProfile(N, K, tuple(order[N - K:]), float(design_snr_db), tuple(order))


# -- profile files ---------------------------------------------------------

_LINE = re.compile(r"^\s*([A-Za-z_]+)\s*=\s*(.*?)\s*$")


def format_profile(profile: CodeProfile) -> str:
    snr = "external" if profile.design_snr_db is None else repr(float(profile.design_snr_db))
    return (
        "# polar code profile\n"
        f"N = {profile.N}\n"
        f"K = {profile.K}\n"
        f"design_snr_db = {snr}\n"
        f"info_set = {' '.join(map(str, profile.info_set))}\n"
    )


def save_profile(profile: CodeProfile, path) -> None:
    Path(path).write_text(format_profile(profile))


def parse_profile(text: str, source="<string>") -> CodeProfile:
    fields: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE.match(stripped)
        if not m:
            raise ProfileParseError(source, lineno, f"expected 'key = value', got {line!r}")
        key, value = m.group(1), m.group(2)
        if key not in ("N", "K", "design_snr_db", "info_set"):
            raise ProfileParseError(source, lineno, f"unknown field {key!r}")
        if key in fields:
            raise ProfileParseError(source, lineno, f"duplicate field {key!r}")
        fields[key] = (lineno, value)

    for key in ("N", "K", "info_set"):
        if key not in fields:
            raise ProfileParseError(source, 0, f"missing field {key!r}")

    def integer(key):
        lineno, value = fields[key]
        try:
            return int(value)
        except ValueError:
            raise ProfileParseError(source, lineno, f"{key} must be an integer, got {value!r}") from None

    N, K = integer("N"), integer("K")
    lineno, raw = fields["info_set"]
    try:
        info = [int(tok) for tok in raw.replace(",", " ").split()]
    except ValueError:
        raise ProfileParseError(source, lineno, "info_set must list integers") from None
    snr = None
    if "design_snr_db" in fields:
        lineno, value = fields["design_snr_db"]
        if value != "external":
            try:
                snr = float(value)
            except ValueError:
                raise ProfileParseError(source, lineno, f"bad design_snr_db {value!r}") from None
    return CodeProfile(N, K, tuple(info), snr)


def load_profile(path) -> CodeProfile:
    return parse_profile(Path(path).read_text(), source=str(path))


def profile_from_info_set(N: int, info_set) -> CodeProfile:
    """Wrap an externally supplied information set (no construction)."""
    info = tuple(sorted(info_set))
    return CodeProfile(N, len(info), info, None)
