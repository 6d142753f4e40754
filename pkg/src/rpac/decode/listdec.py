"""List decoders: SCL (polar, PAC, CRC-aided polar) and look-ahead SCL (RPAC)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import crc as _crc
from ..code import Code
from ..construction import CodeProfile
from ..precode import FORWARD, IDENTITY, REVERSE, PrecoderSpec, reverse_condition
from . import _kernel

METRIC_MODES = ("exact", "approx")
_KINDS = {IDENTITY: _kernel.KIND_IDENTITY, FORWARD: _kernel.KIND_FORWARD, REVERSE: _kernel.KIND_REVERSE}


class DecoderConfigError(ValueError):
    pass


class ListSizeError(DecoderConfigError):
    """The list cannot hold every initial look-ahead assignment."""

    def __init__(self, list_size: int, l_min: int):
        super().__init__(f"list size {list_size} is below L_min = {l_min} required by the look-ahead window")
        self.list_size = list_size
        self.l_min = l_min


@dataclass(frozen=True)
class DecoderConfig:
    """``boxplus`` selects the upper-branch SC update: ``exact`` or ``minsum``."""

    scheme: str
    list_size: int = 1
    metric_mode: str = "exact"
    precoder: PrecoderSpec = field(default_factory=PrecoderSpec.identity)
    crc_poly: tuple[int, ...] | None = None
    boxplus: str = "exact"

    def __post_init__(self):
        if self.list_size < 1:
            raise DecoderConfigError("list size must be at least 1")
        if self.metric_mode not in METRIC_MODES:
            raise DecoderConfigError(f"metric mode must be one of {METRIC_MODES}")
        if self.boxplus not in ("exact", "minsum"):
            raise DecoderConfigError("boxplus must be 'exact' or 'minsum'")
        if self.crc_poly is not None:
            object.__setattr__(self, "crc_poly", tuple(self.crc_poly))

    @classmethod
    def for_code(cls, code: Code, list_size: int = 1, **kw) -> "DecoderConfig":
        return cls(code.scheme, list_size, precoder=code.precoder, crc_poly=code.crc_poly, **kw)

    def code(self, profile: CodeProfile) -> Code:
        return Code(profile, self.precoder, self.crc_poly)


@dataclass
class DecoderPath:
    message: np.ndarray
    v: np.ndarray
    u: np.ndarray
    metric: float
    crc_ok: bool | None = None


@dataclass
class ListResult:
    """Surviving paths, best first, plus work counters."""

    paths: list[DecoderPath]
    node_visits: int
    max_paths: int
    prunes: int

    @property
    def best(self) -> DecoderPath:
        return self.paths[0]

    @property
    def message(self) -> np.ndarray:
        return self.paths[0].message

    def __len__(self):
        return len(self.paths)

    def __getitem__(self, k):
        return self.paths[k]


def lookahead_nu(profile: CodeProfile, s: int) -> int:
    """Number of information coordinates in ``[0, s]``."""
    return sum(1 for i in profile.info_set if i <= s)


def required_list_size(profile: CodeProfile, s: int) -> int:
    """``2^nu`` when the first information index falls inside the initial
    window (``I_0 < s``), else 1."""
    if s == 0 or not profile.info_set or profile.info_set[0] >= s:
        return 1
    return 2 ** lookahead_nu(profile, s)


def _run(llr, code: Code, config: DecoderConfig, lookahead: int) -> ListResult:
    llr = np.ascontiguousarray(llr, dtype=np.float64)
    N = code.N
    if llr.shape != (N,):
        raise ValueError(f"expected {N} LLRs, got shape {llr.shape}")
    if not np.all(np.isfinite(llr)):
        raise ValueError("LLRs must be finite")
    L = config.list_size
    prec = code.precoder
    taps = np.array(prec.p, dtype=np.uint8)
    if prec.kind == REVERSE:
        cond = reverse_condition(prec, N).astype(np.bool_)
    else:
        cond = np.zeros(N, dtype=np.bool_)
    v_out = np.zeros((L, N), dtype=np.uint8)
    m_out = np.zeros(L)
    stats = np.zeros(3, dtype=np.int64)
    P = _kernel.list_decode(
        llr, code.profile.info_mask.astype(np.bool_), _KINDS[prec.kind], taps, cond,
        lookahead, L, config.metric_mode == "approx", config.boxplus == "minsum",
        v_out, m_out, stats,
    )
    if P < 0:
        raise ListSizeError(L, 2 ** lookahead_nu(code.profile, lookahead))
    v_out = v_out[:P]
    u_out = code.precode(v_out)
    msgs = code.v_to_message(v_out)
    ok = [None] * P
    if code.crc_poly is not None:
        info = v_out[:, list(code.profile.info_set)]
        ok = [bool(b) for b in _crc.crc_check(info, code.crc_poly)]
    paths = [DecoderPath(msgs[q], v_out[q], u_out[q], float(m_out[q]), ok[q]) for q in range(P)]
    if code.crc_poly is not None:
        passing = [q for q in range(P) if ok[q]]
        if passing:
            first = passing[0]
            paths = [paths[first]] + paths[:first] + paths[first + 1:]
    return ListResult(paths, int(stats[0]), int(stats[1]), int(stats[2]))


def scl_decode(llr, profile: CodeProfile, config: DecoderConfig) -> ListResult:
    """SCL decoding of polar, PAC or CRC-aided polar codes.

    Paths are ranked by metric; with a CRC the best passing path is moved to
    the front (the order is unchanged when no path passes).
    """
    code = config.code(profile)
    if code.precoder.kind == REVERSE:
        raise DecoderConfigError("reverse pre-transform needs lascl_decode")
    return _run(llr, code, config, 0)


def lascl_decode(llr, profile: CodeProfile, config: DecoderConfig) -> ListResult:
    """Look-ahead SCL for the reverse pre-transform.

    Each path fixes ``v`` up to ``s`` coordinates ahead of the ``u`` decision
    it is scoring.  Raises :class:`ListSizeError` when the list cannot hold
    every assignment of the information coordinates in the initial window.
    """
    code = config.code(profile)
    if code.precoder.kind != REVERSE:
        raise DecoderConfigError("lascl_decode expects a reverse pre-transform")
    s = code.precoder.s
    l_min = required_list_size(profile, s)
    if config.list_size < l_min:
        raise ListSizeError(config.list_size, l_min)
    return _run(llr, code, config, s)


def decode(llr, code: Code, list_size: int = 1, **kw) -> ListResult:
    """Dispatch to the right list decoder for ``code``."""
    config = DecoderConfig.for_code(code, list_size, **kw)
    if code.precoder.kind == REVERSE:
        return lascl_decode(llr, code.profile, config)
    return scl_decode(llr, code.profile, config)
