"""BI-AWGN Monte Carlo block-error-rate simulation.

Each trial draws its message and its noise from a Philox stream keyed by the
seed with the trial number in the counter, so any trial can be replayed on
its own and the result does not depend on how trials are split between
workers.  A point stops at the exact trial where the error count reaches
``min_errors`` (or at ``max_frames``), whatever the chunking.
"""

from __future__ import annotations

import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from .code import Code
from .decode import DecoderConfig, decode
from .spectrum import SpectrumReport
from .structure import union_bound

CSV_COLUMNS = ("ebn0_db", "frames", "block_errors", "bler", "union_bound", "elapsed_s")
DEFAULT_MIN_ERRORS = 100
DEFAULT_MAX_FRAMES = 10**6

_STREAM_MESSAGE, _STREAM_NOISE = 0, 1


def noise_sigma(ebn0_db: float, rate: float) -> float:
    """``sigma = sqrt(1 / (2 R 10^(Eb/N0 / 10)))`` for unit-energy BPSK."""
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: float
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError("rate must lie in (0, 1]")

    @property
    def sigma(self) -> float:
        return noise_sigma(self.ebn0_db, self.rate)


def trial_rng(seed: int, trial: int, stream: int) -> np.random.Generator:
    """Independent generator for one (seed, trial, stream) triple."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, trial]))


def transmit(x, cfg: ChannelConfig, trial: int) -> np.ndarray:
    """BPSK ``1 - 2b`` over AWGN; returns channel LLRs ``2 y / sigma^2``."""
    x = np.asarray(x, dtype=np.uint8)
    sigma = cfg.sigma
    rng = trial_rng(cfg.seed, trial, _STREAM_NOISE)
    y = 1.0 - 2.0 * x + sigma * rng.standard_normal(x.shape)
    return 2.0 * y / sigma**2


def trial_message(code: Code, seed: int, trial: int) -> np.ndarray:
    return trial_rng(seed, trial, _STREAM_MESSAGE).integers(0, 2, code.k, dtype=np.uint8)


@dataclass
class BlerPoint:
    ebn0_db: float
    frames: int
    block_errors: int
    elapsed_s: float = 0.0
    union_bound: float | None = None

    def __post_init__(self):
        if not 0 <= self.block_errors <= self.frames:
            raise ValueError("block errors must lie in [0, frames]")

    @property
    def bler(self) -> float:
        return self.block_errors / self.frames if self.frames else 0.0

    def interval(self, confidence: float = 0.95) -> tuple[float, float]:
        """Clopper-Pearson interval on the block error rate."""
        if not self.frames:
            return 0.0, 1.0
        ci = binomtest(self.block_errors, self.frames).proportion_ci(confidence, method="exact")
        return float(ci.low), float(ci.high)


def run_trials(code: Code, config: DecoderConfig, ebn0_db: float, seed: int,
               start: int, stop: int) -> np.ndarray:
    """Block-error flags for trials ``start .. stop - 1``."""
    cfg = ChannelConfig(ebn0_db, code.rate, seed)
    out = np.zeros(stop - start, dtype=bool)
    for t in range(start, stop):
        m = trial_message(code, seed, t)
        llr = transmit(code.encode(m), cfg, t)
        res = decode(llr, code, config.list_size, metric_mode=config.metric_mode, boxplus=config.boxplus)
        out[t - start] = not np.array_equal(res.message, m)
    return out


def run_point(code: Code, config: DecoderConfig, ebn0_db: float, *, min_errors: int = DEFAULT_MIN_ERRORS,
              max_frames: int = DEFAULT_MAX_FRAMES, seed: int = 0, workers: int = 1,
              chunk: int = 2000, pool=None) -> BlerPoint:
    if min_errors < 1:
        raise ValueError("min_errors must be at least 1")
    t0 = time.perf_counter()
    frames = errors = 0
    nxt = 0

    def chunks():
        nonlocal nxt
        while nxt < max_frames:
            a, b = nxt, min(nxt + chunk, max_frames)
            nxt = b
            yield a, b

    gen = chunks()
    done = False
    while not done:
        batch = [c for _, c in zip(range(max(workers, 1)), gen)]
        if not batch:
            break
        if pool is None:
            results = [run_trials(code, config, ebn0_db, seed, a, b) for a, b in batch]
        else:
            futs = [pool.submit(run_trials, code, config, ebn0_db, seed, a, b) for a, b in batch]
            results = [f.result() for f in futs]
        for flags in results:
            hits = np.flatnonzero(flags)
            need = min_errors - errors
            if hits.size >= need:
                frames += int(hits[need - 1]) + 1
                errors = min_errors
                done = True
                break
            frames += flags.size
            errors += int(hits.size)
    return BlerPoint(ebn0_db, frames, errors, time.perf_counter() - t0)


def run_bler(code: Code, config: DecoderConfig, snr_list, *, min_errors: int = DEFAULT_MIN_ERRORS,
             max_frames: int = DEFAULT_MAX_FRAMES, seed: int = 0, workers: int = 1,
             chunk: int = 2000, progress=None) -> list[BlerPoint]:
    """One :class:`BlerPoint` per Eb/N0 value; identical for any ``workers``."""
    if config.scheme != code.scheme:
        raise ValueError(f"decoder configured for {config.scheme} but the code is {code.scheme}")
    points = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for snr in snr_list:
            pt = run_point(code, config, float(snr), min_errors=min_errors, max_frames=max_frames,
                           seed=seed, workers=workers, chunk=chunk, pool=pool)
            points.append(pt)
            if progress is not None:
                progress(pt)
    finally:
        if pool is not None:
            pool.shutdown()
    return points


def overlay_union_bound(points, spectrum: SpectrumReport, code: Code) -> list[BlerPoint]:
    """Attach the minimum-weight union bound to each point (in place)."""
    if spectrum.scheme != code.scheme:
        raise ValueError(f"spectrum is for {spectrum.scheme}, code is {code.scheme}")
    for pt in points:
        if spectrum.wmin_observed is None:
            pt.union_bound = 0.0
        else:
            pt.union_bound = union_bound(spectrum.A_wmin, spectrum.wmin_observed, code.rate, pt.ebn0_db)
    return points


def snr_at_bler(points, target: float) -> float | None:
    """Eb/N0 where the curve crosses ``target``, interpolating log10(BLER)
    linearly between the bracketing points; ``None`` if never crossed."""
    pts = sorted((p for p in points if p.block_errors > 0), key=lambda p: p.ebn0_db)
    for a, b in zip(pts, pts[1:]):
        if a.bler >= target >= b.bler and a.bler > b.bler:
            la, lb, lt = math.log10(a.bler), math.log10(b.bler), math.log10(target)
            return a.ebn0_db + (la - lt) / (la - lb) * (b.ebn0_db - a.ebn0_db)
    return None


# -- CSV -------------------------------------------------------------------

def format_csv(points, meta: dict | None = None) -> str:
    """Rows under a fixed header; ``meta`` goes first as ``# key: value`` lines."""
    buf = io.StringIO()
    for k, v in (meta or {}).items():
        buf.write(f"# {k}: {v}\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for p in points:
        ub = "" if p.union_bound is None else f"{p.union_bound:.6e}"
        buf.write(f"{p.ebn0_db:g},{p.frames},{p.block_errors},{p.bler:.6e},{ub},{p.elapsed_s:.3f}\n")
    return buf.getvalue()


def parse_csv(text: str) -> tuple[list[BlerPoint], dict]:
    meta = {}
    points = []
    header_seen = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
            continue
        if not header_seen:
            if tuple(line.strip().split(",")) != CSV_COLUMNS:
                raise ValueError(f"unexpected CSV header {line!r}")
            header_seen = True
            continue
        snr, frames, errs, _bler, ub, el = line.split(",")
        points.append(BlerPoint(float(snr), int(frames), int(errs), float(el), float(ub) if ub else None))
    return points, meta

