"""Command-line entry point.

Subcommands: ``construct``, ``spectrum``, ``cosets``, ``decode``,
``simulate`` and ``plot``.  Everything written to a file or stdout is plain
text or CSV, prefixed with ``# key: value`` lines holding the resolved
configuration so a run can be replayed.  ``simulate --figure`` and ``plot``
also render a BLER figure.

A YAML (or JSON) file given with ``--config`` supplies defaults for any flag
of the chosen subcommand; keys use the long flag name with dashes or
underscores.  Flags given on the command line win.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from . import crc as _crc
from .code import SCHEMES, Code, make_code
from .construction import construct_profile, format_profile, load_profile
from .decode import DecoderConfig, decode, required_list_size
from .precode import POLY_10, format_poly, parse_poly
from .sim import (
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_ERRORS,
    ChannelConfig,
    format_csv,
    overlay_union_bound,
    parse_csv,
    run_bler,
    transmit,
)
from .spectrum import (
    CSV_HEADER,
    DEFAULT_MAX_MESSAGE_BITS,
    DEFAULT_PATTERN_BUDGET,
    BudgetExceeded,
    enumerate_spectrum,
)
from .structure import coset_reports, format_coset_table, polar_Awmin_formula

DEFAULT_DESIGN_SNR = 2.0


class UsageError(ValueError):
    pass


# -- shared option groups --------------------------------------------------

def _add_profile_args(p):
    g = p.add_argument_group("code profile (file or construction)")
    g.add_argument("--profile", help="profile file written by 'construct'")
    g.add_argument("--n", type=int, help="block length N (power of two)")
    g.add_argument("--k", type=int, help="message length K")
    g.add_argument("--design-snr", type=float, default=DEFAULT_DESIGN_SNR,
                   help="design Eb/N0 in dB for construction (default %(default)s)")


def _add_code_args(p):
    _add_profile_args(p)
    g = p.add_argument_group("scheme")
    g.add_argument("--scheme", choices=SCHEMES, default="polar", help="coding scheme (default %(default)s)")
    g.add_argument("--poly", default=format_poly(POLY_10),
                   help="pre-transform taps p_0..p_s, comma separated (default %(default)s)")
    g.add_argument("--crc", default="crc11",
                   help="CRC for crc_polar: 'crc11' or exponents like 11,10,9,5,0 (default %(default)s)")


def _add_decoder_args(p):
    g = p.add_argument_group("decoder")
    g.add_argument("--list-size", type=int, default=32, help="list size L (default %(default)s)")
    g.add_argument("--metric", choices=("exact", "approx"), default="exact",
                   help="branch metric (default %(default)s)")
    g.add_argument("--boxplus", choices=("exact", "minsum"), default="exact",
                   help="SC upper-branch update (default %(default)s)")


def _resolve_code(args) -> Code:
    crc_poly = None
    if args.scheme == "crc_polar":
        try:
            crc_poly = _crc.parse_crc(args.crc)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if args.profile:
        if args.n is not None or args.k is not None:
            raise UsageError("give either --profile or --n/--k, not both")
        try:
            profile = load_profile(args.profile)
        except OSError as e:
            raise UsageError(f"cannot read profile: {e}") from None
    else:
        if args.n is None or args.k is None:
            raise UsageError("need --profile or both --n and --k")
        extra = _crc.degree(crc_poly) if crc_poly else 0
        profile = construct_profile(args.n, args.k + extra, args.design_snr)
    poly = parse_poly(args.poly) if args.scheme in ("pac", "rpac") else None
    return make_code(args.scheme, profile, poly, crc_poly)


def _code_meta(code: Code) -> dict:
    prof = code.profile
    meta = {
        "rpac_version": __version__,
        "scheme": code.scheme,
        "N": prof.N,
        "K_info": prof.K,
        "message_bits": code.k,
        "design_snr_db": "external" if prof.design_snr_db is None else prof.design_snr_db,
        "info_set": " ".join(map(str, prof.info_set)),
    }
    if code.scheme in ("pac", "rpac"):
        meta["poly"] = format_poly(code.precoder.p)
    if code.crc_poly is not None:
        meta["crc"] = ",".join(map(str, code.crc_poly))
    return meta


def _meta_lines(meta: dict) -> str:
    return "".join(f"# {k}: {v}\n" for k, v in meta.items())


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.n is None or args.k is None:
        raise UsageError("construct needs --n and --k")
    profile = construct_profile(args.n, args.k, args.design_snr)
    _emit(format_profile(profile), args.profile_out)
    return 0


def cmd_spectrum(args) -> int:
    code = _resolve_code(args)
    try:
        rep = enumerate_spectrum(code, args.method, args.wcap, budget=args.budget, max_bits=args.max_bits)
    except BudgetExceeded as e:
        raise UsageError(f"{e}; raise --budget/--max-bits or lower --wcap") from None
    meta = _code_meta(code)
    meta.update(method=args.method, wcap=args.wcap if args.wcap is not None else "wmin",
                budget=args.budget, max_bits=args.max_bits)
    text = _meta_lines(meta) + CSV_HEADER + "\n" + rep.csv_row() + "\n"
    if args.per_coset:
        text += "\nleader,count\n" + "".join(f"{i},{c}\n" for i, c in sorted(rep.per_coset.items()))
    _emit(text, args.out)
    return 0


def cmd_cosets(args) -> int:
    if args.profile:
        profile = load_profile(args.profile)
    elif args.n is not None and args.k is not None:
        profile = construct_profile(args.n, args.k, args.design_snr)
    else:
        raise UsageError("need --profile or both --n and --k")
    summary = polar_Awmin_formula(profile)
    meta = {
        "N": profile.N, "K": profile.K, "info_set": " ".join(map(str, profile.info_set)),
        "wmin": summary.wmin, "B": " ".join(map(str, summary.B)), "A_wmin": summary.A_wmin_formula,
    }
    _emit(_meta_lines(meta) + format_coset_table(coset_reports(profile)), args.out)
    return 0


def _read_bits(text: str, N: int) -> np.ndarray:
    tok = "".join(text.split())
    if tok.lower().startswith("0x"):
        val = int(tok, 16)
        bits = [(val >> (N - 1 - j)) & 1 for j in range(N)]
        if val >> N:
            raise UsageError(f"hex codeword wider than {N} bits")
    else:
        if set(tok) - {"0", "1"} or len(tok) != N:
            raise UsageError(f"expected {N} binary digits or a 0x-prefixed hex word")
        bits = [int(c) for c in tok]
    return np.array(bits, dtype=np.uint8)


def cmd_decode(args) -> int:
    code = _resolve_code(args)
    N = code.N
    if (args.input is None) == (args.llr is None):
        raise UsageError("give exactly one of --input (codeword) or --llr (soft values)")
    if args.llr:
        try:
            llr = np.array(Path(args.llr).read_text().split(), dtype=float)
        except ValueError:
            raise UsageError("LLR file must hold whitespace-separated numbers") from None
        if llr.size != N:
            raise UsageError(f"LLR file holds {llr.size} values, expected {N}")
        source = {"llr_file": args.llr}
    else:
        x = _read_bits(Path(args.input).read_text(), N)
        cfg = ChannelConfig(args.snr, code.rate, args.seed)
        if args.noise:
            llr = transmit(x, cfg, args.trial)
        else:
            llr = (1.0 - 2.0 * x) * 2.0 / cfg.sigma**2
        source = {"input": args.input, "snr_db": args.snr, "noise": args.noise,
                  "seed": args.seed, "trial": args.trial}
    res = decode(llr, code, args.list_size, metric_mode=args.metric, boxplus=args.boxplus)
    meta = _code_meta(code)
    meta.update(source)
    meta.update(list_size=args.list_size, metric=args.metric, boxplus=args.boxplus, node_visits=res.node_visits)
    lines = ["rank,metric,crc_ok,message"]
    for r, p in enumerate(res.paths[: args.top], 1):
        ok = "" if p.crc_ok is None else int(p.crc_ok)
        lines.append(f"{r},{p.metric:.6f},{ok},{''.join(map(str, p.message))}")
    _emit(_meta_lines(meta) + "\n".join(lines) + "\n", args.out)
    return 0


def parse_snrs(text: str) -> list[float]:
    """``3,3.5,4`` or ``start:stop:step`` (stop included); empty -> []."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = [float(t) for t in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise UsageError(f"SNR range must be start:stop:step with step > 0, got {text!r}")
        start, stop, step = parts
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(max(count, 0))]
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad SNR list {text!r}") from None


def cmd_simulate(args) -> int:
    code = _resolve_code(args)
    snrs = parse_snrs(args.snr)
    if args.min_errors < 1:
        raise UsageError("--min-errors must be at least 1")
    config = DecoderConfig.for_code(code, args.list_size, metric_mode=args.metric, boxplus=args.boxplus)
    if code.scheme == "rpac":
        # fail before any trial runs
        lmin = required_list_size(code.profile, code.precoder.s)
        if args.list_size < lmin:
            raise UsageError(f"list size {args.list_size} is below L_min = {lmin} for this profile")

    def progress(pt):
        if args.verbose:
            print(f"{pt.ebn0_db:g} dB: {pt.block_errors}/{pt.frames} errors in {pt.elapsed_s:.1f}s",
                  file=sys.stderr)

    points = run_bler(code, config, snrs, min_errors=args.min_errors, max_frames=args.max_frames,
                      seed=args.seed, workers=args.workers, progress=progress)
    if args.bound and points:
        try:
            rep = enumerate_spectrum(code, args.method, None, budget=args.budget, max_bits=args.max_bits)
        except BudgetExceeded as e:
            raise UsageError(f"union bound: {e}") from None
        overlay_union_bound(points, rep, code)
    meta = _code_meta(code)
    meta.update(list_size=args.list_size, metric=args.metric, boxplus=args.boxplus,
                min_errors=args.min_errors, max_frames=args.max_frames, seed=args.seed,
                snrs=" ".join(f"{s:g}" for s in snrs))
    _emit(format_csv(points, meta), args.out)
    if args.figure:
        from .plotting import plot_bler

        label = args.label or f"{code.scheme} L={args.list_size}"
        plot_bler({label: points}, args.figure, title=f"({code.N},{code.k}) {code.scheme}")
    return 0


def cmd_plot(args) -> int:
    from .plotting import plot_bler

    curves = {}
    labels = args.labels.split(",") if args.labels else []
    for idx, path in enumerate(args.csv):
        try:
            points, meta = parse_csv(Path(path).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"{path}: {e}") from None
        label = labels[idx] if idx < len(labels) else meta.get("curve") or (
            f"{meta.get('scheme', Path(path).stem)} L={meta.get('list_size', '?')}")
        curves[label] = points
    plot_bler(curves, args.figure, title=args.title, show_bound=not args.no_bound)
    return 0


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rpac", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.commands = {}

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        parser.commands[name] = p
        p.add_argument("--config", help="YAML/JSON file with default values for this command's flags")
        p.set_defaults(func=func)
        return p

    p = add("construct", cmd_construct, "build an information set by GA density evolution")
    p.add_argument("--n", type=int, help="block length N (power of two)")
    p.add_argument("--k", type=int, help="number of information bits")
    p.add_argument("--design-snr", type=float, default=DEFAULT_DESIGN_SNR,
                   help="design Eb/N0 in dB (default %(default)s)")
    p.add_argument("--profile-out", help="write the profile here instead of stdout")

    p = add("spectrum", cmd_spectrum, "minimum weight and its multiplicity by enumeration")
    _add_code_args(p)
    p.add_argument("--method", choices=("auto", "support", "message"), default="auto",
                   help="support: all low-weight words; message: all 2^K messages (default %(default)s)")
    p.add_argument("--wcap", type=int, help="largest weight tried by support enumeration (default: wmin)")
    p.add_argument("--budget", type=float, default=DEFAULT_PATTERN_BUDGET,
                   help="refuse support enumeration above this many patterns (default %(default).0e)")
    p.add_argument("--max-bits", type=int, default=DEFAULT_MAX_MESSAGE_BITS,
                   help="refuse message enumeration above 2^this messages (default %(default)s)")
    p.add_argument("--per-coset", action="store_true", help="also list counts per coset leader")
    p.add_argument("--out", help="output file (default stdout)")

    p = add("cosets", cmd_cosets, "coset table: K_i sizes, classes, minimum-weight counts")
    _add_profile_args(p)
    p.add_argument("--out", help="output file (default stdout)")

    p = add("decode", cmd_decode, "decode one block and print the ranked list")
    _add_code_args(p)
    _add_decoder_args(p)
    p.add_argument("--input", help="file with a codeword: N binary digits or a 0x-prefixed hex word (MSB = x_0)")
    p.add_argument("--llr", help="file with N whitespace-separated channel LLRs")
    p.add_argument("--snr", type=float, default=4.0, help="Eb/N0 in dB used to scale LLRs (default %(default)s)")
    p.add_argument("--noise", action="store_true", help="pass the codeword through AWGN before decoding")
    p.add_argument("--seed", type=int, default=0, help="noise seed (default %(default)s)")
    p.add_argument("--trial", type=int, default=0, help="noise trial index (default %(default)s)")
    p.add_argument("--top", type=int, default=8, help="number of ranked paths printed (default %(default)s)")
    p.add_argument("--out", help="output file (default stdout)")

    p = add("simulate", cmd_simulate, "Monte Carlo BLER over BI-AWGN")
    _add_code_args(p)
    _add_decoder_args(p)
    p.add_argument("--snr", default="", help="Eb/N0 points: '3,3.5,4' or 'start:stop:step'")
    p.add_argument("--min-errors", type=int, default=DEFAULT_MIN_ERRORS,
                   help="stop a point after this many block errors (default %(default)s)")
    p.add_argument("--max-frames", type=int, default=DEFAULT_MAX_FRAMES,
                   help="stop a point after this many frames (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="simulation seed (default %(default)s)")
    p.add_argument("--workers", type=int, default=1, help="worker processes; results do not depend on it")
    p.add_argument("--bound", action="store_true", help="add the minimum-weight union bound column")
    p.add_argument("--method", choices=("auto", "support", "message"), default="auto",
                   help="spectrum method for --bound (default %(default)s)")
    p.add_argument("--budget", type=float, default=DEFAULT_PATTERN_BUDGET,
                   help="support-enumeration budget for --bound (default %(default).0e)")
    p.add_argument("--max-bits", type=int, default=DEFAULT_MAX_MESSAGE_BITS,
                   help="message-enumeration limit for --bound (default %(default)s)")
    p.add_argument("--out", help="CSV output file (default stdout)")
    p.add_argument("--figure", help="also render the curve to this image file")
    p.add_argument("--label", help="legend label for --figure")
    p.add_argument("--verbose", action="store_true", help="report progress on stderr")

    p = add("plot", cmd_plot, "render one or more BLER CSV files to an image")
    p.add_argument("csv", nargs="+", help="CSV files written by 'simulate'")
    p.add_argument("--figure", required=True, help="output image file (format from extension)")
    p.add_argument("--labels", help="comma-separated legend labels, in file order")
    p.add_argument("--title", help="figure title")
    p.add_argument("--no-bound", action="store_true", help="do not draw union-bound columns")
    return parser


def _apply_config(parser, argv):
    """Reparse with defaults from the ``--config`` file, if one was given."""
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    try:
        data = yaml.safe_load(Path(args.config).read_text()) or {}
    except (OSError, yaml.YAMLError) as e:
        parser.error(f"cannot read config {args.config}: {e}")
    if not isinstance(data, dict):
        parser.error("config file must hold a mapping of flag names to values")
    subparser = parser.commands[args.command]
    known = {a.dest for a in subparser._actions}
    defaults = {}
    for key, value in data.items():
        dest = str(key).replace("-", "_")
        if dest not in known or dest in ("help", "config", "func"):
            parser.error(f"config key {key!r} is not a flag of '{args.command}'")
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        return args.func(args)
    except (ValueError, OSError, BudgetExceeded) as e:
        # ValueError covers the profile, precoder, scheme and decoder errors
        print(f"rpac {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
