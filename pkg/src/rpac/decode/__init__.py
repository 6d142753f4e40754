"""Successive-cancellation family decoders."""

from ..crc import crc_attach, crc_check
from .listdec import (
    DecoderConfig,
    DecoderConfigError,
    DecoderPath,
    ListResult,
    ListSizeError,
    decode,
    lascl_decode,
    lookahead_nu,
    required_list_size,
    scl_decode,
)
from .sc import boxplus, branch_metric, forced_path_metric, sc_decode

__all__ = [
    "DecoderConfig",
    "DecoderConfigError",
    "DecoderPath",
    "ListResult",
    "ListSizeError",
    "boxplus",
    "branch_metric",
    "crc_attach",
    "crc_check",
    "decode",
    "forced_path_metric",
    "lascl_decode",
    "lookahead_nu",
    "required_list_size",
    "sc_decode",
    "scl_decode",
]
