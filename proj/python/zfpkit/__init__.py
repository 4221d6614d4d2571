"""Fixed-precision ZFP compression with exact round-off error bounds."""

from ._zfpkit import (
    B_beta,
    CodecParams,
    DecodeError,
    K_beta,
    K_beta_exact,
    RangeError,
    analyze_grid,
    beta_for_accuracy,
    componentwise_bound,
    compress,
    decompress,
    double_params,
    float_params,
    kbeta_surface,
    rate_lower_bound,
    read_header,
    round_trip_block,
    sweep,
    trace_block,
)

__all__ = [
    "B_beta",
    "CodecParams",
    "DecodeError",
    "K_beta",
    "K_beta_exact",
    "RangeError",
    "analyze_grid",
    "beta_for_accuracy",
    "componentwise_bound",
    "compress",
    "decompress",
    "double_params",
    "float_params",
    "kbeta_surface",
    "rate_lower_bound",
    "read_header",
    "round_trip_block",
    "sweep",
    "trace_block",
]
