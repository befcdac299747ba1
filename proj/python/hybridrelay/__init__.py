# Copyright 2026 The hybridrelay Authors
# SPDX-License-Identifier: Apache-2.0
"""Coverage of hybrid RF/THz relay selection in decode-and-forward networks.

Parameters are passed as dictionaries keyed by the configuration paths used in
parameter files, for example ``{"geometry.r_sd_m": 80, "rate.target_bps": 5e8}``.
Missing keys take their reference values (see ``default_parameters()``).
"""

from ._core import (
    ConfigError,
    DomainError,
    IoError,
    NumericalError,
    __version__,
    analyze,
    default_parameters,
    gamma_upper_regularized,
    iso_coverage,
    lambert_w0,
    rate_to_threshold,
    run_sweep,
    simulate,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "IoError",
    "NumericalError",
    "__version__",
    "analyze",
    "default_parameters",
    "gamma_upper_regularized",
    "iso_coverage",
    "lambert_w0",
    "rate_to_threshold",
    "run_sweep",
    "simulate",
]
