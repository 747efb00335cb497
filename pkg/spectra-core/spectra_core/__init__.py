# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from .config import DEFAULT_PRECISION, PrecisionConfig
from .nilpotent import NilpotentSeries
from .utils.exceptions import (
    ConvergenceError,
    DataInconsistencyError,
    DomainError,
    ErrorCode,
    NumericError,
    PoleError,
    SpectraException,
    ValidationFailure,
)

__version__ = "0.1.0"
__all__ = [
    "DEFAULT_PRECISION",
    "PrecisionConfig",
    "NilpotentSeries",
    "ErrorCode",
    "SpectraException",
    "ValidationFailure",
    "NumericError",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "DataInconsistencyError",
]
