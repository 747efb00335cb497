# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from enum import Enum
from typing import Any, Dict, Optional


class ErrorCode(Enum):
    """Machine-readable error codes with their message templates."""

    # Configuration and manifest
    CONFIG_ERROR = ("CONFIG_ERROR", "Invalid configuration: {error_message}")
    MANIFEST_PARSE = ("MANIFEST_PARSE", "Cannot parse manifest {path}: {error_message}")
    UNKNOWN_METHOD = ("UNKNOWN_METHOD", "Unknown method '{method}', expected one of {choices}")

    # Data validation
    REP_MISSING = ("REP_MISSING", "Representation data missing: {error_message}")
    REP_COMPAT = (
        "REP_COMPAT",
        "Exceptional block x={x} of orbit {orbit} is incompatible with parent x={parent_x} (alpha={alpha})",
    )
    MULT_SUM = (
        "MULT_SUM",
        "Refined multiplicities of orbit {orbit} over parent x={parent_x} sum to {got}, expected {expected}",
    )
    ANGLE_RANGE = ("ANGLE_RANGE", "Eigen-angle {x} at {location} is outside (0, 1]")
    NOT_COPRIME = ("NOT_COPRIME", "Rotation number {beta} of orbit {orbit} is not coprime to alpha={alpha}")
    ROTATION_RANGE = ("ROTATION_RANGE", "Rotation number {beta} of orbit {orbit} is outside [1, {bound}]")
    ALPHA_RANGE = ("ALPHA_RANGE", "Order alpha={alpha} of orbit {orbit} must be at least 2")
    ROTATION_COUNT = ("ROTATION_COUNT", "Orbit {orbit} has {got} rotation numbers, expected 2k-1={expected}")
    KAPPA_KEY = ("KAPPA_KEY", "Pairing key m={m} must be odd and at most 2k-1={bound}")
    FIBER_LENGTH = ("FIBER_LENGTH", "Fiber length must be positive, got {value}")
    ETA_DATA_MISSING = ("ETA_DATA_MISSING", "Eta invariants need {field}")
    ORBIT_INDEX = ("ORBIT_INDEX", "Unknown exceptional orbit index {index}")
    SPECTRUM_MISMATCH = ("SPECTRUM_MISMATCH", "lambda={value} is not in the spectrum of iT")

    # Numerics
    NUMERIC_DOMAIN = ("NUMERIC_DOMAIN", "{function}: argument outside domain ({error_message})")
    NUMERIC_POLE = ("NUMERIC_POLE", "{function}: evaluation at pole s={s}")
    NUMERIC_CONVERGENCE = ("NUMERIC_CONVERGENCE", "{function}: truncation bound {bound} exceeds tolerance {tol}")
    INDEX_INTEGRALITY = ("INDEX_INTEGRALITY", "Index at lambda={value} is {index}, not within {tol} of an integer")
    IMAGINARY_RESIDUE = ("IMAGINARY_RESIDUE", "{quantity} has imaginary part {imag} above tolerance {tol}")

    @property
    def code(self) -> str:
        return self.value[0]

    @property
    def template(self) -> str:
        return self.value[1]


class SpectraException(Exception):
    """Base exception carrying an ErrorCode and the arguments of its template."""

    def __init__(
        self,
        code: ErrorCode,
        message: Optional[str] = None,
        message_args: Optional[Dict[str, Any]] = None,
    ):
        self.code = code
        self.message_args = message_args or {}
        if message is None:
            try:
                message = code.template.format(**self.message_args)
            except (KeyError, IndexError):
                message = code.template
        self.message = message
        super().__init__(f"[{code.code}] {message}")


class ValidationFailure(SpectraException):
    """Input data violates a standing hypothesis."""


class NumericError(SpectraException):
    """Base class of numerical failures."""


class DomainError(NumericError):
    """Argument outside the domain of a function."""

    def __init__(self, function: str, error_message: str):
        super().__init__(
            ErrorCode.NUMERIC_DOMAIN, message_args={"function": function, "error_message": error_message}
        )


class PoleError(NumericError):
    """Evaluation exactly at a pole."""

    def __init__(self, function: str, s: Any):
        self.s = s
        super().__init__(ErrorCode.NUMERIC_POLE, message_args={"function": function, "s": s})


class ConvergenceError(NumericError):
    """A certified truncation bound cannot be met."""

    def __init__(self, function: str, bound: float, tol: float):
        super().__init__(
            ErrorCode.NUMERIC_CONVERGENCE, message_args={"function": function, "bound": f"{bound:.3e}", "tol": tol}
        )


class DataInconsistencyError(NumericError):
    """Computed quantity contradicts a structural property (integrality, realness)."""
