# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from pydantic import BaseModel, ConfigDict, Field, field_validator


class PrecisionConfig(BaseModel):
    """Numerical tolerances and truncation policy shared by every evaluation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    target_abs_tol: float = Field(default=1e-12, description="Target absolute tolerance of truncated series")
    euler_maclaurin_terms: int = Field(default=12, description="Bernoulli correction terms in Euler-Maclaurin sums")
    series_guard_factor: float = Field(default=4.0, description="Safety factor applied to truncation bounds")
    max_terms: int = Field(default=200_000, description="Hard cap on explicitly enumerated terms")
    rational_max_denominator: int = Field(
        default=10_000, description="Largest denominator tried when recognising rational eigen-angles"
    )

    @field_validator("target_abs_tol")
    @classmethod
    def _check_tol(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("target_abs_tol must be positive")
        return v

    @field_validator("euler_maclaurin_terms")
    @classmethod
    def _check_em_terms(cls, v: int) -> int:
        if v < 2:
            raise ValueError("euler_maclaurin_terms must be at least 2")
        if v > 30:
            raise ValueError("euler_maclaurin_terms above 30 loses accuracy in double precision")
        return v

    @field_validator("series_guard_factor")
    @classmethod
    def _check_guard(cls, v: float) -> float:
        if v < 1:
            raise ValueError("series_guard_factor must be at least 1")
        return v

    @field_validator("max_terms", "rational_max_denominator")
    @classmethod
    def _check_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be a positive integer")
        return v


DEFAULT_PRECISION = PrecisionConfig()
