# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import hashlib
import json
import os
import tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from spectra_core import ErrorCode, PrecisionConfig, SpectraException, ValidationFailure
from spectra_core.utils.loggings import get_logger

from .model import RepresentationData, SeifertData

logger = get_logger(__name__)

TOL_ENV_VAR = "CONTACT_SPECTRA_TOL"


class ComplexValue(BaseModel):
    """Complex number in I/O form."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    re: float = Field(..., description="Real part")
    im: float = Field(default=0.0, description="Imaginary part")

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class PrecisionSection(BaseModel):
    """Optional ``precision`` section of a manifest."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    target_abs_tol: Optional[float] = Field(default=None, description="Absolute truncation tolerance")
    euler_maclaurin_terms: Optional[int] = Field(default=None, description="Euler-Maclaurin correction terms")


class GridSection(BaseModel):
    """Optional ``grid`` section: heat-trace t grid and zeta/eta sample points."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    t_min: float = Field(default=0.05, description="Smallest t")
    t_max: float = Field(default=20.0, description="Largest t")
    points: int = Field(default=20, description="Number of grid points")
    log_spaced: bool = Field(default=True, description="Logarithmic instead of linear spacing")
    s: List[ComplexValue] = Field(default_factory=list, description="Sample points for zeta/eta evaluation")

    @field_validator("t_min", "t_max")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("points")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"points must be at least 1, got {value}")
        return value

    def t_values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.t_min])
        if self.log_spaced:
            return np.geomspace(self.t_min, self.t_max, self.points)
        return np.linspace(self.t_min, self.t_max, self.points)


class Manifest(BaseModel):
    """A complete input document: geometry, holonomy, and optional numerics."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    seifert: SeifertData
    representation: Optional[RepresentationData] = None
    precision: Optional[PrecisionSection] = None
    grid: Optional[GridSection] = None

    def require_representation(self) -> RepresentationData:
        if self.representation is None:
            raise ValidationFailure(ErrorCode.REP_MISSING, message_args={"error_message": "no representation section"})
        return self.representation

    def precision_config(self, environ: Optional[Dict[str, str]] = None) -> PrecisionConfig:
        """PrecisionConfig from the manifest, with CONTACT_SPECTRA_TOL taking precedence."""
        values: Dict[str, Any] = {}
        if self.precision is not None:
            values.update(self.precision.model_dump(exclude_none=True))
        environ = os.environ if environ is None else environ
        override = environ.get(TOL_ENV_VAR)
        if override:
            try:
                values["target_abs_tol"] = float(override)
            except ValueError as e:
                raise SpectraException(
                    ErrorCode.CONFIG_ERROR, message_args={"error_message": f"{TOL_ENV_VAR}={override!r}"}
                ) from e
        try:
            return PrecisionConfig(**values)
        except ValidationError as e:
            raise SpectraException(ErrorCode.CONFIG_ERROR, message_args={"error_message": str(e)}) from e

    def grid_or_default(self) -> GridSection:
        return self.grid if self.grid is not None else GridSection()

    def canonical_json(self) -> str:
        """Deterministic serialisation of the geometric content."""
        payload = {"seifert": self.seifert.model_dump(mode="json")}
        if self.representation is not None:
            payload["representation"] = self.representation.model_dump(mode="json")
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def fingerprint(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def parse_manifest(data: Union[Dict[str, Any], Manifest], source: str = "<memory>") -> Manifest:
    """Build a Manifest from parsed data; schema errors map to MANIFEST_PARSE."""
    if isinstance(data, Manifest):
        return data
    if not isinstance(data, dict):
        raise TypeError(f"Manifest data must be dict or Manifest, got {type(data)}")
    try:
        return Manifest(**data)
    except ValidationError as e:
        raise ValidationFailure(
            ErrorCode.MANIFEST_PARSE, message_args={"path": source, "error_message": _summarise(e)}
        ) from e


def load_manifest(path: Union[str, Path]) -> Manifest:
    """Read a ``.toml`` or ``.json`` manifest, chosen by extension."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in (".toml", ".json"):
        raise ValidationFailure(
            ErrorCode.MANIFEST_PARSE,
            message_args={"path": str(path), "error_message": f"unsupported extension '{suffix}'"},
        )
    try:
        if suffix == ".toml":
            with path.open("rb") as handle:
                data = tomllib.load(handle)
        else:
            with path.open("r", encoding="utf-8") as handle:
                data = json.load(handle)
    except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ValidationFailure(
            ErrorCode.MANIFEST_PARSE, message_args={"path": str(path), "error_message": str(e)}
        ) from e
    logger.debug(f"loaded manifest {path}")
    return parse_manifest(data, source=str(path))


def _summarise(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item.get("loc", ()))
        parts.append(f"{location}: {item.get('msg', '')}")
    return "; ".join(parts)
