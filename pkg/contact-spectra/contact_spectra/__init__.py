# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from .config import ComplexValue, GridSection, Manifest, load_manifest, parse_manifest
from .eta import EtaCalculator, EtaResidue, EtaResult
from .model import (
    ExceptionalBlock,
    ExceptionalOrbit,
    GenericBlock,
    OrbitClass,
    RepresentationData,
    SeifertData,
    ValidationReport,
    enumerate_orbits,
    hopf_example,
    validate,
)
from .torsion import TorsionCalculator, TorsionResult
from .verify import CheckResult, VerificationReport, random_dataset, run_suite, verify_manifest

__version__ = "0.1.0"
__all__ = [
    "SeifertData",
    "ExceptionalOrbit",
    "RepresentationData",
    "GenericBlock",
    "ExceptionalBlock",
    "OrbitClass",
    "ValidationReport",
    "validate",
    "enumerate_orbits",
    "hopf_example",
    "Manifest",
    "GridSection",
    "ComplexValue",
    "load_manifest",
    "parse_manifest",
    "TorsionCalculator",
    "TorsionResult",
    "EtaCalculator",
    "EtaResult",
    "EtaResidue",
    "CheckResult",
    "VerificationReport",
    "random_dataset",
    "run_suite",
    "verify_manifest",
]
