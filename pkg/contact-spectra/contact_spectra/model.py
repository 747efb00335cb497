# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
Seifert geometry and holonomy data, their validation, and the enumeration of
closed Reeb orbit classes with their lengths and characters.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt
from spectra_core import (
    DEFAULT_PRECISION,
    DomainError,
    ErrorCode,
    PrecisionConfig,
    SpectraException,
    ValidationFailure,
)
from spectra_core.utils.loggings import get_logger

logger = get_logger(__name__)

# fractional-part matching of eigen-angles against the spectrum
ANGLE_TOL = 1e-9
# rho(f_j)^{alpha_j} = rho(f) consistency
COMPAT_TOL = 1e-12
RATIONAL_TOL = 1e-12
TWO_PI = 2.0 * math.pi


# ==================== Domain Types ====================


class ExceptionalOrbit(BaseModel):
    """Exceptional fiber of order alpha with the rotation numbers of its return map."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: int = Field(..., description="Order alpha_j of the exceptional fiber")
    rotation_numbers: Tuple[int, ...] = Field(
        default=(), description="beta_{j,m}: return-map angles 2 pi beta / alpha (2k-1 of them)"
    )


class SeifertData(BaseModel):
    """Combinatorial and geometric description of the Seifert fibration M -> N."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    chi_n_star: int = Field(..., description="Euler characteristic of the punctured base N*")
    fiber_length: float = Field(default=TWO_PI, description="Length of the generic fiber")
    exceptional: Tuple[ExceptionalOrbit, ...] = Field(default=(), description="Exceptional fibers")
    k: Optional[PositiveInt] = Field(default=None, description="Dimension parameter, dim M = 4k - 1")
    kappa: Dict[int, float] = Field(default_factory=dict, description="Smooth pairings kappa_m for odd m")

    @property
    def omega(self) -> float:
        """Spectral scale 2 pi / l(f): the spectrum of iT is omega (x + Z)."""
        return TWO_PI / self.fiber_length

    def exceptional_length(self, j: int) -> float:
        return self.fiber_length / self.exceptional[j].alpha


class GenericBlock(BaseModel):
    """Eigen-block of rho(f): eigenvalue e^{2 i pi x} with multiplicity."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    x: float = Field(..., description="Eigen-angle in (0, 1]")
    mult: PositiveInt = Field(..., description="Multiplicity")


class ExceptionalBlock(BaseModel):
    """Eigen-block of rho(f_j) refining the block parent_x of rho(f)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    x: float = Field(..., description="Eigen-angle x_jk in (0, 1]")
    mult: PositiveInt = Field(..., description="Multiplicity")
    parent_x: float = Field(..., description="Eigen-angle of rho(f) this block refines")


class RepresentationData(BaseModel):
    """Eigen-decomposition of the holonomies rho(f) and rho(f_j)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    generic_blocks: Tuple[GenericBlock, ...] = Field(..., description="Eigen-decomposition of rho(f)")
    exceptional_blocks: Tuple[Tuple[ExceptionalBlock, ...], ...] = Field(
        default=(), description="Per exceptional orbit, the eigen-decomposition of rho(f_j)"
    )

    @property
    def dim(self) -> int:
        return sum(block.mult for block in self.generic_blocks)

    def blocks_of(self, j: int) -> Tuple[ExceptionalBlock, ...]:
        if j < 0 or j >= len(self.exceptional_blocks):
            raise SpectraException(ErrorCode.ORBIT_INDEX, message_args={"index": j})
        return self.exceptional_blocks[j]


class OrbitClass(BaseModel):
    """Free homotopy class f^n or f_j^r of closed Reeb orbits."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["generic", "exceptional"]
    exponent: int = Field(..., description="n for f^n, r for f_j^r")
    orbit: Optional[int] = Field(default=None, description="Exceptional orbit index j")
    length: float = Field(..., description="Signed algebraic length")
    character: complex = Field(..., description="chi_rho of the class")
    e_weight: float = Field(..., description="l(f) chi(N) for generic classes, l(f_j) for exceptional ones")


class ValidationIssue(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    code: str
    message: str
    location: str = ""


class ValidationReport(BaseModel):
    """Outcome of :func:`validate`; ``passed`` iff no issue was found."""

    model_config = ConfigDict(extra="forbid")

    issues: List[ValidationIssue] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.issues

    def add(self, code: ErrorCode, location: str = "", **message_args) -> None:
        rendered = SpectraException(code, message_args=message_args).message
        self.issues.append(ValidationIssue(code=code.code, message=rendered, location=location))

    def codes(self) -> List[str]:
        return [issue.code for issue in self.issues]


# ==================== Angle Helpers ====================


def same_angle(x: float, y: float, tol: float = ANGLE_TOL) -> bool:
    """Equality of e^{2 i pi x} and e^{2 i pi y}."""
    d = x - y
    return abs(d - round(d)) <= tol


def is_unit(x: float) -> bool:
    return same_angle(x, 1.0)


def distinct_angles(rep: RepresentationData) -> List[Tuple[float, int]]:
    """Distinct eigen-angles x of rho(f) with dim V^x, blocks with the same x merged."""
    merged: List[List] = []
    for block in rep.generic_blocks:
        for entry in merged:
            if same_angle(entry[0], block.x):
                entry[1] += block.mult
                break
        else:
            merged.append([block.x, block.mult])
    return [(x, dim) for x, dim in merged]


def dim_eigenspace(rep: RepresentationData, x: float) -> int:
    """dim V^x for the generic holonomy."""
    return sum(block.mult for block in rep.generic_blocks if same_angle(block.x, x))


def unit_multiplicity(rep: RepresentationData, orbit: Optional[int] = None) -> int:
    """dim V^1_gamma for gamma = f (orbit None) or gamma = f_j."""
    blocks = rep.generic_blocks if orbit is None else rep.blocks_of(orbit)
    return sum(block.mult for block in blocks if is_unit(block.x))


def rational_angle(x: float, config: PrecisionConfig = DEFAULT_PRECISION) -> Optional[Fraction]:
    """x as p/q with q <= rational_max_denominator, or None if no such fraction is close enough."""
    fraction = Fraction(x).limit_denominator(config.rational_max_denominator)
    if abs(float(fraction) - x) > RATIONAL_TOL:
        return None
    return fraction


def character_period(
    angles: Sequence[float], base: int = 1, config: PrecisionConfig = DEFAULT_PRECISION
) -> Optional[int]:
    """Smallest common period (multiple of ``base``) of n -> e^{2 i pi n x}, or None if an angle is irrational."""
    period = int(base)
    for x in angles:
        fraction = rational_angle(x, config)
        if fraction is None:
            return None
        period = math.lcm(period, fraction.denominator)
    return period


def _phases(x: float, exponents: np.ndarray, config: PrecisionConfig) -> np.ndarray:
    """e^{2 i pi n x} over an integer array, reduced exactly modulo 1 when x is rational."""
    fraction = rational_angle(x, config)
    if fraction is not None:
        reduced = (exponents * fraction.numerator) % fraction.denominator
        return np.exp(2j * math.pi * reduced / fraction.denominator)
    return np.exp(2j * math.pi * np.mod(exponents * x, 1.0))


# ==================== Validation ====================


def validate(seifert: SeifertData, rep: RepresentationData) -> ValidationReport:
    """Check every standing hypothesis; violations are collected, not raised."""
    report = ValidationReport()

    if not seifert.fiber_length > 0:
        report.add(ErrorCode.FIBER_LENGTH, "seifert.fiber_length", value=seifert.fiber_length)

    k = seifert.k
    bound = 2 * k - 1 if k is not None else None
    for m in seifert.kappa:
        if m < 1 or m % 2 == 0 or (bound is not None and m > bound):
            report.add(ErrorCode.KAPPA_KEY, f"seifert.kappa.{m}", m=m, bound=bound if bound is not None else "inf")

    for j, orbit in enumerate(seifert.exceptional):
        where = f"seifert.exceptional[{j}]"
        if orbit.alpha < 2:
            report.add(ErrorCode.ALPHA_RANGE, where, alpha=orbit.alpha, orbit=j)
            continue
        if orbit.rotation_numbers and bound is not None and len(orbit.rotation_numbers) != bound:
            report.add(ErrorCode.ROTATION_COUNT, where, orbit=j, got=len(orbit.rotation_numbers), expected=bound)
        for beta in orbit.rotation_numbers:
            if not 1 <= beta <= orbit.alpha - 1:
                report.add(ErrorCode.ROTATION_RANGE, where, beta=beta, orbit=j, bound=orbit.alpha - 1)
            elif math.gcd(beta, orbit.alpha) != 1:
                report.add(ErrorCode.NOT_COPRIME, where, beta=beta, orbit=j, alpha=orbit.alpha)

    if not rep.generic_blocks:
        report.add(ErrorCode.REP_MISSING, "representation.generic_blocks", error_message="no generic blocks")
    for i, block in enumerate(rep.generic_blocks):
        if not 0.0 < block.x <= 1.0:
            report.add(ErrorCode.ANGLE_RANGE, f"representation.generic_blocks[{i}]", x=block.x, location="rho(f)")

    for j in range(len(seifert.exceptional), len(rep.exceptional_blocks)):
        report.add(ErrorCode.ORBIT_INDEX, f"representation.exceptional_blocks[{j}]", index=j)

    parents = distinct_angles(rep)
    for j, orbit in enumerate(seifert.exceptional):
        if orbit.alpha < 2:
            continue
        blocks = rep.exceptional_blocks[j] if j < len(rep.exceptional_blocks) else ()
        refined: Dict[int, int] = {}
        for i, block in enumerate(blocks):
            where = f"representation.exceptional_blocks[{j}][{i}]"
            if not 0.0 < block.x <= 1.0:
                report.add(ErrorCode.ANGLE_RANGE, where, x=block.x, location=f"rho(f_{j})")
                continue
            parent_index = next((p for p, (x, _) in enumerate(parents) if same_angle(x, block.parent_x)), None)
            if parent_index is None or not same_angle(orbit.alpha * block.x, block.parent_x, COMPAT_TOL):
                report.add(ErrorCode.REP_COMPAT, where, x=block.x, orbit=j, parent_x=block.parent_x, alpha=orbit.alpha)
                continue
            refined[parent_index] = refined.get(parent_index, 0) + block.mult
        for p, (x, dim) in enumerate(parents):
            if refined.get(p, 0) != dim:
                report.add(
                    ErrorCode.MULT_SUM,
                    f"representation.exceptional_blocks[{j}]",
                    orbit=j,
                    parent_x=x,
                    got=refined.get(p, 0),
                    expected=dim,
                )

    if report.issues:
        logger.debug(f"validation found {len(report.issues)} issue(s): {report.codes()}")
    return report


def ensure_valid(seifert: SeifertData, rep: RepresentationData) -> None:
    """Raise :class:`ValidationFailure` carrying the first issue's code."""
    report = validate(seifert, rep)
    if report.passed:
        return
    code = ErrorCode[report.issues[0].code]
    details = "; ".join(f"{issue.code}: {issue.message}" for issue in report.issues)
    raise ValidationFailure(code, message=details)


def require_eta_data(seifert: SeifertData) -> int:
    """Return k after checking that every eta-side input is present."""
    if seifert.k is None:
        raise ValidationFailure(ErrorCode.ETA_DATA_MISSING, message_args={"field": "seifert.k"})
    for m in range(1, 2 * seifert.k, 2):
        if m not in seifert.kappa:
            raise ValidationFailure(ErrorCode.ETA_DATA_MISSING, message_args={"field": f"seifert.kappa.{m}"})
    for j, orbit in enumerate(seifert.exceptional):
        if len(orbit.rotation_numbers) != 2 * seifert.k - 1:
            raise ValidationFailure(
                ErrorCode.ETA_DATA_MISSING, message_args={"field": f"seifert.exceptional[{j}].rotation_numbers"}
            )
    return seifert.k


# ==================== Characters ====================


def _select_blocks(rep: RepresentationData, orbit: Optional[int], parent_x: Optional[float]):
    if orbit is None:
        return [b for b in rep.generic_blocks if parent_x is None or same_angle(b.x, parent_x)]
    return [b for b in rep.blocks_of(orbit) if parent_x is None or same_angle(b.parent_x, parent_x)]


def character_sequence(
    rep: RepresentationData,
    exponents: Sequence[int],
    orbit: Optional[int] = None,
    parent_x: Optional[float] = None,
    config: PrecisionConfig = DEFAULT_PRECISION,
) -> np.ndarray:
    """Vectorised :func:`character` over an array of exponents."""
    exponents = np.asarray(exponents, dtype=np.int64)
    total = np.zeros(exponents.shape, dtype=complex)
    for block in _select_blocks(rep, orbit, parent_x):
        total += block.mult * _phases(block.x, exponents, config)
    return total


def character(
    rep: RepresentationData,
    exponent: int,
    orbit: Optional[int] = None,
    parent_x: Optional[float] = None,
) -> complex:
    """
    chi_rho(f^n) when ``orbit`` is None, chi_rho(f_j^r) otherwise.

    With ``parent_x`` the trace is restricted to V^x, i.e. to the exceptional
    blocks refining the generic eigenvalue e^{2 i pi x}.
    """
    return complex(character_sequence(rep, [exponent], orbit, parent_x)[0])


def rational_euler(seifert: SeifertData) -> Fraction:
    """chi(N) = chi(N*) + sum_j 1/alpha_j."""
    return reduce(lambda acc, orbit: acc + Fraction(1, orbit.alpha), seifert.exceptional, Fraction(seifert.chi_n_star))


def chi_prime(seifert: SeifertData, rep: RepresentationData) -> int:
    """chi'(M, rho) = chi(N*) dim V^1_f + sum_j dim V^1_{f_j}."""
    total = seifert.chi_n_star * unit_multiplicity(rep)
    for j in range(len(seifert.exceptional)):
        total += unit_multiplicity(rep, j)
    return total


# ==================== Spectrum and Orbits ====================


def spectrum(rep: RepresentationData, bound: float) -> List[Tuple[float, float]]:
    """
    Normalised eigenvalues lambda in x + Z with |lambda| <= bound, as (lambda, parent x) pairs.

    The physical eigenvalue of iT is omega * lambda.
    """
    values: List[Tuple[float, float]] = []
    for x, _ in distinct_angles(rep):
        for n in range(int(math.floor(-bound - x)), int(math.ceil(bound - x)) + 1):
            lam = x + n
            if abs(lam) <= bound:
                values.append((lam, x))
    values.sort()
    return values


def parent_angle(rep: RepresentationData, lam: float) -> float:
    """The generic eigen-angle x with lambda in x + Z."""
    for x, _ in distinct_angles(rep):
        if same_angle(lam, x):
            return x
    raise SpectraException(ErrorCode.SPECTRUM_MISMATCH, message_args={"value": lam})


def enumerate_orbits(seifert: SeifertData, rep: RepresentationData, cutoff_length: float) -> List[OrbitClass]:
    """
    All classes with 0 < |length| <= cutoff_length, both orientations.

    Exceptional powers divisible by alpha_j are homotopic to generic powers and
    are skipped.
    """
    if not cutoff_length > 0:
        raise DomainError("enumerate_orbits", f"cutoff {cutoff_length} must be positive")
    slack = cutoff_length * (1 + 1e-12)
    ell = seifert.fiber_length
    e_generic = ell * float(rational_euler(seifert))
    classes: List[OrbitClass] = []

    top = int(slack // ell)
    exponents = [n for m in range(1, top + 1) for n in (m, -m)]
    for n, chi in zip(exponents, character_sequence(rep, exponents)):
        classes.append(
            OrbitClass(kind="generic", exponent=n, length=n * ell, character=complex(chi), e_weight=e_generic)
        )

    for j, orbit in enumerate(seifert.exceptional):
        ell_j = seifert.exceptional_length(j)
        top = int(slack // ell_j)
        exponents = [r for m in range(1, top + 1) if m % orbit.alpha for r in (m, -m)]
        for r, chi in zip(exponents, character_sequence(rep, exponents, orbit=j)):
            classes.append(
                OrbitClass(
                    kind="exceptional", exponent=r, orbit=j, length=r * ell_j, character=complex(chi), e_weight=ell_j
                )
            )
    return classes


# ==================== Worked Examples ====================


def trivial_representation(seifert: SeifertData, rank: int = 1) -> RepresentationData:
    """rho = id on C^rank, refined trivially over every exceptional fiber."""
    return RepresentationData(
        generic_blocks=(GenericBlock(x=1.0, mult=rank),),
        exceptional_blocks=tuple(
            (ExceptionalBlock(x=1.0, mult=rank, parent_x=1.0),) for _ in seifert.exceptional
        ),
    )


def hopf_example(kappa_1: float = 1.0, fiber_length: float = TWO_PI) -> Tuple[SeifertData, RepresentationData]:
    """S^3 -> S^2 with the trivial rank-1 representation, k = 1."""
    seifert = SeifertData(chi_n_star=2, fiber_length=fiber_length, k=1, kappa={1: kappa_1})
    return seifert, trivial_representation(seifert)


def half_turn_example() -> Tuple[SeifertData, RepresentationData]:
    """Hopf base with the acyclic rank-1 holonomy rho(f) = -1."""
    seifert = SeifertData(chi_n_star=2, k=1, kappa={1: 1.0})
    return seifert, RepresentationData(generic_blocks=(GenericBlock(x=0.5, mult=1),))


def exceptional_example() -> Tuple[SeifertData, RepresentationData]:
    """One exceptional fiber of order 3 with rotation number 1, k = 1, trivial holonomy."""
    seifert = SeifertData(
        chi_n_star=1,
        k=1,
        kappa={1: 1.0 / 3.0},
        exceptional=(ExceptionalOrbit(alpha=3, rotation_numbers=(1,)),),
    )
    return seifert, trivial_representation(seifert)


def higher_dimensional_example() -> Tuple[SeifertData, RepresentationData]:
    """k = 2 with an order-2 exceptional fiber; the index is (lambda^3 - lambda) / 6."""
    seifert = SeifertData(
        chi_n_star=1,
        k=2,
        kappa={1: -1.0 / 6.0, 3: 1.0},
        exceptional=(ExceptionalOrbit(alpha=2, rotation_numbers=(1, 1, 1)),),
    )
    return seifert, trivial_representation(seifert)
