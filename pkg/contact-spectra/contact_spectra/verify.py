# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
Conformance suite: every trace formula, zeta identity and closed form is
evaluated against its counterparts on one dataset, and the deviations are
collected into a report. Failures are recorded, never raised.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Literal, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field
from spectra_core import PrecisionConfig
from spectra_core.specfun import gamma_complex
from spectra_core.utils.loggings import get_logger

from .config import GridSection, Manifest, parse_manifest
from .eta import EtaCalculator
from .model import (
    TWO_PI,
    ExceptionalBlock,
    ExceptionalOrbit,
    GenericBlock,
    RepresentationData,
    SeifertData,
    spectrum,
)
from .torsion import TorsionCalculator

logger = get_logger(__name__)

GRID_TOL = 1e-9
ZETA_VALUE_TOL = 1e-9
RESIDUE_TOL = 1e-6
RESIDUE_STEP = 1e-5
IDENTITY_REL_TOL = 1e-8
CLOSED_FORM_REL_TOL = 1e-8
FINITE_DIFFERENCE_TOL = 1e-6
HOMOGENEITY_TOL = 1e-12
HOMOGENEITY_FACTORS = (0.5, 3.0)
ETA_TOL = 1e-8
REAL_TOL = 1e-10
INDEX_TOL = 1e-6
INDEX_BOUND = 12.0
S_SAMPLES = 10
S_SAMPLE_SEED = 38
MAX_CHECK_WORKERS = 8

# generic eigen-angle denominators of random datasets
RANDOM_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 24)
RANDOM_FIBER_LENGTHS = (TWO_PI, 1.0, 3.0)

Severity = Literal["required", "diagnostic"]


class CheckResult(BaseModel):
    """Outcome of one identity check."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    status: Literal["pass", "fail"]
    max_deviation: Optional[float] = Field(default=None, description="Largest deviation seen, None if the check raised")
    tolerance: float
    grid: str = Field(default="", description="Points the check was evaluated on")
    reference: str = Field(..., description="The identity being checked")
    severity: Severity = "required"
    message: Optional[str] = None


class VerificationReport(BaseModel):
    """All check results for one dataset."""

    model_config = ConfigDict(extra="forbid")

    checks: List[CheckResult] = Field(default_factory=list)
    fingerprint: Optional[str] = Field(default=None, description="sha256 of the canonical manifest")
    seed: Optional[int] = Field(default=None, description="Seed of a generated dataset")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.status == "pass" for check in self.checks if check.severity == "required")

    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status == "fail"]


# ==================== Random Datasets ====================


def _coprime_residues(alpha: int) -> List[int]:
    return [beta for beta in range(1, alpha) if math.gcd(beta, alpha) == 1]


def random_dataset(seed: int, k: Optional[int] = None) -> Manifest:
    """
    Structured random valid dataset: chi(N*) in [-3, 3], up to three exceptional
    fibers with alpha <= 8, rational eigen-angles and refinements satisfying
    rho(f_j)^{alpha_j} = rho(f) by construction.
    """
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 3)) if k is None else int(k)
    fiber_length = float(rng.choice(RANDOM_FIBER_LENGTHS))
    chi_n_star = int(rng.integers(-3, 4))

    orbits = []
    for _ in range(int(rng.integers(0, 4))):
        alpha = int(rng.integers(2, 9))
        residues = _coprime_residues(alpha)
        rotation = tuple(int(rng.choice(residues)) for _ in range(2 * k - 1))
        orbits.append(ExceptionalOrbit(alpha=alpha, rotation_numbers=rotation))

    generic = []
    for _ in range(int(rng.integers(1, 3))):
        denominator = int(rng.choice(RANDOM_DENOMINATORS))
        angle = Fraction(int(rng.integers(1, denominator + 1)), denominator)
        generic.append((angle, int(rng.integers(1, 3))))

    exceptional_blocks = []
    for orbit in orbits:
        blocks = []
        for angle, mult in generic:
            # split the multiplicity over the alpha-th roots of e^{2 i pi x}
            for _ in range(mult):
                q = int(rng.integers(0, orbit.alpha))
                blocks.append(
                    ExceptionalBlock(x=float((angle + q) / orbit.alpha), mult=1, parent_x=float(angle))
                )
        exceptional_blocks.append(tuple(blocks))

    kappa = {m: float(Fraction(int(rng.integers(-6, 7)), 6)) for m in range(1, 2 * k, 2)}
    seifert = SeifertData(
        chi_n_star=chi_n_star, fiber_length=fiber_length, exceptional=tuple(orbits), k=k, kappa=kappa
    )
    rep = RepresentationData(
        generic_blocks=tuple(GenericBlock(x=float(angle), mult=mult) for angle, mult in generic),
        exceptional_blocks=tuple(exceptional_blocks),
    )
    return parse_manifest({"seifert": seifert, "representation": rep})


def sample_s_values(count: int = S_SAMPLES, seed: int = S_SAMPLE_SEED) -> List[complex]:
    """Points in the strip -1.4 <= Re s <= -0.1 kept 0.05 away from -1/2 and -1."""
    rng = np.random.default_rng(seed)
    values: List[complex] = []
    while len(values) < count:
        re = float(rng.uniform(-1.4, -0.1))
        im = float(rng.uniform(-1.0, 1.0))
        if min(abs(re + 0.5), abs(re + 1.0)) < 0.05:
            continue
        values.append(complex(re, im))
    return values


# ==================== Checks ====================

CheckOutcome = Tuple[float, str]


class _Check(NamedTuple):
    name: str
    reference: str
    tolerance: float
    evaluate: Callable[[], CheckOutcome]
    severity: Severity = "required"


def _max_abs(values: Sequence[complex]) -> float:
    return float(np.max(np.abs(np.asarray(values)))) if len(values) else 0.0


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1.0)


def _residue_estimate(function: Callable[[complex], complex], pole: float, h: float) -> complex:
    """
    Residue at a simple pole from the symmetric products (s - pole) f(s) at s = pole +- h.
    Their mean is off by O(h^2); one Richardson step with h/2 removes that term.
    """

    def symmetric(step: float) -> complex:
        return 0.5 * step * (function(pole + step) - function(pole - step))

    return (4.0 * symmetric(0.5 * h) - symmetric(h)) / 3.0


def _describe_grid(t_values: Sequence[float]) -> str:
    return f"{len(t_values)} points in t=[{min(t_values):.4g}, {max(t_values):.4g}]"


def _describe_s(s_values: Sequence[complex]) -> str:
    real_parts = [s.real for s in s_values]
    return f"{len(s_values)} points with Re s in [{min(real_parts):.3g}, {max(real_parts):.3g}]"


def _run_check(check: _Check) -> CheckResult:
    try:
        deviation, grid = check.evaluate()
    except Exception as e:
        logger.warning(f"check {check.name} raised: {e}")
        return CheckResult(
            name=check.name,
            status="fail",
            tolerance=check.tolerance,
            reference=check.reference,
            severity=check.severity,
            message=f"{type(e).__name__}: {e}",
        )
    status = "pass" if deviation <= check.tolerance else "fail"
    return CheckResult(
        name=check.name,
        status=status,
        max_deviation=deviation,
        tolerance=check.tolerance,
        grid=grid,
        reference=check.reference,
        severity=check.severity,
    )


def _torsion_checks(torsion: TorsionCalculator, t_values: List[float], s_values: List[complex]) -> List[_Check]:
    grid = _describe_grid(t_values)
    s_grid = _describe_s(s_values)

    def trace_pair(method: str) -> CheckOutcome:
        geo = torsion.theta_grid(t_values, "geo")
        other = torsion.theta_grid(t_values, method)
        return _max_abs(np.subtract(geo, other)), grid

    def value_at_zero() -> CheckOutcome:
        return abs(torsion.zeta_Z(0.0) + torsion.chi_prime), "s=0"

    def residue_at_half() -> CheckOutcome:
        h = RESIDUE_STEP
        approach = _residue_estimate(torsion.zeta_Z, 0.5, h)
        return abs(approach - torsion.zeta_Z_residue()), f"s=1/2+-{h:g}"

    def gamma_identity() -> CheckOutcome:
        deviations = []
        for s in s_values:
            lhs = gamma_complex(s) * torsion.zeta_Z(s)
            rhs = (
                np.exp(-2.0 * s * math.log(2.0))
                * gamma_complex(0.5 - s)
                * torsion.zeta_Zdyn(s).value
                / math.sqrt(math.pi)
            )
            deviations.append(_relative(lhs, rhs))
        return max(deviations), s_grid

    def dynamical_identity() -> CheckOutcome:
        deviations = []
        for s in s_values:
            rhs = 2.0 * gamma_complex(2.0 * s) * np.cos(math.pi * s) * torsion.zeta_Z(s)
            deviations.append(_relative(torsion.zeta_Zdyn(s).value, rhs))
        return max(deviations), s_grid

    def closed_vs_zeta() -> CheckOutcome:
        closed = torsion.torsion_closed_form().value
        return abs(torsion.torsion_from_zeta().value - closed) / closed, "s=0"

    def zeta_derivative_fd() -> CheckOutcome:
        analytic = torsion.zeta_Z_derivative_at_zero()
        return _relative(torsion.zeta_Z_derivative_fd(), analytic), "s=0+-1e-4"

    def fuller() -> CheckOutcome:
        log_torsion = math.log(torsion.torsion_closed_form().value)
        return abs(-0.5 * torsion.fuller_measure() - log_torsion), "s=0"

    def fuller_orbit_sum() -> CheckOutcome:
        return abs(torsion.zeta_Zdyn(0.0).value - torsion.fuller_orbit_limit()), "s=0"

    def homogeneity() -> CheckOutcome:
        deviations = []
        sample = t_values[:: max(1, len(t_values) // 5)]
        for factor in HOMOGENEITY_FACTORS:
            scaled = torsion.rescaled(factor)
            for method in ("geo", "dyn", "top"):
                for t in sample:
                    deviations.append(abs(scaled.theta(factor**2 * t, method) - torsion.theta(t, method)))
        return max(deviations), f"c in {HOMOGENEITY_FACTORS}, {len(sample)} t values"

    checks = [
        _Check("torsion_trace_geo_dyn", "theta_geo(t) = theta_dyn(t)", GRID_TOL, lambda: trace_pair("dyn")),
        _Check("torsion_trace_geo_top", "theta_geo(t) = theta_top(t)", GRID_TOL, lambda: trace_pair("top")),
        _Check("zeta_value_at_zero", "Z(0) = -chi'(M, rho)", ZETA_VALUE_TOL, value_at_zero),
        _Check("zeta_residue_at_half", "Res_{s=1/2} Z = (l(f)/2pi) chi(N) dim V", RESIDUE_TOL, residue_at_half),
        _Check(
            "zeta_gamma_identity",
            "Gamma(s) Z(s) = 2^{-2s} Gamma(1/2 - s) Z^dyn(s) / sqrt(pi)",
            IDENTITY_REL_TOL,
            gamma_identity,
        ),
        _Check(
            "zeta_dynamical_identity", "Z^dyn(s) = 2 Gamma(2s) cos(pi s) Z(s)", IDENTITY_REL_TOL, dynamical_identity
        ),
        _Check("torsion_closed_form", "exp(-Z'(0)/2) = determinant product", CLOSED_FORM_REL_TOL, closed_vs_zeta),
        _Check(
            "zeta_derivative_finite_difference",
            "Z'(0) analytic = central difference",
            FINITE_DIFFERENCE_TOL,
            zeta_derivative_fd,
        ),
        _Check("fuller_measure", "-fuller/2 = ln T_Q", CLOSED_FORM_REL_TOL, fuller),
        _Check("heat_homogeneity", "theta under (l, t) -> (c l, c^2 t)", HOMOGENEITY_TOL, homogeneity),
    ]
    if torsion.is_acyclic():
        checks.append(
            _Check("fuller_orbit_sum", "Z^dyn(0) = Fuller orbit limit", CLOSED_FORM_REL_TOL, fuller_orbit_sum)
        )

    return checks


def _eta_checks(
    eta: EtaCalculator, t_values: List[float], s_values: List[complex], integrality: Severity
) -> List[_Check]:
    grid = _describe_grid(t_values)

    def trace_pair() -> CheckOutcome:
        top = eta.theta_S_grid(t_values, "top")
        dyn = eta.theta_S_grid(t_values, "dyn")
        return _max_abs(np.subtract(top, dyn)), grid

    def invariant_pair(first: str, second: str) -> Callable[[], CheckOutcome]:
        def evaluate() -> CheckOutcome:
            return abs(eta.eta_invariant(first).value - eta.eta_invariant(second).value), "s=0"

        return evaluate

    def orbit_form() -> CheckOutcome:
        deviations = [_relative(eta.eta_function_dynamical(s), eta.eta_function(s)) for s in s_values]
        return max(deviations), _describe_s(s_values)

    def residues() -> CheckOutcome:
        h = RESIDUE_STEP
        deviations = [0.0]
        for p in range(1, eta.k + 1):
            if eta.kappa[2 * p - 1] == 0:
                continue
            approach = _residue_estimate(eta.eta_function, p, h)
            deviations.append(abs(approach - eta.eta_residue(p).value))
        return max(deviations), f"s=p+-{h:g}, p=1..{eta.k}"

    def realness() -> CheckOutcome:
        sample = t_values[:: max(1, len(t_values) // 5)]
        parts = [eta.theta_S_dyn_complex(t).imag for t in sample]
        parts += [eta.theta_S_top_complex(t).imag for t in sample]
        parts.append(eta.eta_function(0.0).imag)
        return _max_abs(parts), f"{len(sample)} t values and s=0"

    def index_integrality() -> CheckOutcome:
        deviations = [0.0]
        for lam, _ in spectrum(eta.rep, INDEX_BOUND):
            raw = eta.index_sig_raw(lam)
            deviations.append(max(abs(raw.real - round(raw.real)), abs(raw.imag)))
        return max(deviations), f"|lambda| <= {INDEX_BOUND:g}"

    def homogeneity() -> CheckOutcome:
        deviations = []
        sample = t_values[:: max(1, len(t_values) // 5)]
        for factor in HOMOGENEITY_FACTORS:
            scaled = eta.rescaled(factor)
            for method in ("top", "dyn"):
                for t in sample:
                    deviations.append(abs(scaled.theta_S(factor**2 * t, method) - eta.theta_S(t, method)))
        return max(deviations), f"c in {HOMOGENEITY_FACTORS}, {len(sample)} t values"

    return [
        _Check("eta_trace_top_dyn", "theta_S^top(t) = theta_S^dyn(t)", GRID_TOL, trace_pair),
        _Check("eta_invariant_geo_dyn", "eta(0) Bernoulli form = orbit atoms", ETA_TOL, invariant_pair("geo", "dyn")),
        _Check(
            "eta_invariant_geo_zeta", "eta(0) Bernoulli form = eta_function(0)", ETA_TOL, invariant_pair("geo", "zeta")
        ),
        _Check(
            "eta_invariant_dyn_zeta", "eta(0) orbit atoms = eta_function(0)", ETA_TOL, invariant_pair("dyn", "zeta")
        ),
        _Check("eta_function_orbit_form", "eta(s) Hurwitz/Lerch form = orbit-sum form", IDENTITY_REL_TOL, orbit_form),
        _Check(
            "eta_residues", "Res_{s=p} eta = -(l/2pi)^{2p} kappa_{2p-1} dim V / (2p-1)!", RESIDUE_TOL, residues
        ),
        _Check("eta_realness", "eta outputs are real", REAL_TOL, realness),
        _Check("eta_homogeneity", "theta_S under (l, t) -> (c l, c^2 t)", HOMOGENEITY_TOL, homogeneity),
        _Check("index_integrality", "ind(P^+ | V_lambda) is an integer", INDEX_TOL, index_integrality, integrality),
    ]


def run_suite(
    seifert: SeifertData,
    representation: RepresentationData,
    config: Union[PrecisionConfig, dict, None] = None,
    grid: Optional[GridSection] = None,
    s_values: Optional[Sequence[complex]] = None,
    integrality: Severity = "required",
    fingerprint: Optional[str] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Run every applicable check. Eta checks are added when k, kappa and the
    rotation numbers are present. Checks run concurrently; the report keeps
    their declaration order.
    """
    grid = grid if grid is not None else GridSection()
    t_values = [float(t) for t in grid.t_values()]
    s_values = list(s_values) if s_values else sample_s_values()

    torsion = TorsionCalculator(seifert, representation, config)
    checks = _torsion_checks(torsion, t_values, s_values)
    try:
        eta = EtaCalculator(seifert, representation, torsion.config)
    except Exception as e:
        logger.info(f"eta checks skipped: {e}")
    else:
        checks.extend(_eta_checks(eta, t_values, s_values, integrality))

    logger.info(f"running {len(checks)} checks on {len(t_values)} grid points")
    with ThreadPoolExecutor(max_workers=MAX_CHECK_WORKERS) as executor:
        results = list(executor.map(_run_check, checks))
    report = VerificationReport(checks=results, fingerprint=fingerprint, seed=seed)
    logger.info(f"verification {'passed' if report.passed else 'failed'}: {len(report.failed_checks())} failing checks")
    return report


def verify_manifest(
    manifest: Manifest,
    config: Optional[PrecisionConfig] = None,
    integrality: Severity = "required",
    seed: Optional[int] = None,
) -> VerificationReport:
    """run_suite on a manifest, with its grid, s samples and fingerprint."""
    grid = manifest.grid_or_default()
    s_values = [value.to_complex() for value in grid.s] or None
    return run_suite(
        manifest.seifert,
        manifest.require_representation(),
        config if config is not None else manifest.precision_config(),
        grid=grid,
        s_values=s_values,
        integrality=integrality,
        fingerprint=manifest.fingerprint(),
        seed=seed,
    )
