# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
Torsion side: the three forms of the heat trace, the zeta functions Z and
Z^dyn, the contact analytic torsion and the Fuller measure.

Lengths enter through omega = 2 pi / l(f); a class gamma of length l has
order 2 pi / l, so the generic fiber has order omega and f_j has order
alpha_j omega.
"""

import math
from functools import partial
from typing import Dict, List, Literal, Optional, Sequence, Union, override

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from spectra_core import ErrorCode, PoleError, PrecisionConfig, SpectraException
from spectra_core.specfun import gaussian_cutoff, hurwitz_zeta, hurwitz_zeta_s_derivative_at_zero, jacobi_theta
from spectra_core.utils.loggings import get_logger

from .base import DynamicalSum, SeifertCalculator
from .model import RepresentationData, SeifertData, character_sequence, is_unit, parent_angle, same_angle

logger = get_logger(__name__)

HEAT_METHODS = ("geo", "dyn", "top")
TORSION_METHODS = ("geo", "dyn", "top", "closed", "zeta")
FD_STEP = 1e-4

TorsionMethod = Literal["geo", "dyn", "top", "closed_form", "zeta_derivative"]


class TorsionResult(BaseModel):
    """Contact analytic torsion T_Q with the method that produced it."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    value: float = Field(..., description="T_Q(M, rho)")
    method: TorsionMethod
    truncation_error_bound: float = Field(default=0.0, ge=0.0)


def _block_zeta(s: complex, block, config) -> complex:
    """mult * (zeta(2s, x) + zeta(2s, 1 - x)), or 2 zeta(2s) mult on the unit eigenvalue."""
    if is_unit(block.x):
        return 2.0 * block.mult * hurwitz_zeta(2.0 * s, 1.0, config)
    return block.mult * (hurwitz_zeta(2.0 * s, block.x, config) + hurwitz_zeta(2.0 * s, 1.0 - block.x, config))


def _log_det(blocks) -> float:
    """ln |det(rho^perp - 1)| = sum over non-unit blocks of mult ln(2 sin pi x)."""
    return sum(b.mult * math.log(2.0 * math.sin(math.pi * b.x)) for b in blocks if not is_unit(b.x))


def _block_zeta_derivative_at_zero(block) -> float:
    """d/ds of :func:`_block_zeta` at s = 0."""
    if is_unit(block.x):
        return 4.0 * block.mult * hurwitz_zeta_s_derivative_at_zero(1.0)
    return 2.0 * block.mult * (
        hurwitz_zeta_s_derivative_at_zero(block.x) + hurwitz_zeta_s_derivative_at_zero(1.0 - block.x)
    )


class TorsionCalculator(SeifertCalculator):
    """Heat traces, zeta functions and torsion of one (Seifert data, representation) pair."""

    @override
    def __init__(
        self,
        seifert: SeifertData,
        representation: RepresentationData,
        config: Union[PrecisionConfig, dict, None] = None,
    ):
        super().__init__(seifert, representation, config)
        # index_dh(x + n) depends on n only modulo lcm(alpha_j)
        period = math.lcm(1, *(orbit.alpha for orbit in seifert.exceptional))
        self._index_tables: Dict[float, np.ndarray] = {
            x: np.array([self.index_dh(x + n) for n in range(period)], dtype=float) for x, _ in self.angles
        }

    # ==================== Heat Traces ====================

    def _orbit_blocks(self, orbit: Optional[int]) -> Sequence:
        return self.rep.generic_blocks if orbit is None else self.rep.blocks_of(orbit)

    def _orbit_length(self, orbit: Optional[int]) -> float:
        return self.ell if orbit is None else self.seifert.exceptional_length(orbit)

    def chi_theta(self, t: float, orbit: Optional[int] = None) -> float:
        """Theta-regularised character of f (orbit None) or of f_j."""
        t = self._check_t("chi_theta", t)
        length = self._orbit_length(orbit)
        scaled = 4.0 * math.pi**2 * t / length**2
        return sum(block.mult * jacobi_theta(block.x, scaled, self.config) for block in self._orbit_blocks(orbit))

    def theta_geo(self, t: float) -> float:
        t = self._check_t("theta_geo", t)
        value = self.seifert.chi_n_star * self.chi_theta(t)
        for j in range(len(self.seifert.exceptional)):
            value += self.chi_theta(t, j)
        return float(value)

    def theta_dyn_complex(self, t: float) -> complex:
        """Orbit sum of the heat trace before taking the real part."""
        t = self._check_t("theta_dyn", t)
        tol = self.config.target_abs_tol
        guard = self.config.series_guard_factor
        prefactor = 1.0 / math.sqrt(4.0 * math.pi * t)
        total = complex(self.dim * self.ell * self.chi_n)

        e_generic = self.ell * self.chi_n
        if e_generic != 0.0:
            weight = prefactor * self.dim * abs(e_generic)
            cutoff = gaussian_cutoff(self.ell**2 / (4.0 * t), tol / weight, guard, max_terms=self.config.max_terms)
            n = np.arange(1, cutoff + 2)
            chars = character_sequence(self.rep, n) + character_sequence(self.rep, -n)
            total += e_generic * np.dot(chars, np.exp(-((n * self.ell) ** 2) / (4.0 * t)))

        for j, orbit in enumerate(self.seifert.exceptional):
            ell_j = self.seifert.exceptional_length(j)
            weight = prefactor * self.dim * ell_j
            cutoff = gaussian_cutoff(ell_j**2 / (4.0 * t), tol / weight, guard, max_terms=self.config.max_terms)
            r = np.arange(1, cutoff + 2)
            r = r[r % orbit.alpha != 0]
            chars = character_sequence(self.rep, r, orbit=j) + character_sequence(self.rep, -r, orbit=j)
            total += ell_j * np.dot(chars, np.exp(-((r * ell_j) ** 2) / (4.0 * t)))
        return complex(prefactor * total)

    def theta_dyn(self, t: float) -> float:
        return self.theta_dyn_complex(t).real

    def index_dh(self, lam: float) -> int:
        """Index of the Dolbeault-type operator on the lambda-eigenspace of iT."""
        x = parent_angle(self.rep, lam)
        total = self.seifert.chi_n_star * sum(b.mult for b in self.rep.generic_blocks if same_angle(b.x, x))
        for j, orbit in enumerate(self.seifert.exceptional):
            for block in self.rep.blocks_of(j):
                if same_angle(block.parent_x, x) and same_angle(lam / orbit.alpha, block.x):
                    total += block.mult
        return int(total)

    def theta_top(self, t: float) -> float:
        t = self._check_t("theta_top", t)
        rate = t * self.omega**2
        weight = self.dim * (abs(self.seifert.chi_n_star) + len(self.seifert.exceptional))
        cutoff = gaussian_cutoff(
            rate,
            self.config.target_abs_tol / max(weight, 1),
            self.config.series_guard_factor,
            max_terms=self.config.max_terms,
        )
        n = np.arange(-cutoff - 2, cutoff + 3)
        total = 0.0
        for x, _ in self.angles:
            table = self._index_tables[x]
            lam = x + n
            total += float(np.dot(table[n % len(table)], np.exp(-rate * lam * lam)))
        return total

    def theta(self, t: float, method: str = "geo") -> float:
        if method == "geo":
            return self.theta_geo(t)
        if method == "dyn":
            return self.theta_dyn(t)
        if method == "top":
            return self.theta_top(t)
        raise SpectraException(ErrorCode.UNKNOWN_METHOD, message_args={"method": method, "choices": HEAT_METHODS})

    def theta_grid(self, t_values: Sequence[float], method: str = "geo") -> List[float]:
        return self.evaluate_grid(partial(self.theta, method=method), t_values)

    def heat_small_t_asymptote(self, t: float) -> float:
        """l(f) chi(N) dim V / sqrt(4 pi t); sqrt(pi / t) chi(N) dim V at l(f) = 2 pi."""
        t = self._check_t("heat_small_t_asymptote", t)
        return self.ell * self.chi_n * self.dim / math.sqrt(4.0 * math.pi * t)

    def heat_large_t_limit(self) -> int:
        return self.chi_prime

    # ==================== Zeta Functions ====================

    def _orders(self):
        """(weight, order, blocks) for f and every f_j."""
        yield self.seifert.chi_n_star, self.omega, self.rep.generic_blocks
        for j, orbit in enumerate(self.seifert.exceptional):
            yield 1, orbit.alpha * self.omega, self.rep.blocks_of(j)

    def zeta_Z(self, s: complex) -> complex:
        """Torsion zeta function, meromorphic with a simple pole at s = 1/2."""
        s = complex(s)
        if s == 0.5:
            raise PoleError("zeta_Z", s)
        total = 0j
        for weight, order, blocks in self._orders():
            if weight == 0:
                continue
            block_sum = sum(_block_zeta(s, block, self.config) for block in blocks)
            total += weight * np.exp(-2.0 * s * math.log(order)) * block_sum
        return complex(total)

    def zeta_Z_residue(self) -> float:
        """Res_{s=1/2} Z = (l(f) / 2 pi) chi(N) dim V."""
        return self.chi_n * self.dim / self.omega

    def zeta_Z_derivative_at_zero(self) -> float:
        """Z'(0) from the Hurwitz s-derivatives; the block value at 0 is -dim V^1."""
        total = 0.0
        for weight, order, blocks in self._orders():
            units = sum(block.mult for block in blocks if is_unit(block.x))
            derivative = sum(_block_zeta_derivative_at_zero(block) for block in blocks)
            total += weight * (2.0 * math.log(order) * units + derivative)
        return total

    def zeta_Z_derivative_fd(self, step: float = FD_STEP) -> float:
        """Central finite difference of Z at 0."""
        return ((self.zeta_Z(step) - self.zeta_Z(-step)) / (2.0 * step)).real

    def zeta_Zdyn(self, s: complex) -> DynamicalSum:
        """
        sum over nontrivial classes of chi(gamma) e(gamma) |l(gamma)|^{2s - 1}, continued
        by periodic resummation of the characters.
        """
        s = complex(s)
        a = 1.0 - 2.0 * s
        total = 0j
        bound = 0.0
        method = "periodic"
        try:
            if self.chi_n != 0.0:
                scale = self.ell * self.chi_n * np.exp((2.0 * s - 1.0) * math.log(self.ell))
                part = self._dirichlet(
                    lambda n: 2.0 * character_sequence(self.rep, n, config=self.config).real,
                    self.generic_period(),
                    a,
                    2.0 * self.dim,
                    "zeta_Zdyn",
                )
                total += scale * part.value
                bound += abs(scale) * part.truncation_error_bound
                method = part.method if part.method == "truncated" else method
            for j, orbit in enumerate(self.seifert.exceptional):
                ell_j = self.seifert.exceptional_length(j)
                scale = np.exp(2.0 * s * math.log(ell_j))
                part = self._dirichlet(
                    partial(self._exceptional_coefficients, j, orbit.alpha),
                    self.exceptional_period(j),
                    a,
                    2.0 * self.dim,
                    "zeta_Zdyn",
                )
                total += scale * part.value
                bound += abs(scale) * part.truncation_error_bound
                method = part.method if part.method == "truncated" else method
        except PoleError as e:
            raise PoleError("zeta_Zdyn", s) from e
        return DynamicalSum(value=complex(total), truncation_error_bound=bound, method=method)

    def _exceptional_coefficients(self, j: int, alpha: int, r: np.ndarray) -> np.ndarray:
        values = 2.0 * character_sequence(self.rep, r, orbit=j, config=self.config).real
        return np.where(r % alpha != 0, values, 0.0)

    # ==================== Torsion ====================

    def torsion_closed_form(self) -> TorsionResult:
        """l(f)^{chi'} |det(rho(f)^perp - 1)|^{chi(N*)} prod_j |det(rho(f_j)^perp - 1)| / alpha_j^{dim V^1_j}."""
        log_value = self.chi_prime * math.log(self.ell) + self.seifert.chi_n_star * _log_det(self.rep.generic_blocks)
        for j, orbit in enumerate(self.seifert.exceptional):
            blocks = self.rep.blocks_of(j)
            units = sum(b.mult for b in blocks if is_unit(b.x))
            log_value += _log_det(blocks) - units * math.log(orbit.alpha)
        return TorsionResult(value=math.exp(log_value), method="closed_form")

    def torsion_from_zeta(self) -> TorsionResult:
        """exp(-Z'(0) / 2) with the analytic Z'(0)."""
        return TorsionResult(value=math.exp(-0.5 * self.zeta_Z_derivative_at_zero()), method="zeta_derivative")

    def torsion_from_heat(self, method: str = "geo") -> TorsionResult:
        """
        exp(-Z'(0) / 2) with Z'(0) from the Mellin transform of the chosen heat trace.

        With A = l(f) chi(N) dim V / sqrt(4 pi), the trace is A t^{-1/2} up to an
        exponentially small error near 0 and chi' up to one near infinity, and
        Z'(0) = -2A - gamma chi' + int_0^1 (theta - A t^{-1/2}) dt/t + int_1^inf (theta - chi') dt/t.
        """
        if method not in HEAT_METHODS:
            raise SpectraException(ErrorCode.UNKNOWN_METHOD, message_args={"method": method, "choices": HEAT_METHODS})
        amplitude = self.ell * self.chi_n * self.dim / math.sqrt(4.0 * math.pi)
        weight = self.dim * (abs(self.seifert.chi_n_star) + len(self.seifert.exceptional) + abs(amplitude))
        t_low, t_high = self._heat_window(weight)
        trace = partial(self.theta, method=method)
        near, near_error = self._log_quad(
            lambda t: trace(t) - amplitude / math.sqrt(t), t_low, 1.0, "torsion_from_heat"
        )
        far, far_error = self._log_quad(lambda t: trace(t) - self.chi_prime, 1.0, t_high, "torsion_from_heat")
        derivative = -2.0 * amplitude - np.euler_gamma * self.chi_prime + near + far
        value = math.exp(-0.5 * derivative)
        logger.debug(f"heat torsion ({method}): window [{t_low:.3g}, {t_high:.3g}], Z'(0)={derivative}")
        return TorsionResult(value=value, method=method, truncation_error_bound=0.5 * value * (near_error + far_error))

    def torsion(self, method: str = "closed") -> TorsionResult:
        if method == "closed":
            return self.torsion_closed_form()
        if method == "zeta":
            return self.torsion_from_zeta()
        if method in HEAT_METHODS:
            return self.torsion_from_heat(method)
        raise SpectraException(ErrorCode.UNKNOWN_METHOD, message_args={"method": method, "choices": TORSION_METHODS})

    # ==================== Fuller Measure ====================

    def fuller_measure(self) -> float:
        """Twisted Fuller measure of the periodic orbits, equal to Z'(0) = -2 ln T_Q."""
        return self.zeta_Z_derivative_at_zero()

    def fuller_orbit_limit(self) -> float:
        """lim_{s -> 0} (Z^dyn(s) + chi'/s), i.e. Z'(0) + 2 gamma chi'."""
        return self.zeta_Z_derivative_at_zero() + 2.0 * np.euler_gamma * self.chi_prime

    def is_acyclic(self) -> bool:
        """No unit eigenvalue on f or on any f_j."""
        blocks: List = list(self.rep.generic_blocks)
        for j in range(len(self.seifert.exceptional)):
            blocks.extend(self.rep.blocks_of(j))
        return not any(is_unit(block.x) for block in blocks)
