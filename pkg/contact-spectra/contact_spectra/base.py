# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate
from spectra_core import ConvergenceError, DomainError, PrecisionConfig
from spectra_core.specfun import periodic_dirichlet_series
from spectra_core.utils.loggings import get_logger

from .model import (
    RepresentationData,
    SeifertData,
    character_period,
    chi_prime,
    distinct_angles,
    ensure_valid,
    is_unit,
    rational_euler,
)

logger = get_logger(__name__)

MAX_GRID_WORKERS = 8


class DynamicalSum(BaseModel):
    """Value of a slowly decaying orbit sum with its certified truncation bound."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    value: complex
    truncation_error_bound: float = Field(default=0.0, ge=0.0)
    method: Literal["periodic", "truncated"] = "periodic"


class SeifertCalculator:
    """
    Shared state of the torsion and eta calculators: validated data, precision,
    derived constants and the orbit-sum and quadrature machinery.
    """

    def __init__(
        self,
        seifert: SeifertData,
        representation: RepresentationData,
        config: Union[PrecisionConfig, dict, None] = None,
    ):
        if config is None:
            config = PrecisionConfig()
        elif isinstance(config, dict):
            config = PrecisionConfig(**config)
        elif not isinstance(config, PrecisionConfig):
            raise TypeError(f"config must be PrecisionConfig or dict, got {type(config)}")

        ensure_valid(seifert, representation)
        self.config = config
        self.seifert = seifert
        self.rep = representation
        self.ell = seifert.fiber_length
        self.omega = seifert.omega
        self.dim = representation.dim
        self.angles = distinct_angles(representation)
        self.chi_n = float(rational_euler(seifert))
        self.chi_prime = chi_prime(seifert, representation)

    def rescaled(self, factor: float):
        """Same data with fiber length multiplied by ``factor``."""
        seifert = self.seifert.model_copy(update={"fiber_length": self.ell * factor})
        return type(self)(seifert, self.rep, self.config)

    # ==================== Shared Helpers ====================

    def _check_t(self, function: str, t: float) -> float:
        if not t > 0:
            raise DomainError(function, f"t={t} must be positive")
        return float(t)

    def _exceptional_lengths(self) -> List[float]:
        return [self.seifert.exceptional_length(j) for j in range(len(self.seifert.exceptional))]

    def shortest_length(self) -> float:
        return min([self.ell] + self._exceptional_lengths())

    def smallest_eigenvalue(self) -> float:
        """Smallest nonzero |omega lambda| over the spectrum of iT."""
        smallest = math.inf
        for x, _ in self.angles:
            gap = 1.0 if is_unit(x) else min(x, 1.0 - x)
            smallest = min(smallest, gap)
        return self.omega * smallest

    def generic_period(self) -> Optional[int]:
        return character_period([b.x for b in self.rep.generic_blocks], config=self.config)

    def exceptional_period(self, j: int) -> Optional[int]:
        alpha = self.seifert.exceptional[j].alpha
        return character_period([b.x for b in self.rep.blocks_of(j)], base=alpha, config=self.config)

    def _dirichlet(
        self,
        coefficients: Callable[[np.ndarray], np.ndarray],
        period: Optional[int],
        a: complex,
        coefficient_bound: float,
        function: str,
    ) -> DynamicalSum:
        """
        sum_{n >= 1} c_n n^{-a}: exact periodic continuation when the coefficients
        have a known period, certified truncation otherwise.
        """
        config = self.config
        if period is not None and period <= config.max_terms:
            values = coefficients(np.arange(1, period + 1))
            return DynamicalSum(value=periodic_dirichlet_series(values, a, config), method="periodic")

        sigma = complex(a).real
        tol = config.target_abs_tol
        if coefficient_bound == 0.0:
            return DynamicalSum(value=0j, method="truncated")
        logger.warning(f"{function}: no usable character period, falling back to truncated summation")
        if sigma <= 1.0:
            raise ConvergenceError(function, math.inf, tol)
        cutoff = math.ceil((coefficient_bound / ((sigma - 1.0) * tol)) ** (1.0 / (sigma - 1.0)))
        if cutoff > config.max_terms:
            bound = coefficient_bound * config.max_terms ** (1.0 - sigma) / (sigma - 1.0)
            raise ConvergenceError(function, bound, tol)
        n = np.arange(1, cutoff + 1)
        value = np.dot(coefficients(n), np.exp(-complex(a) * np.log(n)))
        bound = coefficient_bound * cutoff ** (1.0 - sigma) / (sigma - 1.0)
        logger.debug(f"{function}: truncated at n={cutoff}, tail bound {bound:.3e}")
        return DynamicalSum(value=complex(value), truncation_error_bound=bound, method="truncated")

    def _log_quad(
        self, integrand: Callable[[float], float], lower: float, upper: float, function: str
    ) -> Tuple[float, float]:
        """int_lower^upper g(t) dt / t, integrated in u = ln t; returns (value, error estimate)."""
        if upper <= lower:
            return 0.0, 0.0
        value, error = integrate.quad(
            lambda u: integrand(math.exp(u)),
            math.log(lower),
            math.log(upper),
            epsabs=self.config.target_abs_tol,
            epsrel=1e-12,
            limit=400,
        )
        if error > 1e-7 * max(1.0, abs(value)):
            raise ConvergenceError(function, error, 1e-7)
        return float(value), float(error)

    def _heat_window(self, weight: float) -> Tuple[float, float]:
        """
        (t_low, t_high) outside of which the non-singular part of a heat trace is
        below tolerance: orbit Gaussians below t_low, spectral Gaussians above t_high.
        """
        log_target = math.log(max(weight, 1.0) / self.config.target_abs_tol) + 10.0
        t_low = self.shortest_length() ** 2 / (4.0 * log_target)
        t_high = log_target / self.smallest_eigenvalue() ** 2
        return min(t_low, 1.0), max(t_high, 1.0)

    def evaluate_grid(self, function: Callable[[float], float], points: Sequence[float]) -> List[float]:
        """Evaluate concurrently; results follow the order of ``points``."""
        points = list(points)
        workers = max(1, min(MAX_GRID_WORKERS, len(points)))
        logger.debug(f"evaluating {getattr(function, '__name__', 'function')} on {len(points)} points")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(function, points))
