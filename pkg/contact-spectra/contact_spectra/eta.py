# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
Eta side: Lefschetz factors, theta-regularised Chern characters, the eta
trace in spectral and orbit form, the eta function with its residues, and
the eta invariant in geometric, dynamical, zeta and heat form.

The class c meets lengths only through (l + i c); there it is taken in
physical units c_phys = (l(f) / 2 pi) c, so the pairing of c^m carries
(l(f) / 2 pi)^m kappa_m.
"""

import math
from functools import partial
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union, override

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from spectra_core import (
    ConvergenceError,
    DataInconsistencyError,
    DomainError,
    ErrorCode,
    NilpotentSeries,
    PoleError,
    PrecisionConfig,
    SpectraException,
)
from spectra_core.specfun import (
    bernoulli_gen_ratio,
    bernoulli_polynomial,
    gamma_complex,
    gaussian_cutoff,
    hurwitz_zeta,
    lerch_at_root_of_unity,
)
from spectra_core.utils.loggings import get_logger

from .base import SeifertCalculator
from .model import (
    RepresentationData,
    SeifertData,
    character_sequence,
    dim_eigenspace,
    is_unit,
    parent_angle,
    require_eta_data,
)

logger = get_logger(__name__)

ETA_METHODS = ("geo", "dyn", "zeta", "top")
THETA_S_METHODS = ("top", "dyn")
INDEX_TOL = 1e-6
REAL_TOL = 1e-10

EtaMethod = Literal["geo", "dyn", "top", "zeta_at_zero"]


class EtaResult(BaseModel):
    """Eta invariant eta(S_Q)(0) with the method that produced it."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    value: float = Field(..., description="eta(S_Q)(0)")
    method: EtaMethod
    truncation_error_bound: float = Field(default=0.0, ge=0.0)
    imaginary_residue: float = Field(default=0.0, description="|Im| of the assembled complex sum")


class EtaResidue(BaseModel):
    """Residue of eta(s) at s = p, with the residue of Gamma(s + 1/2) eta(s) in its stated closed form."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    p: int
    value: float = Field(..., description="Res_{s=p} eta(s)")
    phi_residue_stated: complex = Field(..., description="dim V i l(f) kappa_{2p-1} / (sqrt(pi) (p-1)! 4^p)")


def _binomial(z: complex, m: int) -> complex:
    value = 1.0 + 0j
    for i in range(m):
        value *= (z - i) / (i + 1)
    return value


class EtaCalculator(SeifertCalculator):
    """Eta-side invariants of one (Seifert data, representation) pair; needs k, kappa and rotation numbers."""

    @override
    def __init__(
        self,
        seifert: SeifertData,
        representation: RepresentationData,
        config: Union[PrecisionConfig, dict, None] = None,
    ):
        super().__init__(seifert, representation, config)
        self.k = require_eta_data(seifert)
        self.kappa = np.zeros(2 * self.k)
        for m, value in seifert.kappa.items():
            self.kappa[m] = value
        self.c_scale = self.ell / (2.0 * math.pi)
        self._nu_table: Dict[Tuple[int, int], complex] = {
            (j, r): self._lefschetz_factor(orbit.alpha, orbit.rotation_numbers, r)
            for j, orbit in enumerate(seifert.exceptional)
            for r in range(1, orbit.alpha)
        }

    # ==================== Pairings and Lefschetz Factors ====================

    def kappa_pair(self, series: NilpotentSeries) -> complex:
        """<series wedge L(N), [N_smooth]>; only odd powers of c pair."""
        if series.k != self.k:
            raise DomainError("kappa_pair", f"series has k={series.k}, data has k={self.k}")
        return complex(np.dot(series.coefficients, self.kappa))

    def kappa_pair_physical(self, series: NilpotentSeries) -> complex:
        """Pairing with c in physical units."""
        return self.kappa_pair(series.rescale(self.c_scale))

    def kappa_physical(self, m: int) -> float:
        return self.c_scale**m * self.kappa[m]

    def nu(self, j: int, r: int) -> complex:
        """i (-1)^k prod_m cot(pi r beta_{j,m} / alpha_j)."""
        orbit = self.seifert.exceptional[j]
        r = int(r)
        if r % orbit.alpha == 0:
            raise DomainError("nu", f"r={r} is divisible by alpha={orbit.alpha}")
        return self._nu_table[(j, r % orbit.alpha)]

    def _lefschetz_factor(self, alpha: int, rotation_numbers: Sequence[int], r: int) -> complex:
        product = 1.0
        for beta in rotation_numbers:
            residue = (r * beta) % alpha
            if 2 * residue == alpha:
                # cot(pi / 2) vanishes exactly
                return 0j
            product /= math.tan(math.pi * residue / alpha)
        return 1j * (-1) ** self.k * product

    def _nu_bound(self, j: int) -> float:
        alpha = self.seifert.exceptional[j].alpha
        return max(abs(self.nu(j, r)) for r in range(1, alpha))

    def _restricted_character(self, j: int, r: int, x: float) -> complex:
        return complex(character_sequence(self.rep, [r], orbit=j, parent_x=x, config=self.config)[0])

    # ==================== Index ====================

    def _index_array(self, x: float, lam: np.ndarray) -> np.ndarray:
        """Raw signature index over eigenvalues lambda in x + Z."""
        lam = np.asarray(lam, dtype=float)
        dim = dim_eigenspace(self.rep, x)
        smooth = np.zeros(lam.shape)
        for m in range(1, 2 * self.k, 2):
            smooth += self.kappa[m] * lam**m / math.factorial(m)
        total = dim * smooth.astype(complex)
        for j, orbit in enumerate(self.seifert.exceptional):
            for r in range(1, orbit.alpha):
                weight = self._restricted_character(j, r, x) * self.nu(j, r) / orbit.alpha
                if weight == 0:
                    continue
                total += weight * np.exp(-2j * math.pi * np.mod(r * lam / orbit.alpha, 1.0))
        return total

    def index_sig_raw(self, lam: float) -> complex:
        x = parent_angle(self.rep, lam)
        return complex(self._index_array(x, np.array([lam]))[0])

    def index_sig(self, lam: float, strict: bool = True) -> float:
        """
        ind(P^+ | V_lambda). In strict mode the value must lie within 1e-6 of an
        integer and is rounded; otherwise the raw real part is returned.
        """
        raw = self.index_sig_raw(lam)
        nearest = round(raw.real)
        deviation = max(abs(raw.real - nearest), abs(raw.imag))
        if deviation > INDEX_TOL:
            if strict:
                raise DataInconsistencyError(
                    ErrorCode.INDEX_INTEGRALITY, message_args={"value": lam, "index": raw, "tol": INDEX_TOL}
                )
            logger.warning(f"index at lambda={lam} is {raw}, not integral")
            return raw.real
        return float(nearest)

    # ==================== Eta Trace ====================

    def theta_S_top_complex(self, t: float) -> complex:
        t = self._check_t("theta_S_top", t)
        rate = t * self.omega**2
        exceptional = sum(self._nu_bound(j) for j in range(len(self.seifert.exceptional)))
        weight = math.sqrt(t) * self.omega * self.dim * (np.abs(self.kappa).sum() + exceptional) * 4.0**self.k
        cutoff = gaussian_cutoff(
            rate,
            self.config.target_abs_tol / max(weight, 1e-300),
            self.config.series_guard_factor,
            degree=2 * self.k,
            max_terms=self.config.max_terms,
        )
        n = np.arange(-cutoff - 2, cutoff + 3)
        total = 0j
        for x, _ in self.angles:
            lam = x + n
            mu = self.omega * lam
            total += np.dot(self._index_array(x, lam), mu * np.exp(-rate * lam * lam))
        return complex(-math.sqrt(t) * total)

    def theta_S_top(self, t: float) -> float:
        """-sqrt(t) sum_lambda ind(P^+ | V_lambda) lambda e^{-t lambda^2} with raw index values."""
        return self.theta_S_top_complex(t).real

    def _smooth_orbit_series(self, length: float, t: float) -> NilpotentSeries:
        """(l + i c) e^{-(l + i c)^2 / 4t} in c."""
        base = NilpotentSeries([length, 1j], k=self.k)
        return base * (base * base * (-1.0 / (4.0 * t))).exp()

    def _smooth_orbit_cutoff(self, t: float, amplitude: float, weights: np.ndarray) -> int:
        """Cutoff of sum_n sum_m weights_m |[c^m] (n l + i c) e^{-(n l + i c)^2 / 4t}|."""
        g = NilpotentSeries.generator(self.k)
        majorant = ((NilpotentSeries.constant(self.k) + g) * ((g * 2.0 + g * g) * (1.0 / (4.0 * t))).exp()).coefficients
        m = np.arange(2 * self.k)
        weight = amplitude * float(np.sum(weights * majorant.real * (1.0 + self.ell) ** (m + 1)))
        return gaussian_cutoff(
            self.ell**2 / (4.0 * t),
            self.config.target_abs_tol / max(weight, 1e-300),
            self.config.series_guard_factor,
            degree=2 * self.k,
            max_terms=self.config.max_terms,
        )

    def theta_S_dyn_complex(self, t: float) -> complex:
        t = self._check_t("theta_S_dyn", t)
        prefactor = 1.0 / math.sqrt(4.0 * math.pi)
        smooth_amplitude = prefactor * self.dim * self.ell / (2.0 * t)
        kappa_phys = np.abs(self.kappa) * self.c_scale ** np.arange(2 * self.k)
        cutoff = self._smooth_orbit_cutoff(t, smooth_amplitude, kappa_phys)
        n = np.arange(-cutoff - 1, cutoff + 2)
        chars = character_sequence(self.rep, n, config=self.config)
        total = 0j
        for exponent, chi in zip(n, chars):
            series = self._smooth_orbit_series(exponent * self.ell, t)
            total += chi * (1j * self.ell / (2.0 * t)) * self.kappa_pair_physical(series)

        for j, orbit in enumerate(self.seifert.exceptional):
            ell_j = self.seifert.exceptional_length(j)
            weight = prefactor * self.dim * ell_j**2 / (2.0 * t) * self._nu_bound(j)
            if weight == 0:
                continue
            top = gaussian_cutoff(
                ell_j**2 / (4.0 * t),
                self.config.target_abs_tol / weight,
                self.config.series_guard_factor,
                degree=1,
                max_terms=self.config.max_terms,
            )
            r = np.arange(-top - 1, top + 2)
            r = r[r % orbit.alpha != 0]
            nus = np.array([self.nu(j, int(v)) for v in r])
            lengths = r * ell_j
            chars = character_sequence(self.rep, r, orbit=j, config=self.config)
            total += (1j * ell_j / (2.0 * t)) * np.sum(chars * lengths * np.exp(-(lengths**2) / (4.0 * t)) * nus)
        return complex(prefactor * total)

    def theta_S_dyn(self, t: float) -> float:
        """Orbit form of the eta trace, the constant class n = 0 included."""
        return self.theta_S_dyn_complex(t).real

    def theta_S(self, t: float, method: str = "top") -> float:
        if method == "top":
            return self.theta_S_top(t)
        if method == "dyn":
            return self.theta_S_dyn(t)
        raise SpectraException(ErrorCode.UNKNOWN_METHOD, message_args={"method": method, "choices": THETA_S_METHODS})

    def theta_S_grid(self, t_values: Sequence[float], method: str = "top") -> List[float]:
        return self.evaluate_grid(partial(self.theta_S, method=method), t_values)

    # ==================== Regularised Chern Characters ====================

    def ch_theta(
        self,
        parity: Literal["even", "odd"],
        t: float,
        site: Optional[Tuple[int, int]] = None,
        mode: Literal["spectral", "dual"] = "spectral",
    ) -> Union[NilpotentSeries, complex]:
        """
        Theta-regularised Chern character over the smooth part (``site`` None,
        a NilpotentSeries in c) or at the exceptional class f_j^r (``site`` = (j, r),
        a number), evaluated as a spectral sum or through its Poisson dual.
        """
        t = self._check_t("ch_theta", t)
        if parity not in ("even", "odd"):
            raise DomainError("ch_theta", f"parity must be 'even' or 'odd', got {parity!r}")
        if mode not in ("spectral", "dual"):
            raise SpectraException(
                ErrorCode.UNKNOWN_METHOD, message_args={"method": mode, "choices": ("spectral", "dual")}
            )
        odd = parity == "odd"
        if site is None:
            return self._ch_smooth_spectral(t, odd) if mode == "spectral" else self._ch_smooth_dual(t, odd)
        j, r = site
        if j < 0 or j >= len(self.seifert.exceptional):
            raise SpectraException(ErrorCode.ORBIT_INDEX, message_args={"index": j})
        if r % self.seifert.exceptional[j].alpha == 0:
            raise DomainError("ch_theta", f"r={r} is divisible by alpha={self.seifert.exceptional[j].alpha}")
        if mode == "spectral":
            return self._ch_exceptional_spectral(t, odd, j, r)
        return self._ch_exceptional_dual(t, odd, j, r)

    def _spectral_cutoff(self, t: float, degree: int) -> int:
        rate = t * self.omega**2
        weight = self.dim * max(1.0, self.omega) ** degree * 2.0**degree * max(1.0, math.sqrt(t))
        return gaussian_cutoff(
            rate,
            self.config.target_abs_tol / weight,
            self.config.series_guard_factor,
            degree=degree,
            max_terms=self.config.max_terms,
        )

    def _ch_smooth_spectral(self, t: float, odd: bool) -> NilpotentSeries:
        cutoff = self._spectral_cutoff(t, 2 * self.k)
        n = np.arange(-cutoff - 2, cutoff + 3)
        coefficients = np.zeros(2 * self.k, dtype=complex)
        for x, dim in self.angles:
            mu = self.omega * (x + n)
            gauss = dim * np.exp(-t * mu * mu)
            if odd:
                gauss = math.sqrt(t) * mu * gauss
            for m in range(2 * self.k):
                coefficients[m] += np.sum(mu**m * gauss) / math.factorial(m)
        return NilpotentSeries(coefficients)

    def _ch_smooth_dual(self, t: float, odd: bool) -> NilpotentSeries:
        amplitude = self.dim * self.ell / math.sqrt(4.0 * math.pi * t) * max(1.0, 1.0 / (2.0 * math.sqrt(t)))
        cutoff = self._smooth_orbit_cutoff(t, amplitude, np.ones(2 * self.k))
        n = np.arange(-cutoff - 1, cutoff + 2)
        chars = character_sequence(self.rep, n, config=self.config)
        total = NilpotentSeries.constant(self.k, 0.0)
        for exponent, chi in zip(n, chars):
            base = NilpotentSeries([exponent * self.ell, 1j], k=self.k)
            gauss = (base * base * (-1.0 / (4.0 * t))).exp()
            total = total + (base * gauss if odd else gauss) * chi
        if odd:
            return total * (-1j * self.ell / (2.0 * t * math.sqrt(4.0 * math.pi)))
        return total * (self.ell / math.sqrt(4.0 * math.pi * t))

    def _ch_exceptional_spectral(self, t: float, odd: bool, j: int, r: int) -> complex:
        alpha = self.seifert.exceptional[j].alpha
        cutoff = self._spectral_cutoff(t, 1)
        n = np.arange(-cutoff - 2, cutoff + 3)
        total = 0j
        for x, _ in self.angles:
            chi = self._restricted_character(j, r, x)
            if chi == 0:
                continue
            lam = x + n
            mu = self.omega * lam
            terms = np.exp(-2j * math.pi * np.mod(r * lam / alpha, 1.0) - t * mu * mu)
            if odd:
                terms = math.sqrt(t) * mu * terms
            total += chi * np.sum(terms)
        return complex(total)

    def _ch_exceptional_dual(self, t: float, odd: bool, j: int, r: int) -> complex:
        alpha = self.seifert.exceptional[j].alpha
        ell_j = self.seifert.exceptional_length(j)
        rate = (alpha * ell_j) ** 2 / (4.0 * t)
        weight = self.dim * self.ell / math.sqrt(4.0 * math.pi * t) * (1.0 + self.ell / t) * (1.0 + self.ell)
        cutoff = gaussian_cutoff(
            rate,
            self.config.target_abs_tol / weight,
            self.config.series_guard_factor,
            degree=1,
            max_terms=self.config.max_terms,
        )
        m = np.arange(-cutoff - 2, cutoff + 3)
        exponents = r + m * alpha
        lengths = exponents * ell_j
        chars = character_sequence(self.rep, exponents, orbit=j, config=self.config)
        gauss = chars * np.exp(-(lengths**2) / (4.0 * t))
        if odd:
            return complex(-1j * self.ell / (2.0 * t * math.sqrt(4.0 * math.pi)) * np.sum(gauss * lengths))
        return complex(self.ell / math.sqrt(4.0 * math.pi * t) * np.sum(gauss))

    # ==================== Eta Function ====================

    def _smooth_block(self, q: int, s: complex, x: float, dim: int) -> complex:
        """sum over lambda in x + Z, lambda != 0, of |lambda|^{q - 2s}."""
        if is_unit(x):
            return 2.0 * dim * hurwitz_zeta(2.0 * s - q, 1.0, self.config)
        return dim * (hurwitz_zeta(2.0 * s - q, x, self.config) + hurwitz_zeta(2.0 * s - q, 1.0 - x, self.config))

    def _exceptional_block(self, j: int, r: int, s: complex, x: float) -> complex:
        """sum over lambda in x + Z, lambda != 0, of sign(lambda) |lambda|^{-2s} e^{-2 i pi r lambda / alpha}."""
        alpha = self.seifert.exceptional[j].alpha
        z = np.exp(-2j * math.pi * r / alpha)
        if is_unit(x):
            return complex(
                z * lerch_at_root_of_unity(-r, alpha, 2.0 * s, 1.0, self.config)
                - np.conj(z) * lerch_at_root_of_unity(r, alpha, 2.0 * s, 1.0, self.config)
            )
        forward = np.exp(-2j * math.pi * r * x / alpha) * lerch_at_root_of_unity(-r, alpha, 2.0 * s, x, self.config)
        backward = np.exp(2j * math.pi * r * (1.0 - x) / alpha) * lerch_at_root_of_unity(
            r, alpha, 2.0 * s, 1.0 - x, self.config
        )
        return complex(forward - backward)

    def eta_function(self, s: complex) -> complex:
        """Analytic continuation of eta(S_Q)(s); simple poles at s = p when kappa_{2p-1} != 0."""
        s = complex(s)
        for p in range(1, self.k + 1):
            if s == p and self.kappa[2 * p - 1] != 0:
                raise PoleError("eta_function", s)
        smooth = 0j
        for q in range(1, 2 * self.k, 2):
            if self.kappa[q] == 0 or s == (q + 1) / 2:
                continue
            block = sum(self._smooth_block(q, s, x, dim) for x, dim in self.angles)
            smooth += self.kappa[q] / math.factorial(q) * block
        exceptional = 0j
        for j, orbit in enumerate(self.seifert.exceptional):
            for r in range(1, orbit.alpha):
                nu = self.nu(j, r)
                if abs(nu) < 1e-14:
                    continue
                for x, _ in self.angles:
                    chi = self._restricted_character(j, r, x)
                    if chi != 0:
                        exceptional += chi * nu * self._exceptional_block(j, r, s, x) / orbit.alpha
        return complex(-np.exp(2.0 * s * math.log(self.c_scale)) * (smooth + exceptional))

    def eta_function_dynamical(self, s: complex) -> complex:
        """
        Orbit-sum form of eta(s):
        Gamma(1 - s) 4^{1 - s} i / (4 sqrt(pi) Gamma(s + 1/2)) times
        [l(f) sum_{n != 0} chi(f^n) <(l + i c)^{2s - 1} L(N)> + sum_j l(f_j) sum_r chi(f_j^r) nu l^{2s-1}].
        """
        s = complex(s)
        try:
            prefactor = gamma_complex(1.0 - s) * np.exp((1.0 - s) * math.log(4.0)) * 1j
            prefactor /= 4.0 * math.sqrt(math.pi) * gamma_complex(s + 0.5)
        except PoleError as e:
            raise PoleError("eta_function_dynamical", s) from e

        total = 0j
        generic_period = self.generic_period()
        for m in range(1, 2 * self.k, 2):
            binomial = _binomial(2.0 * s - 1.0, m)
            if self.kappa[m] == 0 or binomial == 0:
                continue
            part = self._dirichlet(
                lambda n: 2.0 * character_sequence(self.rep, n, config=self.config).real,
                generic_period,
                m + 1.0 - 2.0 * s,
                2.0 * self.dim,
                "eta_function_dynamical",
            )
            scale = self.ell * binomial * 1j**m * self.kappa_physical(m)
            total += scale * np.exp((2.0 * s - 1.0 - m) * math.log(self.ell)) * part.value

        for j, orbit in enumerate(self.seifert.exceptional):
            ell_j = self.seifert.exceptional_length(j)
            part = self._dirichlet(
                partial(self._exceptional_atoms, j, 1.0),
                self.exceptional_period(j),
                1.0 - 2.0 * s,
                2.0 * self.dim * self._nu_bound(j),
                "eta_function_dynamical",
            )
            total += np.exp(2.0 * s * math.log(ell_j)) * part.value
        return complex(prefactor * total)

    def _exceptional_atoms(self, j: int, scale: complex, r: np.ndarray) -> np.ndarray:
        """2 Re chi(f_j^r) nu(f_j^r) * scale, zero on multiples of alpha_j."""
        alpha = self.seifert.exceptional[j].alpha
        chars = 2.0 * character_sequence(self.rep, r, orbit=j, config=self.config).real
        nus = np.array([self.nu(j, int(v)) if v % alpha else 0j for v in r])
        return scale * chars * nus

    def eta_residue(self, p: int) -> EtaResidue:
        if not 1 <= p <= self.k:
            raise DomainError("eta_residue", f"p={p} not in 1..{self.k}")
        q = 2 * p - 1
        value = -(self.c_scale ** (2 * p)) * self.kappa[q] * self.dim / math.factorial(q)
        stated = self.dim * 1j * self.ell * self.kappa[q] / (math.sqrt(math.pi) * math.factorial(p - 1) * 4**p)
        return EtaResidue(p=p, value=float(value), phi_residue_stated=complex(stated))

    # ==================== Eta Invariant ====================

    def _real_result(self, value: complex, method: str, quantity: str, bound: float = 0.0) -> EtaResult:
        if abs(value.imag) > REAL_TOL:
            raise DataInconsistencyError(
                ErrorCode.IMAGINARY_RESIDUE, message_args={"quantity": quantity, "imag": value.imag, "tol": REAL_TOL}
            )
        return EtaResult(
            value=value.real, method=method, truncation_error_bound=bound, imaginary_residue=abs(value.imag)
        )

    def eta0_geo(self) -> EtaResult:
        """Bernoulli-polynomial closed form of eta(S_Q)(0)."""
        smooth = 0.0
        for x, dim in self.angles:
            for n in range(1, self.k + 1):
                smooth += dim * bernoulli_polynomial(2 * n, x) * self.kappa[2 * n - 1] / math.factorial(2 * n)
        exceptional = 0j
        for j, orbit in enumerate(self.seifert.exceptional):
            for r in range(1, orbit.alpha):
                nu = self.nu(j, r)
                u = -2j * math.pi * r / orbit.alpha
                for x, _ in self.angles:
                    chi = self._restricted_character(j, r, x)
                    if chi == 0:
                        continue
                    ratio = bernoulli_gen_ratio(u, x)
                    if is_unit(x):
                        # the lambda = 0 mode carries no sign
                        ratio -= 0.5
                    exceptional += chi * ratio * nu / orbit.alpha
        return self._real_result(2.0 * smooth + 2.0 * exceptional, "geo", "eta0_geo")

    def eta0_dyn(self) -> EtaResult:
        """Sum of the dynamical atoms of the generic and exceptional orbits, paired with their inverses."""
        total = 0j
        bound = 0.0
        generic_period = self.generic_period()
        # 1 / (l + i c) = sum_m (-i)^m c^m / l^{m+1}
        inverse = NilpotentSeries([self.ell, 1j], k=self.k).reciprocal()
        for m in range(1, 2 * self.k, 2):
            if self.kappa[m] == 0:
                continue
            part = self._dirichlet(
                lambda n: 2.0 * character_sequence(self.rep, n, config=self.config).real,
                generic_period,
                m + 1.0,
                2.0 * self.dim,
                "eta0_dyn",
            )
            scale = (self.ell / math.pi) * 1j * inverse[m] * self.kappa_physical(m)
            total += scale * part.value
            bound += abs(scale) * part.truncation_error_bound
        for j in range(len(self.seifert.exceptional)):
            try:
                part = self._dirichlet(
                    partial(self._exceptional_atoms, j, 1j / math.pi),
                    self.exceptional_period(j),
                    1.0,
                    2.0 * self.dim * self._nu_bound(j) / math.pi,
                    "eta0_dyn",
                )
            except PoleError as e:
                raise ConvergenceError("eta0_dyn", math.inf, self.config.target_abs_tol) from e
            total += part.value
            bound += part.truncation_error_bound
        return self._real_result(total, "dyn", "eta0_dyn", bound)

    def eta_from_zeta(self) -> EtaResult:
        return self._real_result(self.eta_function(0.0), "zeta_at_zero", "eta_function(0)")

    def eta_from_heat(self) -> EtaResult:
        """
        Mellin transform of the spectral eta trace at s = 0. Near t = 0 the trace is
        sum_j c_j t^{-1-j} up to an exponentially small error, with
        c_j = -dim V l(f) kappa^phys_{2j+1} / (2 sqrt(4 pi) 4^j j!).
        """
        singular = [
            -self.dim * self.ell * self.kappa_physical(2 * j + 1)
            / (2.0 * math.sqrt(4.0 * math.pi) * 4**j * math.factorial(j))
            for j in range(self.k)
        ]

        def remainder(t: float) -> float:
            return self.theta_S_top(t) - sum(c * t ** (-1 - j) for j, c in enumerate(singular))

        weight = self.dim * (np.abs(self.kappa).sum() + 1.0)
        t_low, t_high = self._heat_window(weight)
        near, near_error = self._log_quad(remainder, t_low, 1.0, "eta_from_heat")
        far, far_error = self._log_quad(self.theta_S_top, 1.0, t_high, "eta_from_heat")
        pole_part = sum(c / (1 + j) for j, c in enumerate(singular))
        value = (near + far - pole_part) / math.sqrt(math.pi)
        bound = (near_error + far_error) / math.sqrt(math.pi)
        return EtaResult(value=value, method="top", truncation_error_bound=bound)

    def eta_invariant(self, method: str = "geo") -> EtaResult:
        if method == "geo":
            return self.eta0_geo()
        if method == "dyn":
            return self.eta0_dyn()
        if method == "zeta":
            return self.eta_from_zeta()
        if method == "top":
            return self.eta_from_heat()
        raise SpectraException(ErrorCode.UNKNOWN_METHOD, message_args={"method": method, "choices": ETA_METHODS})
