# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
Scalar special functions used by every spectral invariant.

All functions are pure: they depend only on their arguments and on a
read-only :class:`PrecisionConfig`.
"""

import math
from functools import lru_cache
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from .config import DEFAULT_PRECISION, PrecisionConfig
from .utils.exceptions import ConvergenceError, DomainError, PoleError
from .utils.loggings import get_logger

logger = get_logger(__name__)

Number = Union[int, float, complex]

BERNOULLI_MAX_DEGREE = 64
THETA_CROSSOVER = 1.0
REFLECTION_ABSCISSA = -4.0
_EPS = np.finfo(float).eps
_TWO_PI = 2.0 * math.pi


def _precision(config: Optional[PrecisionConfig]) -> PrecisionConfig:
    return DEFAULT_PRECISION if config is None else config


# ==================== Bernoulli ====================


@lru_cache(maxsize=None)
def _bernoulli_coefficients(n: int) -> np.ndarray:
    """Monomial coefficients of B_n, highest degree first."""
    bernoulli = special.bernoulli(n)
    k = np.arange(n + 1)
    binom = special.binom(n, k)
    return binom[::-1] * bernoulli


def bernoulli_polynomial(n: int, x: float) -> float:
    """Bernoulli polynomial B_n(x) for 0 <= n <= 64."""
    if not isinstance(n, (int, np.integer)) or n < 0 or n > BERNOULLI_MAX_DEGREE:
        raise DomainError("bernoulli_polynomial", f"degree n={n} not in [0, {BERNOULLI_MAX_DEGREE}]")
    n = int(n)
    coeffs = _bernoulli_coefficients(n)
    x = float(x)
    # B_n(1-x) = (-1)^n B_n(x) keeps the evaluation point in [0, 1/2]
    if 0.5 < x <= 1.0:
        value = float(np.polyval(coeffs, 1.0 - x))
        return -value if n % 2 == 1 else value
    return float(np.polyval(coeffs, x))


def bernoulli_gen_ratio(t: Number, x: float) -> complex:
    """B(t, x) / t = e^{tx} / (e^t - 1)."""
    t = complex(t)
    if abs(t.real) < 1e-14 and abs(t.imag / _TWO_PI - round(t.imag / _TWO_PI)) * _TWO_PI < 1e-14:
        raise DomainError("bernoulli_gen_ratio", f"t={t} lies on the lattice 2*pi*i*Z")
    return complex(np.exp(t * x) / np.expm1(t))


@lru_cache(maxsize=None)
def _even_bernoulli_over_factorial(m_terms: int) -> np.ndarray:
    """B_{2j} / (2j)! for j = 1..m_terms."""
    numbers = special.bernoulli(2 * m_terms)
    j = np.arange(1, m_terms + 1)
    return numbers[2 * j] / special.factorial(2 * j)


# ==================== Truncation ====================


def gaussian_cutoff(
    rate: float,
    tol: float,
    guard: float = 1.0,
    degree: int = 0,
    max_terms: int = DEFAULT_PRECISION.max_terms,
) -> int:
    """
    Truncation index N such that the two-sided tail sum_{|m| > N} |m|^degree e^{-rate m^2}
    is below tol / guard.

    The bound is the first omitted term times a geometric ratio correction; N is
    kept past the maximum of m^degree e^{-rate m^2} so the terms decrease.
    """
    if rate <= 0:
        raise DomainError("gaussian_cutoff", f"rate={rate} must be positive")
    target = tol / guard
    n = max(0, int(math.ceil(math.sqrt(degree / (2.0 * rate)))) if degree else 0)
    estimate = int(math.sqrt(max(math.log(2.0 / target), 0.0) / rate))
    n = max(n, estimate - 2)
    log_first = math.inf
    while n <= max_terms:
        m = n + 1
        log_first = degree * math.log(m) - rate * m * m
        ratio = ((m + 1) / m) ** degree * math.exp(-rate * (2 * m + 1))
        if ratio < 1:
            log_bound = math.log(2.0) + log_first - math.log1p(-ratio)
            if log_bound <= math.log(target):
                return n
        n += 1
    raise ConvergenceError("gaussian_cutoff", math.exp(log_first), tol)


# ==================== Jacobi theta ====================


def _theta_direct(x: float, t: float, tol: float, guard: float, max_terms: int) -> float:
    cutoff = gaussian_cutoff(t, tol, guard, max_terms=max_terms)
    n = np.arange(-cutoff - 1, cutoff + 2)
    return float(np.exp(-t * (n + x) ** 2).sum())


def _theta_dual(x: float, t: float, tol: float, guard: float, max_terms: int) -> float:
    prefactor = math.sqrt(math.pi / t)
    rate = math.pi**2 / t
    cutoff = gaussian_cutoff(rate, tol / prefactor, guard, max_terms=max_terms)
    n = np.arange(1, cutoff + 2)
    tail = (np.cos(_TWO_PI * n * x) * np.exp(-rate * n * n)).sum()
    return float(prefactor * (1.0 + 2.0 * tail))


def jacobi_theta(
    x: float,
    t: float,
    config: Optional[PrecisionConfig] = None,
    method: Literal["auto", "direct", "dual"] = "auto",
) -> float:
    """
    theta(x, t) = sum_{n in Z} e^{-t (n + x)^2}.

    ``auto`` sums directly for t >= 1 and uses the Poisson dual
    sqrt(pi/t) sum_n e^{2 i pi n x} e^{-pi^2 n^2 / t} below.
    """
    if not t > 0:
        raise DomainError("jacobi_theta", f"t={t} must be positive")
    config = _precision(config)
    x = float(x) - math.floor(float(x))
    if method == "auto":
        method = "direct" if t >= THETA_CROSSOVER else "dual"
    args = (x, float(t), config.target_abs_tol, config.series_guard_factor, config.max_terms)
    if method == "direct":
        return _theta_direct(*args)
    if method == "dual":
        return _theta_dual(*args)
    raise DomainError("jacobi_theta", f"unknown method '{method}'")


# ==================== Hurwitz zeta ====================


def _pochhammer_abs(s: complex, length: int) -> float:
    return float(np.prod(np.abs(s + np.arange(length))))


def _leading_terms(s: complex, a_min: float, m_terms: int) -> int:
    """Number N of explicitly summed terms before the Euler-Maclaurin tail."""
    standard = max(15, int(math.ceil(abs(s.imag))))
    if s.real >= 0:
        return standard
    # Partial sums grow like N^{1-Re s}; take the smallest N whose remainder
    # estimate sits below that rounding floor.
    poch = _pochhammer_abs(s, 2 * m_terms + 1)
    if poch == 0.0:
        return 1
    scale = (2.0 * poch / _EPS) ** (1.0 / (2 * m_terms + 2)) / _TWO_PI
    return max(1, int(math.ceil(scale - a_min)))


def _hurwitz_em(
    s: complex,
    a: np.ndarray,
    m_terms: int,
    regular: bool,
) -> np.ndarray:
    """
    Euler-Maclaurin evaluation of zeta(s, a) for an array of shifts a > 0.

    With ``regular`` the pole part 1/(s-1) is removed analytically, which keeps
    the value finite at s = 1.
    """
    a = np.asarray(a, dtype=float)
    n_lead = _leading_terms(s, float(a.min()), m_terms)
    n = np.arange(n_lead, dtype=float)
    base = a[:, None] + n[None, :]
    partial = np.exp(-s * np.log(base)).sum(axis=1)

    b = a + n_lead
    log_b = np.log(b)
    if regular:
        u = (1.0 - s) * log_b
        small = np.abs(u) < 1e-8
        safe_u = np.where(small, 1.0, u)
        phi = np.where(small, 1.0 + u / 2.0, np.expm1(safe_u) / safe_u)
        pole_part = -log_b * phi
    else:
        pole_part = np.exp((1.0 - s) * log_b) / (s - 1.0)
    half = 0.5 * np.exp(-s * log_b)

    coefficients = _even_bernoulli_over_factorial(m_terms)
    correction = np.zeros_like(partial)
    poch = s
    power = np.exp((-s - 1.0) * log_b)
    inv_b2 = 1.0 / (b * b)
    for j in range(1, m_terms + 1):
        correction = correction + coefficients[j - 1] * poch * power
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        power = power * inv_b2
    return partial + pole_part + half + correction


def _periodic_zeta_pair(u: complex, a: np.ndarray, max_terms: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    sum_{n >= 1} e^{+-2 i pi n a} n^{-u} for Re u > 1, truncated where the tail bound
    N^{1 - Re u} / (Re u - 1) falls below machine epsilon.
    """
    sigma = u.real
    cutoff = int(math.ceil(((sigma - 1.0) * _EPS) ** (-1.0 / (sigma - 1.0))))
    if cutoff > max_terms:
        raise ConvergenceError("hurwitz_zeta", max_terms ** (1.0 - sigma) / (sigma - 1.0), _EPS)
    n = np.arange(1, cutoff + 1, dtype=float)
    weights = np.exp(-u * np.log(n))
    forward = np.empty(len(a), dtype=complex)
    backward = np.empty(len(a), dtype=complex)
    for i, shift in enumerate(a):
        phases = np.exp(2j * math.pi * np.mod(n * shift, 1.0))
        forward[i] = np.dot(phases, weights)
        backward[i] = np.dot(np.conj(phases), weights)
    return forward, backward


def _hurwitz_functional(s: complex, a: np.ndarray, max_terms: int, regular: bool) -> np.ndarray:
    """
    zeta(s, a) for Re s < 0 from the Hurwitz functional equation with u = 1 - s:
    zeta(1 - u, a) = Gamma(u) (2 pi)^{-u} [e^{-i pi u / 2} F(a, u) + e^{i pi u / 2} F(-a, u)].
    """
    a = np.asarray(a, dtype=float)
    u = 1.0 - s
    forward, backward = _periodic_zeta_pair(u, a, max_terms)
    log_scale = complex(special.loggamma(u)) - u * math.log(_TWO_PI)
    value = np.exp(log_scale - 0.5j * math.pi * u) * forward + np.exp(log_scale + 0.5j * math.pi * u) * backward
    if regular:
        value = value - 1.0 / (s - 1.0)
    return value


def _hurwitz(s: complex, a: np.ndarray, config: PrecisionConfig, regular: bool) -> np.ndarray:
    if s.real < REFLECTION_ABSCISSA:
        return _hurwitz_functional(s, a, config.max_terms, regular)
    return _hurwitz_em(s, a, config.euler_maclaurin_terms, regular)


def _check_shift(function: str, x: float) -> float:
    x = float(x)
    if not 0.0 < x <= 1.0:
        raise DomainError(function, f"x={x} not in (0, 1]")
    return x


def hurwitz_zeta(s: Number, x: float, config: Optional[PrecisionConfig] = None) -> complex:
    """Analytic continuation of sum_{n >= 0} (n + x)^{-s}; simple pole at s = 1."""
    s = complex(s)
    x = _check_shift("hurwitz_zeta", x)
    if s == 1:
        raise PoleError("hurwitz_zeta", s)
    config = _precision(config)
    return complex(_hurwitz(s, np.array([x]), config, regular=False)[0])


def hurwitz_zeta_regular(s: Number, x: float, config: Optional[PrecisionConfig] = None) -> complex:
    """zeta(s, x) - 1/(s - 1), entire in s; equals -digamma(x) at s = 1."""
    s = complex(s)
    x = _check_shift("hurwitz_zeta_regular", x)
    config = _precision(config)
    return complex(_hurwitz(s, np.array([x]), config, regular=True)[0])


def hurwitz_zeta_s_derivative_at_zero(x: float) -> float:
    """d/ds zeta(s, x) at s = 0, i.e. ln Gamma(x) - ln(2 pi) / 2."""
    x = _check_shift("hurwitz_zeta_s_derivative_at_zero", x)
    return float(special.gammaln(x) - 0.5 * math.log(_TWO_PI))


def digamma(x: float) -> float:
    return float(special.digamma(x))


# ==================== Lerch zeta ====================


def lerch_at_root_of_unity(
    r: int,
    alpha: int,
    s: Number,
    x: float,
    config: Optional[PrecisionConfig] = None,
) -> complex:
    """
    L(e^{2 i pi r / alpha}, s, x) = sum_{n >= 0} e^{2 i pi r n / alpha} (n + x)^{-s}.

    Split into alpha Hurwitz terms of argument (m + x) / alpha. The pole parts
    cancel exactly because the roots of unity sum to zero, so only the regular
    parts are combined.
    """
    alpha = int(alpha)
    if alpha < 2:
        raise DomainError("lerch_at_root_of_unity", f"alpha={alpha} must be at least 2")
    if int(r) % alpha == 0:
        raise DomainError("lerch_at_root_of_unity", f"r={r} is divisible by alpha={alpha}")
    s = complex(s)
    x = _check_shift("lerch_at_root_of_unity", x)
    config = _precision(config)
    m = np.arange(alpha)
    phases = np.exp(2j * math.pi * ((int(r) * m) % alpha) / alpha)
    regular = _hurwitz(s, (m + x) / alpha, config, regular=True)
    return complex(np.exp(-s * math.log(alpha)) * np.dot(phases, regular))


# ==================== Periodic Dirichlet series ====================


def periodic_dirichlet_series(
    coefficients: Sequence[Number],
    a: Number,
    config: Optional[PrecisionConfig] = None,
) -> complex:
    """
    sum_{n >= 1} c_n n^{-a} for coefficients of period Q = len(coefficients),
    ``coefficients[q - 1] = c_q``.

    Evaluated as Q^{-a} sum_q c_q zeta(a, q / Q), which continues the series
    analytically. At a = 1 the coefficients must have zero mean.
    """
    c = np.asarray(coefficients, dtype=complex)
    period = len(c)
    if period == 0:
        return 0j
    a = complex(a)
    config = _precision(config)
    total = c.sum()
    scale = float(np.abs(c).sum())
    has_pole = abs(total) > 1e-12 * max(scale, 1.0)
    if has_pole and a == 1:
        raise PoleError("periodic_dirichlet_series", a)
    shifts = np.arange(1, period + 1) / period
    regular = _hurwitz(a, shifts, config, regular=True)
    value = np.dot(c, regular)
    if has_pole:
        value = value + total / (a - 1.0)
    logger.debug(f"periodic Dirichlet series: period={period}, a={a}, pole={'yes' if has_pole else 'no'}")
    return complex(np.exp(-a * math.log(period)) * value)


# ==================== Gamma ====================


def _check_gamma_pole(function: str, s: complex) -> None:
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        raise PoleError(function, s)


def log_gamma(s: Number) -> complex:
    """Principal branch of ln Gamma(s)."""
    s = complex(s)
    _check_gamma_pole("log_gamma", s)
    return complex(special.loggamma(s))


def gamma_complex(s: Number) -> complex:
    """Gamma(s) for complex s, with the reflection formula on Re s < 1/2."""
    s = complex(s)
    _check_gamma_pole("gamma_complex", s)
    if s.real >= 0.5:
        return complex(np.exp(special.loggamma(s)))
    reflected = complex(np.exp(special.loggamma(1.0 - s)))
    return complex(math.pi / (np.sin(math.pi * s) * reflected))
