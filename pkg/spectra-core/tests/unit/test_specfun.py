# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import cmath
import math

import mpmath
import numpy as np
import pytest
from spectra_core import DomainError, PoleError, PrecisionConfig
from spectra_core.specfun import (
    bernoulli_gen_ratio,
    bernoulli_polynomial,
    digamma,
    gamma_complex,
    gaussian_cutoff,
    hurwitz_zeta,
    hurwitz_zeta_regular,
    hurwitz_zeta_s_derivative_at_zero,
    jacobi_theta,
    lerch_at_root_of_unity,
    log_gamma,
    periodic_dirichlet_series,
)

# ==================== Bernoulli Tests ====================


@pytest.mark.acceptance
@pytest.mark.parametrize(
    "n, x, expected",
    [
        (0, 0.7, 1.0),
        (1, 0.3, -0.2),
        (2, 1.0, 1.0 / 6.0),
        (4, 1.0, -1.0 / 30.0),
        (3, 0.5, 0.0),
    ],
)
def test_bernoulli_polynomial_values(n, x, expected):
    """Test Bernoulli polynomial special values."""
    assert bernoulli_polynomial(n, x) == pytest.approx(expected, abs=1e-14)


def test_bernoulli_polynomial_reflection():
    """Test B_n(1 - x) = (-1)^n B_n(x)."""
    for n in range(12):
        for x in (0.1, 0.35, 0.8):
            assert bernoulli_polynomial(n, 1 - x) == pytest.approx((-1) ** n * bernoulli_polynomial(n, x), abs=1e-12)


def test_bernoulli_polynomial_matches_closed_form():
    """Test B_2(x) = x^2 - x + 1/6 away from the folding point."""
    for x in (0.05, 0.45, 0.9, 1.7):
        assert bernoulli_polynomial(2, x) == pytest.approx(x * x - x + 1 / 6, abs=1e-14)


def test_bernoulli_polynomial_degree_out_of_range():
    """Test that degrees above 64 are rejected."""
    with pytest.raises(DomainError):
        bernoulli_polynomial(65, 0.5)
    with pytest.raises(DomainError):
        bernoulli_polynomial(-1, 0.5)


@pytest.mark.acceptance
def test_bernoulli_gen_ratio_at_half_turn():
    """Test e^{i pi} / (e^{i pi} - 1) = 1/2."""
    assert bernoulli_gen_ratio(1j * math.pi, 1.0) == pytest.approx(0.5, abs=1e-15)


def test_bernoulli_gen_ratio_cube_root():
    """Test against direct complex arithmetic."""
    t = -2j * math.pi / 3
    expected = cmath.exp(t) / (cmath.exp(t) - 1)
    assert bernoulli_gen_ratio(t, 1.0) == pytest.approx(expected, abs=1e-14)


def test_bernoulli_gen_ratio_small_t_limit():
    """Test B(t, x)/t - 1/t -> B_1(x) at a zero of B_2."""
    x = (3 - math.sqrt(3)) / 6
    t = 1e-4
    value = bernoulli_gen_ratio(t, x) - 1 / t
    assert value.real == pytest.approx(bernoulli_polynomial(1, x), abs=1e-7)


def test_bernoulli_gen_ratio_lattice():
    """Test that t in 2 pi i Z is rejected."""
    with pytest.raises(DomainError):
        bernoulli_gen_ratio(2j * math.pi, 0.5)
    with pytest.raises(DomainError):
        bernoulli_gen_ratio(0, 0.5)


# ==================== Truncation Tests ====================


def test_gaussian_cutoff_bounds_the_tail():
    """Test that the omitted tail is below the requested tolerance."""
    for rate, degree in [(0.3, 0), (0.05, 0), (0.2, 4)]:
        n = gaussian_cutoff(rate, 1e-12, degree=degree)
        m = np.arange(n + 1, n + 400, dtype=float)
        tail = 2 * (m**degree * np.exp(-rate * m * m)).sum()
        assert tail <= 1e-12


def test_gaussian_cutoff_invalid_rate():
    """Test that a non-positive rate is rejected."""
    with pytest.raises(DomainError):
        gaussian_cutoff(0.0, 1e-12)


# ==================== Jacobi Theta Tests ====================


@pytest.mark.acceptance
def test_theta_tail_domination():
    """Test theta(1, 100) = 1 + 2e^{-100}."""
    assert jacobi_theta(1.0, 100.0) == pytest.approx(1 + 2 * math.exp(-100), abs=1e-15)


def test_theta_reflection_symmetry():
    """Test theta(x, t) = theta(1 - x, t)."""
    assert jacobi_theta(0.3, 0.7) == pytest.approx(jacobi_theta(0.7, 0.7), abs=1e-13)


@pytest.mark.acceptance
def test_theta_direct_matches_dual():
    """Test Poisson duality at (0.3, 0.5)."""
    direct = jacobi_theta(0.3, 0.5, method="direct")
    dual = jacobi_theta(0.3, 0.5, method="dual")
    assert direct == pytest.approx(dual, abs=1e-12)


@pytest.mark.acceptance
def test_theta_duality_random_points(precision):
    """Test Poisson duality on 100 random points of (0, 1] x [0.01, 100]."""
    rng = np.random.default_rng(20250101)
    xs = 1.0 - rng.random(100)
    ts = np.exp(rng.uniform(math.log(0.01), math.log(100.0), 100))
    for x, t in zip(xs, ts):
        direct = jacobi_theta(x, t, precision, method="direct")
        dual = jacobi_theta(x, t, precision, method="dual")
        assert abs(direct - dual) < 10 * precision.target_abs_tol


def test_theta_rejects_non_positive_t():
    """Test that t <= 0 is rejected."""
    with pytest.raises(DomainError):
        jacobi_theta(0.5, 0.0)


def test_theta_unknown_method():
    """Test that an unknown evaluation method is rejected."""
    with pytest.raises(DomainError):
        jacobi_theta(0.5, 1.0, method="spectral")


# ==================== Hurwitz Zeta Tests ====================


@pytest.mark.acceptance
def test_hurwitz_zeta_at_zero():
    """Test zeta(0, x) = 1/2 - x."""
    assert hurwitz_zeta(0, 0.25) == pytest.approx(0.25, abs=1e-13)


@pytest.mark.acceptance
def test_hurwitz_zeta_reduces_to_riemann():
    """Test zeta(2, 1) = pi^2 / 6."""
    assert hurwitz_zeta(2, 1.0) == pytest.approx(math.pi**2 / 6, abs=1e-12)


@pytest.mark.acceptance
def test_hurwitz_zeta_negative_integer():
    """Test zeta(-1, 1/2) = 1/24."""
    assert hurwitz_zeta(-1, 0.5) == pytest.approx(1 / 24, abs=1e-13)


@pytest.mark.acceptance
def test_hurwitz_zeta_bernoulli_values():
    """Test zeta(-p, x) = -B_{p+1}(x)/(p+1) and its reflection."""
    rng = np.random.default_rng(7)
    for x in 0.02 + 0.96 * rng.random(20):
        for p in range(10):
            left = hurwitz_zeta(-p, x)
            assert left == pytest.approx(-bernoulli_polynomial(p + 1, x) / (p + 1), abs=1e-10)
            pair = left + hurwitz_zeta(-p, 1 - x)
            expected = 0.0 if p % 2 == 0 else -2 * bernoulli_polynomial(p + 1, x) / (p + 1)
            assert pair == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize(
    "s, x",
    [
        (0.3 + 2j, 0.4),
        (-1.7 + 0.5j, 0.9),
        (3.5, 0.05),
        (-2.6, 0.3),
        (0.5 + 20j, 1.0),
    ],
)
def test_hurwitz_zeta_matches_mpmath(s, x):
    """Test the Euler-Maclaurin continuation against mpmath."""
    expected = complex(mpmath.zeta(s, x))
    assert hurwitz_zeta(s, x) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_hurwitz_zeta_far_left():
    """Test stability far to the left of the critical strip."""
    expected = complex(mpmath.zeta(-9.8, 0.3))
    assert hurwitz_zeta(-9.8, 0.3) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize(
    "s, x",
    [
        (-20.5, 0.3),
        (-30 + 5j, 0.7),
        (-12 + 3j, 0.05),
        (-4.5 + 1.5j, 0.95),
        (-7.0, 1.0),
    ],
)
def test_hurwitz_zeta_left_half_plane(s, x):
    """Test the functional-equation branch against mpmath in relative terms."""
    expected = complex(mpmath.zeta(s, x))
    assert hurwitz_zeta(s, x) == pytest.approx(expected, rel=1e-10)


def test_hurwitz_zeta_continuous_across_branches():
    """Test that both evaluation branches agree on either side of Re s = -4."""
    for x in (0.1, 0.5, 0.85):
        for s in (-3.999 + 2j, -4.001 + 2j):
            expected = complex(mpmath.zeta(s, x))
            assert hurwitz_zeta(s, x) == pytest.approx(expected, rel=1e-10)


def test_lerch_left_half_plane():
    """Test the Lerch split far left of the origin against the mpmath Lerch transcendent."""
    s = -9.5 + 1j
    expected = complex(mpmath.lerchphi(mpmath.exp(2j * mpmath.pi / 3), s, 0.4))
    assert lerch_at_root_of_unity(1, 3, s, 0.4) == pytest.approx(expected, rel=1e-9)


def test_hurwitz_zeta_pole_and_domain():
    """Test the pole at s = 1 and the domain of x."""
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0.0)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 1.5)


def test_hurwitz_zeta_residue_at_one():
    """Test that (s - 1) zeta(s, x) -> 1."""
    h = 1e-6
    value = 0.5 * (h * hurwitz_zeta(1 + h, 0.3) - h * hurwitz_zeta(1 - h, 0.3))
    assert value == pytest.approx(1.0, abs=1e-10)


def test_hurwitz_zeta_regular_at_pole():
    """Test zeta(s, x) - 1/(s-1) = -digamma(x) at s = 1."""
    assert hurwitz_zeta_regular(1, 0.3) == pytest.approx(-digamma(0.3), abs=1e-12)


def test_hurwitz_zeta_regular_near_pole():
    """Test continuity of the regular part next to the pole."""
    s = 1 + 1e-6
    assert hurwitz_zeta_regular(s, 0.7) == pytest.approx(hurwitz_zeta(s, 0.7) - 1 / (s - 1), abs=1e-8)


def test_hurwitz_zeta_respects_euler_maclaurin_depth():
    """Test that a shallow correction still meets a loose tolerance."""
    config = PrecisionConfig(euler_maclaurin_terms=4)
    assert hurwitz_zeta(2, 1.0, config) == pytest.approx(math.pi**2 / 6, abs=1e-9)


# ==================== Lerch Derivative Formula Tests ====================


@pytest.mark.acceptance
def test_hurwitz_derivative_at_one():
    """Test zeta'(0) = -ln(2 pi) / 2."""
    assert hurwitz_zeta_s_derivative_at_zero(1.0) == pytest.approx(-0.5 * math.log(2 * math.pi), abs=1e-14)


@pytest.mark.acceptance
def test_hurwitz_derivative_at_half():
    """Test d/ds zeta(s, 1/2) at 0 = -ln(2) / 2."""
    assert hurwitz_zeta_s_derivative_at_zero(0.5) == pytest.approx(-0.5 * math.log(2), abs=1e-14)


@pytest.mark.acceptance
def test_hurwitz_derivative_pair_identity():
    """Test value(x) + value(1 - x) = -ln(2 sin(pi x))."""
    x = 0.25
    total = hurwitz_zeta_s_derivative_at_zero(x) + hurwitz_zeta_s_derivative_at_zero(1 - x)
    assert total == pytest.approx(-math.log(2 * math.sin(math.pi * x)), abs=1e-14)


def test_hurwitz_derivative_matches_finite_difference():
    """Test the closed form against a central difference of hurwitz_zeta."""
    h = 1e-5
    difference = (hurwitz_zeta(h, 0.37) - hurwitz_zeta(-h, 0.37)) / (2 * h)
    assert difference.real == pytest.approx(hurwitz_zeta_s_derivative_at_zero(0.37), abs=1e-8)


# ==================== Lerch Zeta Tests ====================


@pytest.mark.acceptance
def test_lerch_at_zero():
    """Test L(z, 0, x) = 1 / (1 - z)."""
    z = cmath.exp(2j * math.pi / 3)
    assert lerch_at_root_of_unity(1, 3, 0, 0.5) == pytest.approx(1 / (1 - z), abs=1e-12)


@pytest.mark.acceptance
def test_lerch_alternating():
    """Test L(-1, 2, 1) = pi^2 / 12."""
    assert lerch_at_root_of_unity(1, 2, 2, 1.0) == pytest.approx(math.pi**2 / 12, abs=1e-12)


@pytest.mark.acceptance
def test_lerch_matches_direct_sum():
    """Test L(i, 3, 1/2) against brute-force partial sums."""
    n = np.arange(2_000_000, dtype=float)
    direct = (np.power(1j, np.arange(2_000_000) % 4) / (n + 0.5) ** 3).sum()
    assert lerch_at_root_of_unity(1, 4, 3, 0.5) == pytest.approx(direct, abs=1e-10)


@pytest.mark.acceptance
@pytest.mark.parametrize("s", [2.0, 2.0 + 1.5j])
def test_lerch_matches_direct_series_for_small_orders(s):
    """Test every alpha <= 12 and every valid r on Re s = 2."""
    n = np.arange(1_000_000)
    weights = np.exp(-s * np.log(n + 0.3))
    for alpha in range(2, 13):
        for r in range(1, alpha):
            phases = np.exp(2j * math.pi * ((r * n) % alpha) / alpha)
            direct = np.dot(phases, weights)
            assert lerch_at_root_of_unity(r, alpha, s, 0.3) == pytest.approx(direct, abs=1e-10)


def test_lerch_finite_at_one():
    """Test that the Hurwitz poles cancel at s = 1."""
    assert lerch_at_root_of_unity(1, 2, 1, 1.0) == pytest.approx(math.log(2), abs=1e-12)


def test_lerch_rejects_trivial_root():
    """Test that r divisible by alpha is rejected."""
    with pytest.raises(DomainError):
        lerch_at_root_of_unity(3, 3, 2, 0.5)
    with pytest.raises(DomainError):
        lerch_at_root_of_unity(1, 1, 2, 0.5)


# ==================== Periodic Dirichlet Series Tests ====================


def test_periodic_series_constant_coefficients():
    """Test that period one reproduces the Riemann zeta function."""
    assert periodic_dirichlet_series([1.0], 2) == pytest.approx(math.pi**2 / 6, abs=1e-12)
    assert periodic_dirichlet_series([1.0], -1) == pytest.approx(-1 / 12, abs=1e-12)


def test_periodic_series_alternating():
    """Test the alternating harmonic and square series."""
    assert periodic_dirichlet_series([1.0, -1.0], 1) == pytest.approx(math.log(2), abs=1e-12)
    assert periodic_dirichlet_series([1.0, -1.0], 2) == pytest.approx(math.pi**2 / 12, abs=1e-12)


def test_periodic_series_pole():
    """Test that a non-zero mean at a = 1 is a pole."""
    with pytest.raises(PoleError):
        periodic_dirichlet_series([1.0, 1.0], 1)


def test_periodic_series_empty():
    """Test that an empty coefficient list sums to zero."""
    assert periodic_dirichlet_series([], 2) == 0


# ==================== Gamma Tests ====================


@pytest.mark.acceptance
def test_gamma_half():
    """Test Gamma(1/2) = sqrt(pi)."""
    assert gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.acceptance
def test_gamma_recurrence():
    """Test Gamma(s + 1) = s Gamma(s)."""
    s = 0.3 + 2j
    assert gamma_complex(s + 1) == pytest.approx(s * gamma_complex(s), rel=1e-12)


@pytest.mark.acceptance
def test_gamma_duplication():
    """Test Gamma(s) Gamma(s + 1/2) = 2^{1-2s} sqrt(pi) Gamma(2s)."""
    s = 0.7
    left = gamma_complex(s) * gamma_complex(s + 0.5)
    right = 2 ** (1 - 2 * s) * math.sqrt(math.pi) * gamma_complex(2 * s)
    assert left == pytest.approx(right, rel=1e-12)


@pytest.mark.acceptance
@pytest.mark.parametrize("s", [0.3, -2.5, 4.25 + 1j, -6.7 - 3.5j, 0.1 + 9j])
def test_gamma_reflection(s):
    """Test Gamma(s) Gamma(1 - s) sin(pi s) = pi."""
    value = gamma_complex(s) * gamma_complex(1 - s) * cmath.sin(math.pi * s)
    assert value == pytest.approx(math.pi, rel=1e-11)


@pytest.mark.parametrize("s", [9.5 + 9.5j, 2.25 - 10j, 0.75 + 0.5j, 6.0])
def test_gamma_matches_mpmath(s):
    """Test relative accuracy on the strip |Re s|, |Im s| <= 10."""
    assert gamma_complex(s) == pytest.approx(complex(mpmath.gamma(s)), rel=1e-13)


def test_gamma_poles():
    """Test that non-positive integers raise the pole error."""
    for s in (0, -1, -3.0):
        with pytest.raises(PoleError):
            gamma_complex(s)
    with pytest.raises(PoleError):
        log_gamma(-2)


def test_log_gamma_value():
    """Test ln Gamma(5) = ln 24."""
    assert log_gamma(5) == pytest.approx(math.log(24), abs=1e-14)
