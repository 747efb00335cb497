# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import math

import numpy as np
import pytest
from spectra_core import DomainError, NilpotentSeries


@pytest.mark.acceptance
def test_series_pads_to_length_2k():
    """Test that coefficients are padded to exactly 2k entries."""
    series = NilpotentSeries([1.0, 2.0], k=3)

    assert len(series) == 6
    assert series.k == 3
    assert series[1] == 2.0
    assert series[5] == 0.0


def test_series_rejects_odd_length():
    """Test that the truncation length must be even."""
    with pytest.raises(DomainError):
        NilpotentSeries([1.0, 2.0, 3.0])


def test_series_rejects_overflow():
    """Test that more than 2k coefficients are rejected."""
    with pytest.raises(DomainError):
        NilpotentSeries([1.0, 2.0, 3.0], k=1)


@pytest.mark.acceptance
def test_product_is_truncated():
    """Test (a + b c)(d + e c) = ad + (ae + bd) c at k = 1."""
    left = NilpotentSeries([2.0, 3.0])
    right = NilpotentSeries([5.0, 7.0])
    product = left * right

    assert product.allclose(NilpotentSeries([10.0, 29.0]))


def test_generator_is_nilpotent():
    """Test c^{2k} = 0."""
    c = NilpotentSeries.generator(2)
    assert (c * c * c).allclose(NilpotentSeries([0, 0, 0, 1.0]))
    assert (c * c * c * c).allclose(NilpotentSeries.constant(2, 0.0))


def test_scalar_arithmetic():
    """Test mixing series with scalars."""
    c = NilpotentSeries.generator(1)
    series = 2 + 3j * c - 1

    assert series.allclose(NilpotentSeries([1.0, 3j]))
    assert (series * 0.5).allclose(NilpotentSeries([0.5, 1.5j]))
    assert (1 - series).allclose(NilpotentSeries([0.0, -3j]))
    assert (-series).allclose(NilpotentSeries([-1.0, -3j]))


@pytest.mark.acceptance
def test_exp_matches_taylor_coefficients():
    """Test exp(z c) against the closed form sum_m z^m c^m / m!."""
    z = 0.4 - 1.3j
    series = (NilpotentSeries.generator(3) * z).exp()
    expected = [z**m / math.factorial(m) for m in range(6)]
    assert series.allclose(NilpotentSeries(expected), atol=1e-14)


def test_exp_with_constant_term():
    """Test exp(a + N) = e^a exp(N)."""
    base = NilpotentSeries([0.7, 0.2, -0.1, 0.05])
    shifted = (base + 1.5).exp()
    assert shifted.allclose(base.exp() * np.exp(1.5), atol=1e-13)


def test_exp_inverse():
    """Test exp(N) exp(-N) = 1."""
    series = NilpotentSeries([0.3, 1.0, 2.0, -0.5])
    assert (series.exp() * (-series).exp()).allclose(NilpotentSeries.constant(2, 1.0), atol=1e-13)


@pytest.mark.acceptance
def test_reciprocal_of_length_shift():
    """Test 1/(L + i c) = sum_m (-i)^m c^m / L^{m+1}."""
    length = 2.5
    series = NilpotentSeries([length, 1j], k=2).reciprocal()
    expected = [(-1j) ** m / length ** (m + 1) for m in range(4)]

    assert series.allclose(NilpotentSeries(expected), atol=1e-15)


def test_reciprocal_product_is_one():
    """Test s * (1/s) = 1."""
    series = NilpotentSeries([2.0 + 1j, -0.4, 3.0, 0.25])
    assert (series * series.reciprocal()).allclose(NilpotentSeries.constant(2, 1.0), atol=1e-14)


def test_reciprocal_requires_unit():
    """Test that a nilpotent series has no inverse."""
    with pytest.raises(DomainError):
        NilpotentSeries.generator(2).reciprocal()


def test_rescale():
    """Test c -> a c on e^{c}."""
    c = NilpotentSeries.generator(2)
    assert c.exp().rescale(3.0).allclose((c * 3.0).exp(), atol=1e-14)


def test_mismatched_k():
    """Test that series of different truncation cannot be combined."""
    with pytest.raises(DomainError):
        NilpotentSeries.generator(1) + NilpotentSeries.generator(2)
