# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import math

import pytest
from contact_spectra.eta import EtaCalculator
from contact_spectra.model import (
    ExceptionalOrbit,
    SeifertData,
    hopf_example,
    trivial_representation,
)
from spectra_core import (
    DataInconsistencyError,
    DomainError,
    NilpotentSeries,
    PoleError,
    SpectraException,
    ValidationFailure,
)

T_GRID = [0.1, 0.5, 1.0, 4.0]


def _single_orbit(alpha, rotation_numbers, k=1, kappa=None):
    seifert = SeifertData(
        chi_n_star=1,
        k=k,
        kappa=kappa or {m: 0.0 for m in range(1, 2 * k, 2)},
        exceptional=(ExceptionalOrbit(alpha=alpha, rotation_numbers=rotation_numbers),),
    )
    return EtaCalculator(seifert, trivial_representation(seifert))


@pytest.fixture
def exceptional_calc(exceptional):
    return EtaCalculator(*exceptional)


@pytest.fixture
def higher_calc(higher_dimensional):
    return EtaCalculator(*higher_dimensional)


# ==================== Input Tests ====================


def test_eta_data_required():
    """Test that eta invariants refuse data without k or kappa."""
    seifert = SeifertData(chi_n_star=2)
    with pytest.raises(ValidationFailure, match="ETA_DATA_MISSING"):
        EtaCalculator(seifert, trivial_representation(seifert))


# ==================== Lefschetz Factor Tests ====================


@pytest.mark.acceptance
def test_nu_values():
    """Test i (-1)^k prod cot(pi r beta / alpha) on small examples."""
    calc = _single_orbit(4, (1,))
    assert calc.nu(0, 1) == pytest.approx(-1j, abs=1e-14)
    assert calc.nu(0, 3) == pytest.approx(1j, abs=1e-14)
    assert calc.nu(0, 5) == calc.nu(0, 1)
    assert _single_orbit(2, (1,)).nu(0, 1) == 0j


def test_nu_exact_zero_at_quarter_turn():
    """Test that a factor cot(pi / 2) makes the whole product exactly zero."""
    calc = _single_orbit(4, (1, 3, 1), k=2)
    assert calc.nu(0, 2) == 0j
    assert calc.nu(0, 1) != 0


def test_lefschetz_factors_built_at_construction(exceptional_calc):
    """Test that every factor is tabulated before any evaluation runs."""
    assert sorted(exceptional_calc._nu_table) == [(0, 1), (0, 2)]


def test_nu_is_odd_in_r():
    calc = _single_orbit(5, (1, 2, 3), k=2)
    for r in (1, 2, 3, 4, 7):
        assert calc.nu(0, -r) == pytest.approx(-calc.nu(0, r), abs=1e-12)


def test_nu_rejects_multiples_of_alpha():
    with pytest.raises(DomainError):
        _single_orbit(3, (1,)).nu(0, 6)


def test_kappa_pair():
    """Test that only odd coefficients pair with the pairings."""
    seifert, rep = hopf_example(kappa_1=2.0)
    calc = EtaCalculator(seifert, rep)
    assert calc.kappa_pair(NilpotentSeries([5.0, 3.0], k=1)) == pytest.approx(6.0)
    with pytest.raises(DomainError):
        calc.kappa_pair(NilpotentSeries.generator(2))


def test_kappa_pair_physical_units():
    """Test that c is rescaled by l(f) / 2 pi before pairing."""
    calc = EtaCalculator(*hopf_example(kappa_1=1.0, fiber_length=1.0))
    assert calc.kappa_pair_physical(NilpotentSeries.generator(1)) == pytest.approx(1.0 / (2.0 * math.pi))
    assert calc.kappa_physical(1) == pytest.approx(1.0 / (2.0 * math.pi))


# ==================== Index Tests ====================


@pytest.mark.acceptance
def test_index_exceptional(exceptional_calc):
    """Test the rounded signature index of the order-3 example."""
    assert exceptional_calc.index_sig(1.0) == 0
    assert exceptional_calc.index_sig(2.0) == 1
    assert exceptional_calc.index_sig(3.0) == 1


@pytest.mark.acceptance
def test_index_higher_dimensional(higher_calc):
    """Test ind = (lambda^3 - lambda) / 6 for k = 2."""
    for lam in range(-4, 5):
        assert higher_calc.index_sig(float(lam)) == (lam**3 - lam) // 6


def test_index_integrality_violation():
    """Test that a pairing no circle bundle realises breaks integrality."""
    calc = EtaCalculator(*hopf_example(kappa_1=0.37))
    with pytest.raises(DataInconsistencyError, match="INDEX_INTEGRALITY"):
        calc.index_sig(1.0)
    assert calc.index_sig(1.0, strict=False) == pytest.approx(0.37)


# ==================== Eta Trace Tests ====================


@pytest.mark.acceptance
@pytest.mark.parametrize("example", ["hopf", "exceptional", "higher_dimensional"])
def test_eta_trace_forms_agree(example, request):
    """Test that the spectral and orbit forms of the eta trace coincide."""
    calc = EtaCalculator(*request.getfixturevalue(example))
    for t in T_GRID:
        assert calc.theta_S_dyn(t) == pytest.approx(calc.theta_S_top(t), abs=1e-9)


def test_eta_trace_grid(exceptional_calc):
    values = exceptional_calc.theta_S_grid(T_GRID, "top")
    assert values == [exceptional_calc.theta_S_top(t) for t in T_GRID]
    with pytest.raises(SpectraException, match="UNKNOWN_METHOD"):
        exceptional_calc.theta_S(1.0, "geo")


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_chern_character_dual_forms(parity, exceptional_calc):
    """Test the Poisson dual of the regularised Chern characters."""
    for t in (0.3, 2.0):
        spectral = exceptional_calc.ch_theta(parity, t)
        dual = exceptional_calc.ch_theta(parity, t, mode="dual")
        assert spectral.allclose(dual, atol=1e-9)
        for r in (1, 2, 4):
            assert exceptional_calc.ch_theta(parity, t, site=(0, r)) == pytest.approx(
                exceptional_calc.ch_theta(parity, t, site=(0, r), mode="dual"), abs=1e-9
            )


def test_chern_character_argument_checks(exceptional_calc):
    with pytest.raises(DomainError):
        exceptional_calc.ch_theta("mixed", 1.0)
    with pytest.raises(DomainError):
        exceptional_calc.ch_theta("even", 1.0, site=(0, 3))
    with pytest.raises(SpectraException, match="ORBIT_INDEX"):
        exceptional_calc.ch_theta("even", 1.0, site=(2, 1))


# ==================== Eta Function Tests ====================


@pytest.mark.acceptance
@pytest.mark.parametrize("d", [-3, -2, -1, 1, 2, 3])
def test_hopf_residue_and_pole(d):
    """Test Res_{s=1} eta = -d and the pole itself."""
    calc = EtaCalculator(*hopf_example(kappa_1=float(d)))
    residue = calc.eta_residue(1)
    assert residue.value == pytest.approx(-d)
    assert residue.phi_residue_stated == pytest.approx(1j * 2.0 * math.pi * d / (4.0 * math.sqrt(math.pi)))
    with pytest.raises(PoleError):
        calc.eta_function(1.0)
    h = 1e-6
    assert (h * calc.eta_function(1.0 + h)).real == pytest.approx(-d, rel=1e-4)


def test_residue_index_range(hopf):
    with pytest.raises(DomainError):
        EtaCalculator(*hopf).eta_residue(2)


def test_no_pole_without_pairing():
    """Test that eta(s) is regular at s = 1 when kappa_1 = 0."""
    calc = _single_orbit(3, (1,))
    value = calc.eta_function(1.0)
    assert math.isfinite(value.real)
    assert calc.eta_residue(1).value == 0.0


@pytest.mark.parametrize("example", ["hopf", "exceptional"])
def test_eta_function_orbit_form(example, request):
    """Test that the orbit-sum continuation agrees with the spectral one."""
    calc = EtaCalculator(*request.getfixturevalue(example))
    for s in (0.25, -0.7 + 0.4j, 0.8 + 1.5j):
        assert calc.eta_function_dynamical(s) == pytest.approx(calc.eta_function(s), abs=1e-8)


# ==================== Eta Invariant Tests ====================


@pytest.mark.acceptance
@pytest.mark.parametrize("d", [-3, -2, -1, 0, 1, 2, 3])
def test_hopf_eta_invariant(d):
    """Test eta(0) = d / 6 by the closed form, the orbit sum and the continuation."""
    calc = EtaCalculator(*hopf_example(kappa_1=float(d)))
    for method in ("geo", "dyn", "zeta"):
        result = calc.eta_invariant(method)
        assert result.value == pytest.approx(d / 6.0, abs=1e-10)
        assert result.imaginary_residue < 1e-10


@pytest.mark.acceptance
def test_exceptional_eta_invariant(exceptional_calc):
    """Test eta(0) = 1/18 + 2/9 for the order-3 fiber."""
    for method in ("geo", "dyn", "zeta"):
        assert exceptional_calc.eta_invariant(method).value == pytest.approx(5.0 / 18.0, abs=1e-9)


@pytest.mark.acceptance
def test_higher_dimensional_eta_invariant(higher_calc):
    """Test eta(0) = 2 [B_2(1) kappa_1 / 2 + B_4(1) kappa_3 / 24] = -11/360."""
    for method in ("geo", "dyn", "zeta"):
        assert higher_calc.eta_invariant(method).value == pytest.approx(-11.0 / 360.0, abs=1e-9)


def test_top_degree_pairing_only():
    """Test eta(0) = -e / 360 for k = 2 with kappa_1 = 0 and kappa_3 = e."""
    seifert = SeifertData(chi_n_star=2, k=2, kappa={1: 0.0, 3: math.e})
    calc = EtaCalculator(seifert, trivial_representation(seifert))
    assert calc.eta0_geo().value == pytest.approx(-math.e / 360.0, abs=1e-12)
    assert calc.eta_from_zeta().value == pytest.approx(-math.e / 360.0, abs=1e-10)


def test_eta_invariant_from_heat_trace(hopf, exceptional):
    """Test the Mellin transform of the eta trace against the closed form."""
    for data in (hopf, exceptional):
        calc = EtaCalculator(*data)
        assert calc.eta_invariant("top").value == pytest.approx(calc.eta0_geo().value, abs=1e-6)


def test_unknown_eta_method(hopf):
    with pytest.raises(SpectraException, match="UNKNOWN_METHOD"):
        EtaCalculator(*hopf).eta_invariant("aps")
