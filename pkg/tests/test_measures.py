import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geamkit.errors import RangeViolation
from geamkit.geam import design_params
from geamkit.measures import (
    born_probabilities,
    bz_direct,
    bz_extremes,
    bz_formulas,
    coherence_formula,
    index_of_coincidence,
    ioc_formula,
    max_coherence,
    measure_report,
    quantum_uncertainty,
    renyi_bound,
    renyi_entropy,
    shannon_entropy,
    skew_information,
    tsallis_bound,
    tsallis_entropy,
)
from geamkit.presets import preset
from geamkit.states import random_mixed, random_pure


def _ket0(d):
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = 1
    return rho


def test_shannon_for_qubit_mub(mub2):
    p = born_probabilities(mub2, _ket0(2))
    assert shannon_entropy(p) == pytest.approx(np.log(3) / 3 + 2 * np.log(6) / 3, abs=1e-14)


def test_ioc_formula_value(sic2):
    params = design_params(sic2)
    assert ioc_formula(params, 0.75, 2) == pytest.approx(0.2916666666666667, abs=1e-15)
    with pytest.raises(RangeViolation):
        ioc_formula(params, 0.3, 2)


@pytest.mark.parametrize("name,d", [("mub", 3), ("sic", 3), ("mum", 4), ("gsic", 2)])
def test_ioc_and_bz_routes_agree(name, d):
    geam = preset(name, d)
    params = design_params(geam)
    for seed in range(10):
        rho = random_mixed(d, seed=seed).matrix
        purity = np.vdot(rho, rho).real
        assert index_of_coincidence(geam, rho) == pytest.approx(ioc_formula(params, purity, d), abs=1e-12)
        assert np.allclose(bz_direct(geam, rho), bz_formulas(params, purity, d), atol=1e-12)


def test_bz_extremes(sic2):
    params = design_params(sic2)
    v_min, v_max = bz_extremes(params, 2)
    assert bz_formulas(params, 1.0, 2)[0] == pytest.approx(v_min)
    assert bz_formulas(params, 0.5, 2)[0] == pytest.approx(v_max)


def test_entropy_special_cases():
    p = np.full(4, 0.25)
    assert renyi_entropy(p, 2) == pytest.approx(np.log(4))
    assert tsallis_entropy(p, 2) == pytest.approx(0.75)
    assert tsallis_entropy(p, 1) == pytest.approx(np.log(4))
    # bounds are tight at uniform distributions
    C = float(p @ p)
    for nu in (0.5, 1.0, 1.5, 2.0):
        assert tsallis_bound(C, nu) == pytest.approx(tsallis_entropy(p, nu), abs=1e-14)
    for nu in (2.0, 2.5, 3.0):
        assert renyi_bound(C, nu) <= renyi_entropy(p, nu) + 1e-14
    assert tsallis_bound(0.3, 2) == pytest.approx(0.7)
    with pytest.raises(RangeViolation):
        renyi_bound(0.5, 1.5)
    with pytest.raises(RangeViolation):
        tsallis_bound(0.5, 2.5)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), d=st.integers(2, 4))
def test_entropy_bounds_hold(seed, d):
    geam = preset("gsic", d)
    rho = random_mixed(d, seed=seed).matrix
    p = born_probabilities(geam, rho)
    C = float(p @ p)
    for nu in (0.5, 1.0, 1.5, 2.0):
        assert tsallis_entropy(p, nu) >= tsallis_bound(C, nu) - 1e-12
    for nu in (2.0, 2.5, 3.0):
        assert renyi_entropy(p, nu) >= renyi_bound(C, nu) - 1e-12


def test_skew_information_commuting_is_zero():
    rho = np.diag([0.7, 0.2, 0.1]).astype(complex)
    A = np.diag([1.0, 2.0, 3.0]).astype(complex)
    assert skew_information(rho, A, 0.3) == pytest.approx(0.0, abs=1e-14)
    assert skew_information(rho, A, 0.2, 0.5) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("mu", [0.1, 0.3, 0.5])
def test_coherence_routes_agree(mu):
    geam = preset("mum", 3)
    params = design_params(geam)
    for seed in range(5):
        rho = random_mixed(3, seed=seed).matrix
        assert quantum_uncertainty(geam, rho, mu) == pytest.approx(coherence_formula(params, rho, mu), abs=1e-10)
        assert quantum_uncertainty(geam, rho, mu, 0.2) == pytest.approx(
            coherence_formula(params, rho, mu, 0.2), abs=1e-10
        )


def test_coherence_extremes(sic2):
    params = design_params(sic2)
    assert quantum_uncertainty(sic2, np.eye(2) / 2, 0.5) == pytest.approx(0.0, abs=1e-12)
    rho = random_pure(2, seed=5).matrix
    assert quantum_uncertainty(sic2, rho, 0.3) == pytest.approx(params.S, abs=1e-10)


def test_max_coherence_weighting(mub2, sic2):
    rho = random_mixed(2, seed=1).matrix
    pm, ps = design_params(mub2), design_params(sic2)
    # q1 S_mub + q2 S_sic = 1/2 with q1 = q2
    q = 0.5 / (pm.S + ps.S)
    value = max_coherence([(q, pm), (q, ps)], rho, 0.3, 0.4)
    assert value > 0
    with pytest.raises(RangeViolation):
        max_coherence([(1.0, pm)], rho, 0.3, 0.4)


def test_measure_report_maximally_mixed(mub2):
    report = measure_report(mub2, np.eye(2) / 2, munus=[(0.5, None), (0.2, 0.3)])
    assert all(abs(c["direct"]) < 1e-12 and abs(c["formula"]) < 1e-12 for c in report["coherence"])
    assert report["ioc_direct"] == pytest.approx(report["ioc_formula"], abs=1e-14)


def test_measure_report_pure_reaches_vmin(sic2):
    report = measure_report(sic2, random_pure(2, seed=3).matrix)
    assert report["bz"]["V"] == pytest.approx(report["bz"]["V_min"], abs=1e-12)
    assert report["bz"]["direct"]["V"] == pytest.approx(report["bz"]["V_min"], abs=1e-12)
