import numpy as np
import pytest

from geamkit.entanglement import (
    check_schmidt_criterion,
    concurrence_lower_bound,
    correlation_matrix,
    detection_report,
    pure_state_norm,
    pure_concurrence,
    schmidt_number_bound,
)
from geamkit.errors import RangeViolation
from geamkit.geam import design_params
from geamkit.presets import preset
from geamkit.states import (
    SchmidtVector,
    bipartite_from_schmidt,
    maximally_entangled,
    random_mixed,
    random_pure,
    random_separable,
)


def test_concurrence_of_known_state():
    psi = bipartite_from_schmidt([np.sqrt(0.8), np.sqrt(0.2)], 2, seed=1)
    assert pure_concurrence(psi) == pytest.approx(0.8, abs=1e-12)


def test_bell_state_on_mub(mub2):
    rho = maximally_entangled(2).matrix
    params = design_params(mub2)
    B = correlation_matrix(mub2, rho)
    assert B.entries.shape == (6, 6)
    assert B.trace_norm == pytest.approx(1 / 3, abs=1e-12)
    assert concurrence_lower_bound(mub2, rho, params) == pytest.approx(1.0, abs=1e-9)
    report = detection_report(mub2, rho)
    assert report["min_schmidt_number_certified"] == 2


def test_product_state_is_not_flagged(sic2):
    rho = np.kron(random_mixed(2, seed=1).matrix, random_mixed(2, seed=2).matrix)
    report = detection_report(sic2, rho)
    assert report["min_schmidt_number_certified"] == 1
    assert report["concurrence_lower_bound"] == 0.0
    assert not any(b["violated"] for b in report["schmidt_bounds"])


def test_rank3_uniform_in_d4_certifies_three():
    geam = preset("mum", 4)
    rho = bipartite_from_schmidt(SchmidtVector([1 / np.sqrt(3)] * 3), 4, seed=2).matrix
    report = detection_report(geam, rho)
    assert report["min_schmidt_number_certified"] == 3


@pytest.mark.parametrize("d", [2, 3])
def test_pure_trace_norm_matches_closed_form(d):
    geam = preset("gsic", d)
    params = design_params(geam)
    rng = np.random.default_rng(d)
    for _ in range(10):
        lam = rng.random(d)
        lam /= np.linalg.norm(lam)
        rho = bipartite_from_schmidt(lam, d, rng).matrix
        assert correlation_matrix(geam, rho).trace_norm == pytest.approx(pure_state_norm(lam, params), abs=1e-10)


def test_separable_states_pass_r1(sic2):
    for seed in range(30):
        rho = random_separable(2, seed=seed).matrix
        violated, lhs, rhs = check_schmidt_criterion(sic2, rho, 1)
        assert not violated


def test_concurrence_bound_below_exact():
    geam = preset("mub", 3)
    params = design_params(geam)
    for seed in range(20):
        rho = random_pure(3, seed=seed, bipartite=True)
        assert concurrence_lower_bound(geam, rho.matrix, params) <= pure_concurrence(rho) + 1e-9


def test_schmidt_bound_range(mub2):
    with pytest.raises(RangeViolation):
        schmidt_number_bound(design_params(mub2), 3, 2)
