import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geamkit.errors import DimensionMismatch, RangeViolation
from geamkit.linalg import (
    flip_operator,
    fractional_power,
    gellmann_basis,
    haar_unitary,
    hs_inner,
    is_hermitian,
    partial_trace,
    trace_norm,
)
from geamkit.states import random_mixed


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gellmann_basis_is_orthonormal_and_hermitian(d):
    basis = gellmann_basis(d)
    assert len(basis) == d * d
    gram = np.array([[hs_inner(a, b) for b in basis] for a in basis])
    assert np.allclose(gram, np.eye(d * d), atol=1e-14)
    assert all(is_hermitian(g) for g in basis)
    assert all(abs(np.trace(g)) < 1e-14 for g in basis[1:])


def test_flip_swaps_product_vectors():
    d = 3
    rng = np.random.default_rng(1)
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    F = flip_operator(d)
    assert np.allclose(F @ np.kron(x, y), np.kron(y, x))
    assert np.allclose(F @ F, np.eye(d * d))


def test_partial_trace_of_product():
    a = random_mixed(2, seed=1).matrix
    b = random_mixed(3, seed=2).matrix
    ab = np.kron(a, b)
    assert np.allclose(partial_trace(ab, 2, 3, 2), a)
    assert np.allclose(partial_trace(ab, 2, 3, 1), b)
    with pytest.raises(DimensionMismatch):
        partial_trace(ab, 2, 2)


def test_fractional_power_limits():
    rho = random_mixed(3, rank=2, seed=4).matrix
    assert np.allclose(fractional_power(rho, 1.0), rho, atol=1e-12)
    p0 = fractional_power(rho, 0.0)
    # support projector, not the identity
    assert np.allclose(p0 @ p0, p0, atol=1e-12)
    assert np.isclose(np.trace(p0).real, 2.0)
    half = fractional_power(rho, 0.5)
    assert np.allclose(half @ half, rho, atol=1e-12)
    with pytest.raises(RangeViolation):
        fractional_power(rho, 1.5)


def test_fractional_power_rejects_indefinite():
    with pytest.raises(RangeViolation):
        fractional_power(np.diag([1.0, -0.1]), 0.5)


@settings(max_examples=30, deadline=None)
@given(d=st.integers(2, 5), seed=st.integers(0, 2**31))
def test_trace_norm_unitarily_invariant(d, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    u = haar_unitary(d, rng)
    assert np.allclose(u.conj().T @ u, np.eye(d), atol=1e-12)
    assert np.isclose(trace_norm(u @ m), trace_norm(m))
    assert trace_norm(m) >= np.linalg.norm(m, 2) - 1e-12
