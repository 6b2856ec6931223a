"""Entanglement detection from the correlation matrix of a conical 2-design.

For a state rho on C^d (x) C^d the correlation matrix collects the joint
outcome probabilities B[(a,k),(b,l)] = Tr[rho (P_ak (x) P_bl)] of measuring
the same GEAM on both sides.  Its trace norm is at most C_max + (r - 1) S
when the Schmidt number of rho is at most r, and it lower-bounds the
concurrence.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RangeViolation
from .geam import design_params
from .linalg import DEFAULT_TOL, trace_norm
from .states import SchmidtVector, reduced_state


@dataclass(frozen=True)
class CorrelationMatrix:
    entries: np.ndarray
    labels: tuple

    @property
    def trace_norm(self):
        return trace_norm(self.entries)


def _bipartite(rho, d):
    rho = np.asarray(rho)
    if rho.shape != (d * d, d * d):
        raise DimensionMismatch(f"state of shape {rho.shape} does not act on C^{d} (x) C^{d}")
    return rho


def correlation_matrix(geam, rho, imag_tol=1e-12):
    d = geam.dim
    rho = _bipartite(rho, d).reshape(d, d, d, d)
    ops = geam.operators
    # Tr[rho (P (x) Q)] = sum rho[i1 i2, j1 j2] P[j1, i1] Q[j2, i2]
    B = np.einsum("abcd,xca,ydb->xy", rho, ops, ops, optimize=True)
    residue = float(np.max(np.abs(B.imag)))
    if residue > imag_tol:
        raise RangeViolation(f"correlation matrix has imaginary residue {residue:.3e}")
    return CorrelationMatrix(B.real, tuple(geam.frame_labels()))


def pure_state_norm(lam, params):
    """Closed-form trace norm for a pure state: C_max + 2 S sum_{j<k} l_j l_k."""
    if not isinstance(lam, SchmidtVector):
        lam = SchmidtVector(lam)
    return params.C_max + 2.0 * params.S * lam.cross_sum()


def schmidt_number_bound(params, r, d=None):
    if r < 1 or (d is not None and r > d):
        raise RangeViolation(f"Schmidt number bound needs 1 <= r <= d, got r = {r}")
    return params.C_max + (r - 1) * params.S


def check_schmidt_criterion(geam, rho, r, params=None, tol=DEFAULT_TOL.detect):
    """(violated, lhs, rhs); violated certifies Schmidt number > r."""
    if params is None:
        params = design_params(geam)
    rhs = schmidt_number_bound(params, r, geam.dim)
    lhs = correlation_matrix(geam, rho).trace_norm
    return lhs > rhs + tol, lhs, rhs


def pure_concurrence(psi):
    """sqrt(2 (1 - Tr rho_1^2)) for a bipartite pure state."""
    rho1 = reduced_state(psi)
    purity = float(np.vdot(rho1, rho1).real)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def concurrence_constants(params, d):
    """(eta, xi) with eta = sqrt(2 / (d (d - 1))) / S and xi = C_max."""
    return np.sqrt(2.0 / (d * (d - 1))) / params.S, params.C_max


def concurrence_lower_bound(geam, rho, params=None, raw=False):
    """max(0, eta (||B(rho)||_tr - xi)); ``raw=True`` skips the clamp."""
    if params is None:
        params = design_params(geam)
    eta, xi = concurrence_constants(params, geam.dim)
    value = eta * (correlation_matrix(geam, rho).trace_norm - xi)
    return float(value) if raw else float(max(0.0, value))


def detection_report(geam, rho, params=None, tol=DEFAULT_TOL.detect):
    if params is None:
        params = design_params(geam)
    d = geam.dim
    norm = correlation_matrix(geam, rho).trace_norm
    bounds = []
    certified = 1
    for r in range(1, d + 1):
        rhs = schmidt_number_bound(params, r, d)
        violated = norm > rhs + tol
        if violated:
            certified = r + 1
        bounds.append({"r": r, "bound": rhs, "violated": bool(violated)})
    eta, xi = concurrence_constants(params, d)
    return {
        "trace_norm": norm,
        "schmidt_bounds": bounds,
        "min_schmidt_number_certified": certified,
        "concurrence_lower_bound": float(max(0.0, eta * (norm - xi))),
    }
