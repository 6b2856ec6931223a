"""Dense complex-matrix helpers used throughout the package.

Everything here is a pure function of numpy arrays.  Matrices are plain
``np.ndarray`` objects of dtype ``complex128``; nothing is subclassed.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, RangeViolation


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10
    spectral: float = 1e-10
    psd: float = 1e-10
    eigen_floor: float = 1e-12
    validate: float = 1e-10
    detect: float = 1e-9


DEFAULT_TOL = Tolerances()


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _square(m, name="matrix"):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def is_hermitian(m, tol=DEFAULT_TOL.hermitian):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T), initial=0.0) <= tol


def hs_inner(a, b):
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    a = _square(a, "A")
    b = _square(b, "B")
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def spectral(m):
    """Hermitian eigendecomposition with ascending eigenvalues.

    The input is symmetrized first, so tiny anti-Hermitian round-off does not
    leak into complex eigenvalues.
    """
    m = _square(m)
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    return SpectralDecomposition(w, v)


def fractional_power(rho, mu, tol=DEFAULT_TOL):
    """rho**mu for a positive semidefinite rho and 0 <= mu <= 1.

    Eigenvalues below ``tol.eigen_floor`` are treated as exact zeros and stay
    zero for every mu, including mu = 0.  So rho**0 is the projector onto the
    support of rho, not the identity.
    """
    if not -1e-12 <= mu <= 1.0 + 1e-12:
        raise RangeViolation(f"mu must lie in [0, 1], got {mu}")
    mu = min(max(mu, 0.0), 1.0)
    w, v = spectral(rho)
    if w[0] < -tol.psd:
        raise RangeViolation(f"matrix is not positive semidefinite: min eigenvalue {w[0]:.3e}")
    support = w > tol.eigen_floor
    powered = np.zeros_like(w)
    powered[support] = w[support] ** mu
    return (v * powered) @ v.conj().T


def partial_trace(rho, d1, d2, subsystem=2):
    """Trace out ``subsystem`` (1 or 2) of an operator on C^d1 (x) C^d2.

    Row index convention: i1 * d2 + i2.
    """
    rho = _square(rho)
    if rho.shape[0] != d1 * d2:
        raise DimensionMismatch(f"matrix of size {rho.shape[0]} is not {d1}x{d2}")
    t = rho.reshape(d1, d2, d1, d2)
    if subsystem == 2:
        return np.einsum("ajbj->ab", t)
    if subsystem == 1:
        return np.einsum("iaib->ab", t)
    raise ValueError(f"subsystem must be 1 or 2, got {subsystem}")


def flip_operator(d):
    """The swap sum_{m,n} |m><n| (x) |n><m| on C^d (x) C^d."""
    if d < 2:
        raise RangeViolation(f"d must be >= 2, got {d}")
    f = np.zeros((d, d, d, d), dtype=complex)
    m, n = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    # entry (m n | n m): row (m, n), column (n, m)
    f[m, n, n, m] = 1.0
    return f.reshape(d * d, d * d)


def trace_norm(m):
    """Sum of singular values; works for rectangular input."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def gellmann_basis(d):
    """Orthonormal Hermitian basis of d x d matrices.

    Returns ``[I/sqrt(d), symmetric..., antisymmetric..., diagonal...]``, every
    element normalized so that Tr(G_j G_k) = delta_jk.  Off-diagonal pairs
    (j, k), j < k, appear in row-major order; diagonals follow in order of
    growing support.
    """
    if d < 2:
        raise RangeViolation(f"d must be >= 2, got {d}")
    s = 1.0 / np.sqrt(2.0)
    sym, anti, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = s
            sym.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j * s
            m[k, j] = 1j * s
            anti.append(m)
    for l in range(1, d):
        v = np.zeros(d)
        v[:l] = 1.0
        v[l] = -l
        diag.append(np.diag(v / np.sqrt(l * (l + 1))).astype(complex))
    return [np.eye(d, dtype=complex) / np.sqrt(d)] + sym + anti + diag


def haar_unitary(d, rng):
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph
