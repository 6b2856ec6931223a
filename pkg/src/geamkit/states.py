"""Density matrices: random sampling, Schmidt decomposition, JSON form."""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ImpureInput, RangeViolation
from .linalg import haar_unitary, partial_trace

SCHMIDT_FLOOR = 1e-12


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A positive unit-trace matrix.

    For bipartite states ``matrix`` acts on C^d (x) C^d and ``dim`` is the
    local dimension d.  Instances convert with ``np.asarray``.
    """

    matrix: np.ndarray
    bipartite: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
        if self.bipartite:
            d = int(round(np.sqrt(m.shape[0])))
            if d * d != m.shape[0]:
                raise DimensionMismatch(f"size {m.shape[0]} is not d x d for a bipartite state")
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def dim(self):
        n = self.matrix.shape[0]
        return int(round(np.sqrt(n))) if self.bipartite else n

    @property
    def purity(self):
        return float(np.vdot(self.matrix, self.matrix).real)

    def check(self, tol=1e-10):
        """Raise RangeViolation unless Hermitian, unit trace and positive."""
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise RangeViolation("density matrix is not Hermitian")
        if abs(np.trace(m) - 1) > 1e-12 + tol:
            raise RangeViolation(f"trace is {np.trace(m).real}, not 1")
        low = np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]
        if low < -tol:
            raise RangeViolation(f"negative eigenvalue {low:.3e}")
        return self

    def to_dict(self):
        return {
            "dim": self.dim,
            "bipartite": self.bipartite,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        m = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        state = cls(m, bool(data.get("bipartite", False)))
        if state.dim != int(data["dim"]):
            raise DimensionMismatch(f"declared dim {data['dim']} but matrix gives {state.dim}")
        return state

    @classmethod
    def from_vector(cls, psi, bipartite=False):
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), bipartite)


@dataclass(frozen=True)
class SchmidtVector:
    coefficients: np.ndarray

    def __post_init__(self):
        lam = np.sort(np.abs(np.asarray(self.coefficients, dtype=float)))[::-1]
        if abs(np.sum(lam**2) - 1.0) > 1e-10:
            raise RangeViolation(f"Schmidt coefficients must satisfy sum lambda^2 = 1, got {np.sum(lam**2)}")
        object.__setattr__(self, "coefficients", lam)

    @property
    def rank(self):
        return int(np.sum(self.coefficients > SCHMIDT_FLOOR))

    def cross_sum(self):
        """sum_{j<k} lambda_j lambda_k."""
        lam = self.coefficients
        return 0.5 * (np.sum(lam) ** 2 - np.sum(lam**2))

    @classmethod
    def uniform(cls, r):
        return cls(np.full(r, 1 / np.sqrt(r)))


def random_state_vector(d, seed=None):
    rng = _rng(seed)
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_pure(d, seed=None, bipartite=False):
    """Unitarily invariant random pure state on C^d (C^d (x) C^d if bipartite)."""
    if d < 2:
        raise RangeViolation(f"d must be >= 2, got {d}")
    n = d * d if bipartite else d
    return DensityMatrix.from_vector(random_state_vector(n, seed), bipartite)


def random_mixed(d, rank=None, seed=None):
    """rho = G G^dagger / Tr(G G^dagger) with G a complex Gaussian d x rank matrix."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise RangeViolation(f"rank must lie in [1, {d}], got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_separable(d, terms=4, seed=None, pure_fraction=0.5):
    """Mixture sum_i q_i rho_i^A (x) rho_i^B with random local states.

    Roughly ``pure_fraction`` of the local factors are pure, so samples reach
    the boundary of the separable set.
    """
    rng = _rng(seed)
    q = rng.dirichlet(np.ones(terms))
    rho = np.zeros((d * d, d * d), dtype=complex)
    for qi in q:
        factors = []
        for _ in range(2):
            rank = 1 if rng.random() < pure_fraction else d
            factors.append(random_mixed(d, rank, rng).matrix)
        rho += qi * np.kron(*factors)
    return DensityMatrix(rho, bipartite=True)


def bipartite_vector_from_schmidt(lam, d, seed=None):
    """|psi> = sum_j lambda_j |e_j> (x) |f_j> with Haar-random local bases."""
    if not isinstance(lam, SchmidtVector):
        lam = SchmidtVector(lam)
    coeffs = lam.coefficients
    if len(coeffs) > d:
        if np.any(coeffs[d:] > SCHMIDT_FLOOR):
            raise RangeViolation(f"Schmidt rank {lam.rank} exceeds d = {d}")
        coeffs = coeffs[:d]
    rng = _rng(seed)
    u = haar_unitary(d, rng)
    v = haar_unitary(d, rng)
    amp = (u[:, : len(coeffs)] * coeffs) @ v[:, : len(coeffs)].T
    return amp.reshape(d * d)


def bipartite_from_schmidt(lam, d, seed=None):
    return DensityMatrix.from_vector(bipartite_vector_from_schmidt(lam, d, seed), bipartite=True)


def maximally_entangled(d):
    return bipartite_from_schmidt(SchmidtVector.uniform(d), d, seed=0)


def _pure_vector(psi, purity_tol=1e-8):
    if isinstance(psi, DensityMatrix) or np.ndim(psi) == 2:
        rho = np.asarray(psi)
        w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
        if abs(np.vdot(rho, rho).real - 1.0) > purity_tol:
            raise ImpureInput("state is not pure")
        return v[:, -1]
    return np.asarray(psi, dtype=complex) / np.linalg.norm(psi)


def schmidt_decompose(psi):
    """Schmidt coefficients of a bipartite pure state (vector or projector)."""
    vec = _pure_vector(psi)
    d = int(round(np.sqrt(len(vec))))
    if d * d != len(vec):
        raise DimensionMismatch(f"length {len(vec)} is not d x d")
    return SchmidtVector(np.linalg.svd(vec.reshape(d, d), compute_uv=False))


def reduced_state(psi):
    """rho_1 = Tr_2 |psi><psi|."""
    vec = _pure_vector(psi)
    d = int(round(np.sqrt(len(vec))))
    return partial_trace(np.outer(vec, vec.conj()), d, d, 2)
