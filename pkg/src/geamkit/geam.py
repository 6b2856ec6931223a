"""Construction and validation of generalized equiangular measurements.

A GEAM is a union of N equiangular tight frames {P_ak}, k = 1..M_a, with
frame weights gamma_a summing to one.  Every frame is built from M_a - 1
traceless elements of a Hermitian orthonormal operator basis:

    H_ak = G_a - sqrt(M)(1 + sqrt(M)) G_ak      (k < M)
    H_aM = (1 + sqrt(M)) G_a,                   G_a = sum_k G_ak
    P_ak = (a/d) I + tau H_ak,                  tau^2 = S_a / (M (sqrt(M) + 1)^2)

with a = d gamma / M and S_a = a^2 (b - c).  When all S_a coincide the
measurement is a conical 2-design, sum P (x) P = k+ I (x) I + k- F.
"""
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    GeamError,
    NoPositiveS,
    NotADesign,
    PositivityViolation,
    RangeViolation,
)
from .linalg import DEFAULT_TOL, flip_operator, gellmann_basis


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class FrameSpec:
    M: int
    gamma: float
    b: Optional[float] = None

    def __post_init__(self):
        if self.M < 2:
            raise RangeViolation(f"a frame needs M >= 2 elements, got {self.M}")
        if not 0.0 < self.gamma <= 1.0:
            raise RangeViolation(f"frame weight must lie in (0, 1], got {self.gamma}")


@dataclass(frozen=True)
class GeamConfig:
    dim: int
    frames: tuple
    target_S: Optional[float] = None
    tau_signs: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        d = self.dim
        if d < 2:
            raise RangeViolation(f"dimension must be >= 2, got {d}")
        count = sum(f.M - 1 for f in self.frames)
        if count != d * d - 1:
            raise DimensionMismatch(
                f"sum of (M_a - 1) must equal d^2 - 1 = {d * d - 1}, got {count}"
            )
        total = sum(f.gamma for f in self.frames)
        if abs(total - 1.0) > 1e-10:
            raise RangeViolation(f"frame weights must sum to 1, got {total}")
        if self.tau_signs is not None:
            signs = tuple(int(s) for s in self.tau_signs)
            if len(signs) != len(self.frames) or any(s not in (-1, 1) for s in signs):
                raise GeamError("tau_signs must hold one +1/-1 per frame")
            object.__setattr__(self, "tau_signs", signs)
        if self.target_S is None and any(f.b is None for f in self.frames):
            raise GeamError("every frame needs b unless target_S is given")

    @property
    def sizes(self):
        return [f.M for f in self.frames]

    @classmethod
    def uniform(cls, dim, N, M, b=None, target_S=None):
        """N frames of M elements each with weight 1/N."""
        return cls(dim, [FrameSpec(M, 1.0 / N, b) for _ in range(N)], target_S=target_S)

    def to_dict(self):
        return {
            "dim": self.dim,
            "frames": [{"M": f.M, "gamma": f.gamma, "b": f.b} for f in self.frames],
            "target_S": self.target_S,
            "tau_signs": list(self.tau_signs) if self.tau_signs is not None else None,
        }

    @classmethod
    def from_dict(cls, data):
        frames = [FrameSpec(int(f["M"]), float(f["gamma"]), f.get("b")) for f in data["frames"]]
        signs = data.get("tau_signs")
        return cls(
            int(data["dim"]),
            frames,
            target_S=data.get("target_S"),
            tau_signs=tuple(signs) if signs is not None else None,
        )


@dataclass(frozen=True)
class OperatorBasis:
    """Traceless orthonormal Hermitian operators split into N groups.

    ``groups[a]`` is an array of shape (M_a - 1, d, d).  The identity element
    I/sqrt(d) is implicit.
    """

    dim: int
    groups: tuple

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(np.asarray(g, dtype=complex) for g in self.groups))

    @property
    def sizes(self):
        return [len(g) + 1 for g in self.groups]

    def elements(self):
        return np.concatenate(self.groups, axis=0)

    def rotated(self, u):
        """The same partition conjugated by a unitary, U G U^dagger."""
        return OperatorBasis(self.dim, [u @ g @ u.conj().T for g in self.groups])


# ---------------------------------------------------------------------------
# the measurement itself


@dataclass(frozen=True)
class Frame:
    operators: np.ndarray
    gamma: float
    a: float
    b: float
    c: float
    tau: float

    @property
    def M(self):
        return len(self.operators)

    @property
    def S(self):
        return self.a**2 * (self.b - self.c)


@dataclass(frozen=True)
class Geam:
    dim: int
    frames: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))

    @property
    def N(self):
        return len(self.frames)

    @property
    def sizes(self):
        return [f.M for f in self.frames]

    @property
    def operators(self):
        """All P_ak stacked in lexicographic (a, k) order, shape (K, d, d)."""
        return np.concatenate([f.operators for f in self.frames], axis=0)

    def frame_labels(self):
        return [(alpha, k) for alpha, f in enumerate(self.frames) for k in range(f.M)]

    @classmethod
    def from_operators(cls, dim, frames, tau_signs=None):
        """Wrap given operators, measuring a, b and c from their traces.

        ``frames`` is a sequence of ``(gamma, operators)`` pairs.  The tau
        sign is taken as + unless ``tau_signs`` says otherwise; it only
        matters for :func:`recover_basis`.
        """
        out = []
        for i, (gamma, ops) in enumerate(frames):
            ops = np.asarray(ops, dtype=complex)
            if ops.ndim != 3 or ops.shape[1:] != (dim, dim):
                raise DimensionMismatch(f"frame {i}: operators must have shape (M, {dim}, {dim})")
            M = len(ops)
            traces = np.einsum("kii->k", ops).real
            a = float(np.mean(traces))
            gram = np.einsum("kij,lji->kl", ops, ops).real
            b = float(np.mean(np.diag(gram))) / a**2
            off = gram[~np.eye(M, dtype=bool)]
            c = float(np.mean(off)) / a**2
            S = a**2 * (b - c)
            sign = 1 if tau_signs is None else tau_signs[i]
            tau = sign * np.sqrt(max(S, 0.0) / (M * (np.sqrt(M) + 1) ** 2))
            out.append(Frame(ops, float(gamma), a, b, c, float(tau)))
        return cls(dim, out)


@dataclass(frozen=True)
class DesignParams:
    S: float
    mu: float
    C_max: float
    kappa_plus: float
    kappa_minus: float

    @classmethod
    def from_constants(cls, S, mu, d):
        C_max = (d - 1) / d * S + mu
        return cls(S, mu, C_max, mu - S / d, S)

    def to_dict(self):
        return {
            "S": self.S,
            "mu": self.mu,
            "C_max": self.C_max,
            "kappa_plus": self.kappa_plus,
            "kappa_minus": self.kappa_minus,
        }


# ---------------------------------------------------------------------------
# construction


def symmetry_c(d, M, b):
    """Within-frame overlap parameter c = (M - d b) / (d (M - 1))."""
    return (M - d * b) / (d * (M - 1))


def b_range(d, M):
    return 1.0 / d, min(d, M) / d


def b_from_S(d, M, gamma, S):
    """Solve S = a^2 (b - c(b)) for b at fixed frame shape."""
    a = d * gamma / M
    return 1.0 / d + S * (M - 1) / (a * a * M)


def partition_basis(d, frame_sizes, basis=None):
    """Split the traceless part of ``basis`` into groups of size M_a - 1.

    ``basis`` defaults to the Gell-Mann basis without its identity element;
    assignment follows the basis order.
    """
    frame_sizes = [int(m) for m in frame_sizes]
    if any(m < 2 for m in frame_sizes):
        raise RangeViolation("every frame needs at least two elements")
    if sum(m - 1 for m in frame_sizes) != d * d - 1:
        raise DimensionMismatch(
            f"frame sizes {frame_sizes} do not account for d^2 - 1 = {d * d - 1} basis elements"
        )
    elems = np.asarray(gellmann_basis(d)[1:] if basis is None else basis, dtype=complex)
    if elems.shape != (d * d - 1, d, d):
        raise DimensionMismatch(f"expected {d * d - 1} traceless {d}x{d} basis elements")
    groups, start = [], 0
    for m in frame_sizes:
        groups.append(elems[start : start + m - 1])
        start += m - 1
    return OperatorBasis(d, groups)


def build_H(group, M):
    group = np.asarray(group, dtype=complex)
    if len(group) != M - 1:
        raise DimensionMismatch(f"group of {len(group)} elements cannot make a frame of {M}")
    r = np.sqrt(M)
    g_sum = group.sum(axis=0)
    h = np.empty((M,) + group.shape[1:], dtype=complex)
    h[:-1] = g_sum[None] - r * (1 + r) * group
    h[-1] = (1 + r) * g_sum
    return h


def max_admissible_S(config):
    d = config.dim
    return min(
        min(d * f.gamma**2 / f.M, (d - 1) / (f.M - 1) * d * f.gamma**2 / f.M)
        for f in config.frames
    )


def _check_positive(alpha, ops, tol):
    # eigvalsh on the whole stack at once
    mins = np.linalg.eigvalsh(ops)[:, 0]
    k = int(np.argmin(mins))
    if mins[k] < -tol.psd:
        raise PositivityViolation(alpha, k, float(mins[k]))
    return float(mins[k])


def build_geam(config, basis=None, tol=DEFAULT_TOL, check_positive=True):
    """Construct all P_ak for ``config``.

    ``basis`` is an :class:`OperatorBasis` whose group sizes match the
    config; it defaults to the canonical Gell-Mann partition.
    """
    d = config.dim
    sizes = config.sizes
    if basis is None:
        basis = partition_basis(d, sizes)
    elif basis.dim != d or basis.sizes != sizes:
        raise DimensionMismatch(f"basis groups {basis.sizes} do not match frame sizes {sizes}")

    if config.target_S is not None:
        S = float(config.target_S)
        s_max = max_admissible_S(config)
        if not 0.0 < S <= s_max * (1 + 1e-12):
            raise RangeViolation(f"S = {S} outside the admissible range (0, {s_max}]")
        bs = [min(b_from_S(d, f.M, f.gamma, S), b_range(d, f.M)[1]) for f in config.frames]
    else:
        bs = [float(f.b) for f in config.frames]

    eye = np.eye(d, dtype=complex)
    frames = []
    for alpha, (spec, group, b) in enumerate(zip(config.frames, basis.groups, bs)):
        M = spec.M
        lo, hi = b_range(d, M)
        if not lo < b <= hi + 1e-12:
            raise RangeViolation(f"frame {alpha}: b = {b} outside ({lo}, {hi}]")
        a = d * spec.gamma / M
        c = symmetry_c(d, M, b)
        S_alpha = a * a * (b - c)
        sign = 1 if config.tau_signs is None else config.tau_signs[alpha]
        tau = sign * np.sqrt(S_alpha / (M * (np.sqrt(M) + 1) ** 2))
        ops = (a / d) * eye[None] + tau * build_H(group, M)
        if check_positive:
            _check_positive(alpha, ops, tol)
        frames.append(Frame(ops, spec.gamma, a, b, c, float(tau)))
    return Geam(d, frames)


def recover_basis(geam, tol=1e-14):
    """Invert the construction: recover the traceless basis groups.

    G_ak = [gamma I + sqrt(M) P_aM - sqrt(M)(1 + sqrt(M)) P_ak]
           / (tau M (1 + sqrt(M))^2)
    """
    d = geam.dim
    eye = np.eye(d, dtype=complex)
    groups = []
    for alpha, f in enumerate(geam.frames):
        if abs(f.tau) <= tol:
            raise GeamError(f"frame {alpha} has tau = 0; its basis cannot be recovered")
        M = f.M
        r = np.sqrt(M)
        P = f.operators
        num = f.gamma * eye[None] + r * P[-1][None] - r * (1 + r) * P[:-1]
        groups.append(num / (f.tau * M * (1 + r) ** 2))
    return OperatorBasis(d, groups)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    tol: float
    deviations: dict
    min_eigenvalue: float

    @property
    def passed(self):
        return {name: dev <= self.tol for name, dev in self.deviations.items()}

    @property
    def ok(self):
        return all(self.passed.values())

    @property
    def failures(self):
        return [name for name, good in self.passed.items() if not good]

    def to_dict(self):
        return {
            "ok": self.ok,
            "tol": self.tol,
            "min_eigenvalue": self.min_eigenvalue,
            "conditions": {
                name: {"deviation": dev, "passed": dev <= self.tol}
                for name, dev in self.deviations.items()
            },
        }


def validate_geam(geam, tol=DEFAULT_TOL.validate):
    """Measure how far ``geam`` is from each defining trace condition.

    Never raises on a bad measurement; the report carries the deviations.
    """
    d = geam.dim
    eye = np.eye(d)
    ops = geam.operators
    labels = np.array([alpha for alpha, f in enumerate(geam.frames) for _ in range(f.M)])
    a = np.array([geam.frames[al].a for al in labels])
    b = np.array([geam.frames[al].b for al in labels])
    c = np.array([geam.frames[al].c for al in labels])

    herm = float(np.max(np.abs(ops - ops.conj().transpose(0, 2, 1))))
    gram = np.einsum("xij,yji->xy", ops, ops).real
    traces = np.einsum("xii->x", ops).real
    same = labels[:, None] == labels[None, :]
    diag = np.eye(len(ops), dtype=bool)

    dev = {"hermiticity": herm}
    dev["trace"] = float(np.max(np.abs(traces - a)))
    dev["purity"] = float(np.max(np.abs(np.diag(gram) - b * a * a)))
    within = same & ~diag
    dev["within_frame"] = (
        float(np.max(np.abs(gram - np.outer(c * a, a))[within])) if within.any() else 0.0
    )
    cross = ~same
    dev["cross_frame"] = (
        float(np.max(np.abs(gram - np.outer(a, a) / d)[cross])) if cross.any() else 0.0
    )

    frame_res = 0.0
    params = 0.0
    for f in geam.frames:
        frame_res = max(frame_res, float(np.max(np.abs(f.operators.sum(axis=0) - f.gamma * eye))))
        params = max(params, abs(f.a - d * f.gamma / f.M), abs(f.c - symmetry_c(d, f.M, f.b)))
        lo, hi = b_range(d, f.M)
        params = max(params, lo - f.b, f.b - hi)
    params = max(params, abs(sum(f.gamma for f in geam.frames) - 1.0))
    dev["frame_resolution"] = frame_res
    dev["resolution"] = float(np.max(np.abs(ops.sum(axis=0) - eye)))
    dev["symmetry_parameters"] = params
    dev["operator_count"] = float(abs(sum(geam.sizes) - (d * d + geam.N - 1)))

    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (ops + ops.conj().transpose(0, 2, 1)))))
    dev["positivity"] = max(0.0, -min_eig)
    return ValidationReport(tol, dev, min_eig)


class DesignCheck(NamedTuple):
    is_design: bool
    kappa_plus: float
    kappa_minus: float
    residual: float


def tensor_square_sum(geam):
    """sum_ak P_ak (x) P_ak as a d^2 x d^2 matrix."""
    d = geam.dim
    ops = geam.operators
    return np.einsum("xij,xkl->ikjl", ops, ops).reshape(d * d, d * d)


def check_conical_design(geam, tol=DEFAULT_TOL.validate):
    d = geam.dim
    D = tensor_square_sum(geam)
    F = flip_operator(d)
    rhs = np.array([np.trace(D).real, np.vdot(F, D).real])
    gram = np.array([[d * d, d], [d, d * d]], dtype=float)
    kp, km = np.linalg.solve(gram, rhs)
    residual = float(np.linalg.norm(D - kp * np.eye(d * d) - km * F))
    ok = residual <= tol and kp >= km - tol and km > 0
    return DesignCheck(bool(ok), float(kp), float(km), residual)


def design_params(geam, tol=DEFAULT_TOL.validate):
    """The two-constant description (S, C_max) plus mu and kappa_pm."""
    s_values = np.array([f.S for f in geam.frames])
    spread = float(np.ptp(s_values))
    if spread > tol:
        raise NotADesign(f"symmetry constants differ across frames (spread {spread:.3e})")
    S = float(np.mean(s_values))
    mu = sum(f.a * f.gamma for f in geam.frames) / geam.dim
    return DesignParams.from_constants(S, float(mu), geam.dim)


def search_positive_S(config, basis=None, rel_tol=1e-6, tol=DEFAULT_TOL):
    """Largest common S (up to ``rel_tol``) giving positive operators.

    Bisects between a tiny fraction of the admissible maximum, where the
    operators approach (a/d) I and are positive, and the maximum itself.
    """
    d = config.dim
    if basis is None:
        basis = partition_basis(d, config.sizes)
    s_max = max_admissible_S(config)

    def positive(S):
        try:
            build_geam(replace(config, target_S=S), basis=basis, tol=tol)
        except PositivityViolation:
            return False
        return True

    if positive(s_max):
        return s_max
    lo = 1e-6 * s_max
    if not positive(lo):
        raise NoPositiveS(f"no positive GEAM even at S = {lo:.3e}")
    hi = s_max
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if positive(mid):
            lo = mid
        else:
            hi = mid
    return lo
