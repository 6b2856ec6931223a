"""Standard conical 2-design families and their closed-form parameters.

Projective families (complete MUBs, Weyl-Heisenberg SICs) are assembled
from explicit vectors.  Their non-projective generalizations (MUMs, general
SICs) reuse the operator basis recovered from the projective member and
lower the common symmetry constant S, which keeps every operator positive
for the whole range 1/d < b <= 1.  Everything else falls back to the
canonical Gell-Mann partition, where positivity is checked at build time.
"""
from functools import lru_cache

import numpy as np

from .errors import UnsupportedPreset
from .geam import GeamConfig, Geam, build_geam, partition_basis, recover_basis

PRESET_NAMES = ("mub", "mum", "sic", "gsic", "nm_povm")
MAX_GELLMANN_DIM = 8

# Weyl-Heisenberg fiducials.  d = 2 and d = 3 are exact; the rest were found
# by least squares on |<psi|X^p Z^q|psi>|^2 = 1/(d+1) and hold to ~1e-15.
_FIDUCIALS = {
    4: [
        (0.20118858648686588, 0.0),
        (0.3076345531059191, -0.2569832962716319),
        (8.157513323713892e-17, -0.48571221409126397),
        (-0.10644596661905345, 0.7426955103628957),
    ],
    5: [
        (0.19993636214633692, 0.0),
        (-0.39042567322091853, -0.28868557770818853),
        (0.31395370760812197, -0.2730814100216848),
        (0.45621614149038214, 0.5334525011319062),
        (0.04884669956661743, -0.23669126770086596),
    ],
    6: [
        (0.2277981075027516, 0.0),
        (-0.320136715194118, 0.5969431205939003),
        (-0.3186206209736977, 0.18618252135590102),
        (0.3111780017827772, -0.31117800178277694),
        (-0.33567451719687597, 0.10131817630657414),
        (0.04847570888904776, -0.18477077400284472),
    ],
    7: [
        (0.3014837505076296, 0.0),
        (0.4571168864893509, -0.09286137381354292),
        (-0.08012477358857883, 0.10681488982660663),
        (-0.35466636745687796, 0.5069624525433486),
        (0.45440980124459274, 0.06324770321916619),
        (0.06878623924763023, -0.19303664792649355),
        (0.12897911027253364, 0.14758407951268926),
    ],
}

MUB_DIMS = (2, 3, 4, 5, 7)
SIC_DIMS = (2, 3, 4, 5, 6, 7)

# commuting classes of two-qubit Paulis; their joint eigenbases are mutually unbiased
_PAULI_CLASSES_4 = (
    ("ZI", "IZ"), ("XI", "IX"), ("YI", "IY"), ("XZ", "ZY"), ("XY", "YZ"),
)
_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def sic_fiducial(d):
    if d == 2:
        theta = np.arccos(1 / np.sqrt(3))
        v = np.array([np.cos(theta / 2), np.exp(1j * np.pi / 4) * np.sin(theta / 2)])
    elif d == 3:
        v = np.array([0, 1, -1], dtype=complex) / np.sqrt(2)
    elif d in _FIDUCIALS:
        v = np.array([complex(re, im) for re, im in _FIDUCIALS[d]])
    else:
        raise UnsupportedPreset(f"no SIC fiducial shipped for d = {d}")
    return v / np.linalg.norm(v)


def weyl_heisenberg_orbit(v):
    """The d^2 vectors X^p Z^q v, ordered by (p, q)."""
    d = len(v)
    omega = np.exp(2j * np.pi / d)
    phases = omega ** np.arange(d)
    out = []
    for p in range(d):
        for q in range(d):
            out.append(np.roll(phases**q * v, p))
    return np.array(out)


def mub_vectors(d):
    """A complete set of d + 1 mutually unbiased bases, shape (d+1, d, d).

    ``result[alpha, k]`` is the k-th vector of basis alpha.
    """
    if d == 2:
        s = 1 / np.sqrt(2)
        return np.array([
            [[s, s], [s, -s]],
            [[s, 1j * s], [s, -1j * s]],
            [[1, 0], [0, 1]],
        ], dtype=complex)
    if d == 4:
        bases = []
        for p, q in _PAULI_CLASSES_4:
            A = np.kron(_PAULI[p[0]], _PAULI[p[1]])
            B = np.kron(_PAULI[q[0]], _PAULI[q[1]])
            _, vecs = np.linalg.eigh(A + 2 * B)
            bases.append(vecs.T)
        return np.array(bases)
    if d in MUB_DIMS:
        omega = np.exp(2j * np.pi / d)
        j = np.arange(d)
        bases = [np.eye(d, dtype=complex)]
        for m in range(d):
            bases.append(np.array([omega ** ((m * j * j + k * j) % d) for k in range(d)]) / np.sqrt(d))
        return np.array(bases)
    raise UnsupportedPreset(f"no complete MUB construction shipped for d = {d}")


def _projectors(vectors, weight):
    return weight * np.einsum("ki,kj->kij", vectors, vectors.conj())


@lru_cache(maxsize=None)
def _mub_geam(d):
    vecs = mub_vectors(d)
    gamma = 1.0 / (d + 1)
    return Geam.from_operators(d, [(gamma, _projectors(basis, gamma)) for basis in vecs])


@lru_cache(maxsize=None)
def _sic_geam(d):
    vecs = weyl_heisenberg_orbit(sic_fiducial(d))
    return Geam.from_operators(d, [(1.0, _projectors(vecs, 1.0 / d))])


def default_b(d):
    """Midpoint of (1/d, 1], used when a non-projective preset gets no b."""
    return 0.5 * (1.0 + 1.0 / d)


def closed_form_row(name, d, b=None, N=None, M=None):
    """Closed-form frame and design parameters of a preset family."""
    if name == "mub":
        N, M, b = d + 1, d, 1.0
    elif name == "mum":
        N, M = d + 1, d
    elif name == "sic":
        N, M, b = 1, d * d, 1.0
    elif name == "gsic":
        N, M = 1, d * d
    elif name != "nm_povm":
        raise UnsupportedPreset(f"unknown preset {name!r}")
    if b is None:
        b = default_b(d)
    if N is None or M is None:
        raise UnsupportedPreset("nm_povm needs N and M")
    gamma = 1.0 / N
    return {
        "N": N,
        "M": M,
        "gamma": gamma,
        "a": d / (N * M),
        "b": b,
        "c": (M - d * b) / (d * (M - 1)),
        "mu": 1.0 / (N * M),
        "S": d * (d * b - 1) / (N * M * (d * d - 1)),
        "C_max": d * (b + 1) / (N * M * (d + 1)),
    }


def preset(name, d, b=None, N=None, M=None, basis="auto"):
    """Build a validated conical 2-design from a standard family.

    ``basis="auto"`` uses the projective member (MUB or SIC) of the family as
    the source of the operator basis when one is shipped for ``d``;
    ``basis="gellmann"`` forces the canonical Gell-Mann partition.
    """
    if name not in PRESET_NAMES:
        raise UnsupportedPreset(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if d < 2:
        raise UnsupportedPreset("d must be >= 2")
    if name == "mub":
        if d not in MUB_DIMS:
            raise UnsupportedPreset(f"mub preset available for d in {MUB_DIMS}")
        return _mub_geam(d)
    if name == "sic":
        if d not in SIC_DIMS:
            raise UnsupportedPreset(f"sic preset available for d in {SIC_DIMS}")
        return _sic_geam(d)

    if name == "mum":
        N, M = d + 1, d
    elif name == "gsic":
        N, M = 1, d * d
    elif N is None or M is None or b is None:
        raise UnsupportedPreset("nm_povm needs N, M and b")
    if N * (M - 1) != d * d - 1:
        raise UnsupportedPreset(f"N (M - 1) must equal d^2 - 1 = {d * d - 1}")
    if b is None:
        b = default_b(d)

    config = GeamConfig.uniform(d, N, M, b=b)
    source = None
    if basis == "auto":
        if (N, M) == (d + 1, d) and d in MUB_DIMS:
            source = recover_basis(_mub_geam(d))
        elif (N, M) == (1, d * d) and d in SIC_DIMS:
            source = recover_basis(_sic_geam(d))
    elif basis != "gellmann":
        raise UnsupportedPreset(f"basis must be 'auto' or 'gellmann', got {basis!r}")
    if source is None:
        if d > MAX_GELLMANN_DIM:
            raise UnsupportedPreset(f"Gell-Mann presets limited to d <= {MAX_GELLMANN_DIM}")
        source = partition_basis(d, config.sizes)
    return build_geam(config, basis=source)
