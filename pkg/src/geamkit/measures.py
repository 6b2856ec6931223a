"""Probability-based measures of a GEAM, each computed two ways.

The *direct* functions sum over the measurement operators.  The *formula*
functions use only the design constants (S, mu, C_max) and spectral data of
the state.  For a conical 2-design both routes agree, which is what the test
suite checks.  All logarithms are natural.
"""
import numpy as np

from .errors import DimensionMismatch, RangeViolation
from .geam import design_params
from .linalg import DEFAULT_TOL, fractional_power


def _state(rho, d):
    rho = np.asarray(rho)
    if rho.shape != (d, d):
        raise DimensionMismatch(f"state of shape {rho.shape} does not act on C^{d}")
    return rho


def born_probabilities(geam, rho):
    """p_ak = Tr(P_ak rho) in lexicographic (a, k) order, clamped at zero."""
    rho = _state(rho, geam.dim)
    p = np.einsum("xij,ji->x", geam.operators, rho).real
    if p.min() < -1e-12:
        raise RangeViolation(f"negative probability {p.min():.3e}; is rho positive?")
    return np.clip(p, 0.0, None)


def index_of_coincidence(geam, rho):
    p = born_probabilities(geam, rho)
    return float(np.dot(p, p))


def _check_purity(purity, d):
    if not 1.0 / d - 1e-12 <= purity <= 1.0 + 1e-12:
        raise RangeViolation(f"purity {purity} outside [1/{d}, 1]")


def ioc_formula(params, purity, d):
    """C(rho) = S (Tr rho^2 - 1/d) + mu."""
    _check_purity(purity, d)
    return params.S * (purity - 1.0 / d) + params.mu


# ---------------------------------------------------------------------------
# entropies


def shannon_entropy(p):
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def _power_sum(p, nu):
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(np.sum(nz**nu))


def renyi_entropy(p, nu):
    if nu <= 0:
        raise RangeViolation(f"nu must be positive, got {nu}")
    if nu == 1:
        return shannon_entropy(p)
    return float(np.log(_power_sum(p, nu)) / (1.0 - nu))


def tsallis_entropy(p, nu):
    if nu <= 0:
        raise RangeViolation(f"nu must be positive, got {nu}")
    if nu == 1:
        return shannon_entropy(p)
    return float((_power_sum(p, nu) - 1.0) / (1.0 - nu))


def log_nu(x, nu):
    """Deformed logarithm (x^(1-nu) - 1) / (1 - nu); natural log at nu = 1."""
    if nu == 1:
        return float(np.log(x))
    return float((x ** (1.0 - nu) - 1.0) / (1.0 - nu))


def _check_C(C):
    if not 0.0 < C <= 1.0 + 1e-12:
        raise RangeViolation(f"index of coincidence must lie in (0, 1], got {C}")


def renyi_bound(C, nu):
    """Lower bound nu / (2 (1 - nu)) ln C on the Renyi entropy, nu >= 2."""
    _check_C(C)
    if nu < 2:
        raise RangeViolation(f"the Renyi bound needs nu >= 2, got {nu}")
    return float(nu / (2.0 * (1.0 - nu)) * np.log(C))


def tsallis_bound(C, nu):
    """Lower bound ln_nu(1 / C) on the Tsallis entropy, 0 < nu <= 2.

    Equals 1 - C at nu = 2 and -ln C at nu = 1.
    """
    _check_C(C)
    if not 0.0 < nu <= 2.0:
        raise RangeViolation(f"the Tsallis bound needs 0 < nu <= 2, got {nu}")
    return log_nu(1.0 / C, nu)


# ---------------------------------------------------------------------------
# Brukner-Zeilinger invariants


def bz_total_variance(geam, rho):
    """sum_ak [Tr(rho P_ak^2) - Tr(rho P_ak)^2] by direct summation."""
    rho = _state(rho, geam.dim)
    ops = geam.operators
    second = np.einsum("xij,xjk,ki->x", ops, ops, rho).real
    p = born_probabilities(geam, rho)
    return float(np.sum(second - p * p))


def bz_direct(geam, rho):
    """(V, I, U) with I and U obtained by renormalizing the direct variance.

    I = V(I/d) - V(rho) and U = V(rho) - V(|0><0|), every V a direct sum.
    """
    d = geam.dim
    V = bz_total_variance(geam, rho)
    v_mixed = bz_total_variance(geam, np.eye(d) / d)
    e0 = np.zeros((d, d))
    e0[0, 0] = 1.0
    v_pure = bz_total_variance(geam, e0)
    return V, v_mixed - V, V - v_pure


def bz_formulas(params, purity, d):
    """(V, I, U) = S (d - P, P - 1/d, 1 - P) with P the purity."""
    _check_purity(purity, d)
    S = params.S
    return S * (d - purity), S * (purity - 1.0 / d), S * (1.0 - purity)


def bz_extremes(params, d):
    """(V_min, V_max) = ((d - 1) S, (d^2 - 1) S / d)."""
    return (d - 1) * params.S, (d * d - 1) * params.S / d


# ---------------------------------------------------------------------------
# skew information and coherence


def _check_munu(mu, nu):
    if not 0.0 <= mu <= 1.0:
        raise RangeViolation(f"mu must lie in [0, 1], got {mu}")
    if nu is not None and (nu < 0 or mu + nu > 1.0 + 1e-15):
        raise RangeViolation(f"need nu >= 0 and mu + nu <= 1, got mu={mu}, nu={nu}")


def _skew_mu(rho, rho_mu, rho_rest, A):
    return (np.trace(rho @ A @ A) - np.trace(rho_mu @ A @ rho_rest @ A)).real


def skew_information(rho, A, mu, nu=None, tol=DEFAULT_TOL):
    """Wigner-Yanase-Dyson skew information J_mu(rho, A).

    With ``nu`` given, the generalized version
    J_{mu,nu} = (J_mu + J_nu - J_{mu+nu}) / 2.
    """
    _check_munu(mu, nu)
    rho = np.asarray(rho)
    A = np.asarray(A)

    def j(m):
        return _skew_mu(rho, fractional_power(rho, m, tol), fractional_power(rho, 1 - m, tol), A)

    if nu is None:
        return float(j(mu))
    return float(0.5 * (j(mu) + j(nu) - j(mu + nu)))


def _weighted_overlap(geam, rho, m, tol):
    """sum_ak Tr(rho^m P rho^(1-m) P)."""
    x = fractional_power(rho, m, tol)
    y = fractional_power(rho, 1 - m, tol)
    ops = geam.operators
    return np.einsum("ij,xjk,kl,xli->", x, ops, y, ops).real


def quantum_uncertainty(geam, rho, mu, nu=None, tol=DEFAULT_TOL):
    """sum_ak J(rho, P_ak), the skew-information coherence of rho w.r.t. the GEAM."""
    _check_munu(mu, nu)
    rho = _state(rho, geam.dim)
    ops = geam.operators
    first = np.einsum("xij,xjk,ki->", ops, ops, rho).real

    def q(m):
        return first - _weighted_overlap(geam, rho, m, tol)

    if nu is None:
        return float(q(mu))
    return float(0.5 * (q(mu) + q(nu) - q(mu + nu)))


def _trace_power(rho, m, tol):
    return float(np.trace(fractional_power(rho, m, tol)).real)


def basis_uncertainty(rho, mu, tol=DEFAULT_TOL):
    """Q_mu(rho) = d - Tr(rho^mu) Tr(rho^(1-mu)), independent of the basis."""
    rho = np.asarray(rho)
    d = rho.shape[0]
    return d - _trace_power(rho, mu, tol) * _trace_power(rho, 1 - mu, tol)


def basis_uncertainty_pair(rho, mu, nu, tol=DEFAULT_TOL):
    """Q_mu + Q_nu - Q_{mu+nu}, the unnormalized two-parameter version."""
    _check_munu(mu, nu)
    return (
        basis_uncertainty(rho, mu, tol)
        + basis_uncertainty(rho, nu, tol)
        - basis_uncertainty(rho, mu + nu, tol)
    )


def coherence_formula(params, rho, mu, nu=None, tol=DEFAULT_TOL):
    """S Q_mu(rho), or (S/2)(Q_mu + Q_nu - Q_{mu+nu}) when ``nu`` is given."""
    _check_munu(mu, nu)
    if nu is None:
        return params.S * basis_uncertainty(rho, mu, tol)
    return 0.5 * params.S * basis_uncertainty_pair(rho, mu, nu, tol)


def max_coherence(params_list, rho, mu, nu, tol=DEFAULT_TOL, weight_tol=1e-10):
    """Maximal generalized skew coherence from weighted conical 2-designs.

    ``params_list`` holds (q_i, DesignParams) with sum q_i S_i = 1/d.  The
    result sum q_i Q_{mu,nu}(rho, P_i) is checked against
    (Q_mu + Q_nu - Q_{mu+nu}) / (2 d) before it is returned.
    """
    rho = np.asarray(rho)
    d = rho.shape[0]
    total_weight = sum(q * p.S for q, p in params_list)
    if abs(total_weight - 1.0 / d) > weight_tol:
        raise RangeViolation(f"sum q_i S_i = {total_weight}, expected 1/d = {1 / d}")
    value = sum(q * coherence_formula(p, rho, mu, nu, tol) for q, p in params_list)
    expected = basis_uncertainty_pair(rho, mu, nu, tol) / (2 * d)
    if abs(value - expected) > 1e-10:
        raise ArithmeticError(f"weighted coherence {value} differs from {expected}")
    return float(value)


# ---------------------------------------------------------------------------
# report


def measure_report(geam, rho, params=None, nus=(0.5, 1.0, 1.5, 2.0, 2.5, 3.0), munus=((0.5, None),)):
    """Everything above for one state, as a JSON-ready dict."""
    rho = _state(rho, geam.dim)
    d = geam.dim
    if params is None:
        params = design_params(geam)
    purity = float(np.vdot(rho, rho).real)
    purity = min(max(purity, 1.0 / d), 1.0)
    p = born_probabilities(geam, rho)
    C = float(np.dot(p, p))
    V, I, U = bz_formulas(params, purity, d)
    v_min, v_max = bz_extremes(params, d)
    Vd, Id, Ud = bz_direct(geam, rho)

    entropy = []
    for nu in nus:
        if nu >= 2:
            entropy.append({"nu": nu, "type": "renyi", "value": renyi_entropy(p, nu), "bound": renyi_bound(C, nu)})
        if nu <= 2:
            entropy.append({"nu": nu, "type": "tsallis", "value": tsallis_entropy(p, nu), "bound": tsallis_bound(C, nu)})

    coherence = [
        {
            "mu": mu,
            "nu": nu,
            "direct": quantum_uncertainty(geam, rho, mu, nu),
            "formula": coherence_formula(params, rho, mu, nu),
        }
        for mu, nu in munus
    ]
    return {
        "state_purity": purity,
        "design": params.to_dict(),
        "ioc_direct": C,
        "ioc_formula": ioc_formula(params, purity, d),
        "bz": {"V": V, "I": I, "U": U, "V_min": v_min, "V_max": v_max,
               "direct": {"V": Vd, "I": Id, "U": Ud}},
        "entropy": entropy,
        "coherence": coherence,
    }
