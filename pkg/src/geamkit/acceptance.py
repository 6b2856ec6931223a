"""Exit-criteria suite: every design identity checked over many random states.

Used both by ``tests/test_acceptance.py`` and by ``geamkit selftest``.  Each
``criterion_*`` function returns a :class:`CriterionResult`; none of them
raise on a failed check.
"""
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import entanglement as ent
from . import measures as ms
from .geam import (
    FrameSpec,
    GeamConfig,
    build_geam,
    check_conical_design,
    design_params,
)
from .presets import closed_form_row, default_b, preset
from .states import (
    SchmidtVector,
    bipartite_vector_from_schmidt,
    maximally_entangled,
    random_mixed,
    random_separable,
    random_state_vector,
)

SEED = 20240611


@dataclass(frozen=True)
class PresetCase:
    label: str
    name: str
    d: int
    b: float = None
    N: int = None
    M: int = None
    basis: str = "auto"

    def table(self):
        return closed_form_row(self.name, self.d, b=self.b, N=self.N, M=self.M)


def acceptance_cases():
    cases = [PresetCase(f"mub d={d}", "mub", d) for d in (2, 3, 5)]
    cases += [PresetCase(f"sic d={d}", "sic", d) for d in (2, 3)]
    for d in (2, 3, 4, 5):
        cases.append(PresetCase(f"mum d={d}", "mum", d, b=default_b(d)))
        cases.append(PresetCase(f"gsic d={d}", "gsic", d, b=default_b(d)))
    # Gell-Mann partitions; b = 0.45 keeps every d = 3 shape positive
    for d, b in ((2, default_b(2)), (3, 0.45)):
        for N in range(1, d * d):
            if (d * d - 1) % N == 0:
                M = (d * d - 1) // N + 1
                cases.append(PresetCase(f"nm_povm d={d} N={N} M={M}", "nm_povm", d, b, N, M, "gellmann"))
    return cases


@lru_cache(maxsize=None)
def build_case(case):
    return preset(case.name, case.d, b=case.b, N=case.N, M=case.M, basis=case.basis)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} -- {self.detail} ({self.seconds:.2f}s)"


def _timed(number, title):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _rng(offset):
    return np.random.default_rng(SEED + offset)


def _random_states(d, count, rng, pure_fraction=0.25):
    out = []
    for _ in range(count):
        if rng.random() < pure_fraction:
            out.append(random_mixed(d, 1, rng).matrix)
        else:
            out.append(random_mixed(d, int(rng.integers(1, d + 1)), rng).matrix)
    return out


def _probabilities(geam, states):
    stack = np.asarray(states)
    return np.clip(np.einsum("xij,sji->sx", geam.operators, stack).real, 0.0, None)


# ---------------------------------------------------------------------------


@_timed(1, "closed-form preset parameters")
def criterion_closed_form(cases=None, tol=1e-10):
    worst, where = 0.0, ""
    for case in cases or acceptance_cases():
        g = build_case(case)
        t = case.table()
        d = g.dim
        ops = g.operators
        gram = np.einsum("xij,yji->xy", ops, ops).real
        traces = np.einsum("xii->x", ops).real
        labels = np.repeat(np.arange(g.N), g.sizes)
        same = labels[:, None] == labels[None, :]
        off = same & ~np.eye(len(ops), dtype=bool)
        a = traces
        devs = {
            "N": abs(g.N - t["N"]),
            "M": max(abs(m - t["M"]) for m in g.sizes),
            "gamma": max(abs(f.operators.sum(0)[0, 0].real - t["gamma"]) for f in g.frames),
            "a": np.max(np.abs(a - t["a"])),
            "b": np.max(np.abs(np.diag(gram) / a**2 - t["b"])),
            "c": np.max(np.abs((gram / np.outer(a, a))[off] - t["c"])),
        }
        mu = sum(np.mean(np.einsum("kii->k", f.operators).real) * f.gamma for f in g.frames) / d
        p = design_params(g)
        devs.update(mu=abs(mu - t["mu"]), S=abs(p.S - t["S"]), C_max=abs(p.C_max - t["C_max"]))
        key = max(devs, key=devs.get)
        if devs[key] > worst:
            worst, where = devs[key], f"{case.label}:{key}"
    return worst <= tol, f"max deviation {worst:.2e} ({where or 'all'}) over {len(cases or acceptance_cases())} presets"


@_timed(2, "conical 2-design identity")
def criterion_conical(cases=None, tol=1e-10):
    worst, bad = 0.0, []
    for case in cases or acceptance_cases():
        g = build_case(case)
        chk = check_conical_design(g, tol)
        p = design_params(g)
        dev = max(chk.residual, abs(chk.kappa_plus - p.kappa_plus), abs(chk.kappa_minus - p.kappa_minus))
        worst = max(worst, dev)
        if not chk.is_design or dev > tol:
            bad.append(case.label)
    return not bad, f"max residual {worst:.2e}" + (f"; failing {bad}" if bad else "")


@_timed(3, "sum of squared operators")
def criterion_square_sum(cases=None, tol=1e-10):
    worst = 0.0
    for case in cases or acceptance_cases():
        g = build_case(case)
        p = design_params(g)
        sq = np.einsum("xij,xjk->ik", g.operators, g.operators)
        worst = max(worst, float(np.linalg.norm(sq - (p.C_max + (g.dim - 1) * p.S) * np.eye(g.dim))))
    return worst <= tol, f"max Frobenius deviation {worst:.2e}"


@_timed(4, "purity / index-of-coincidence law")
def criterion_ioc(cases=None, samples=200, tol=1e-10):
    worst = 0.0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        p = design_params(g)
        rng = _rng(400 + i)
        states = [random_mixed(g.dim, None, rng).matrix for _ in range(samples)]
        probs = _probabilities(g, states)
        for rho, pr in zip(states, probs):
            purity = float(np.vdot(rho, rho).real)
            worst = max(worst, abs(float(pr @ pr) - ms.ioc_formula(p, purity, g.dim)))
    return worst <= tol, f"max |C_direct - C_formula| = {worst:.2e} ({samples} states/preset)"


RENYI_NUS = (2.0, 2.5, 3.0)
TSALLIS_NUS = (0.5, 1.0, 1.5, 2.0)


@_timed(5, "entropic uncertainty bounds")
def criterion_entropy(cases=None, samples=1000, slack=1e-12, eq_tol=1e-12):
    violations, worst_eq, checked = 0, 0.0, 0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        rng = _rng(500 + i)
        probs = _probabilities(g, _random_states(g.dim, samples, rng))
        for pr in probs:
            C = float(pr @ pr)
            for nu in RENYI_NUS:
                checked += 1
                if ms.renyi_entropy(pr, nu) < ms.renyi_bound(C, nu) - slack:
                    violations += 1
            for nu in TSALLIS_NUS:
                checked += 1
                if ms.tsallis_entropy(pr, nu) < ms.tsallis_bound(C, nu) - slack:
                    violations += 1
        # equality at the maximally mixed state, where the distribution is uniform
        pr = ms.born_probabilities(g, np.eye(g.dim) / g.dim)
        C = float(pr @ pr)
        worst_eq = max(worst_eq, abs(ms.shannon_entropy(pr) + np.log(C)))
        for nu in TSALLIS_NUS:
            worst_eq = max(worst_eq, abs(ms.tsallis_entropy(pr, nu) - ms.tsallis_bound(C, nu)))
        worst_eq = max(worst_eq, abs(ms.renyi_entropy(pr, 2.0) - ms.renyi_bound(C, 2.0)))
    ok = violations == 0 and worst_eq <= eq_tol
    return ok, f"{violations} violations in {checked} checks; equality gap at I/d {worst_eq:.2e}"


@_timed(6, "Brukner-Zeilinger invariants")
def criterion_bz(cases=None, samples=200, tol=1e-10, extreme_tol=1e-12):
    worst, worst_ext = 0.0, 0.0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        p = design_params(g)
        d = g.dim
        rng = _rng(600 + i)
        for rho in _random_states(d, samples, rng):
            purity = float(np.vdot(rho, rho).real)
            direct = ms.bz_direct(g, rho)
            formula = ms.bz_formulas(p, purity, d)
            worst = max(worst, max(abs(x - y) for x, y in zip(direct, formula)))
        v_min, v_max = ms.bz_extremes(p, d)
        pure = random_mixed(d, 1, rng).matrix
        worst_ext = max(worst_ext, abs(ms.bz_total_variance(g, pure) - v_min))
        worst_ext = max(worst_ext, abs(ms.bz_total_variance(g, np.eye(d) / d) - v_max))
    ok = worst <= tol and worst_ext <= extreme_tol
    return ok, f"max direct-formula gap {worst:.2e}; extremes gap {worst_ext:.2e}"


COHERENCE_MUS = (0.1, 0.3, 0.5)


@_timed(7, "skew-information coherence")
def criterion_coherence(cases=None, samples=100, tol=1e-8, exact_tol=1e-10):
    worst, worst_exact = 0.0, 0.0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        d = g.dim
        if d > 4:
            continue
        p = design_params(g)
        rng = _rng(700 + i)
        for _ in range(samples):
            rho = random_mixed(d, d, rng).matrix
            for mu in COHERENCE_MUS:
                gap = abs(ms.quantum_uncertainty(g, rho, mu) - ms.coherence_formula(p, rho, mu))
                worst = max(worst, gap)
        pure = random_mixed(d, 1, rng).matrix
        for mu in COHERENCE_MUS:
            worst_exact = max(worst_exact, abs(ms.quantum_uncertainty(g, np.eye(d) / d, mu)))
            worst_exact = max(worst_exact, abs(ms.quantum_uncertainty(g, pure, mu) - p.S * (d - 1)))
    ok = worst <= tol and worst_exact <= exact_tol
    return ok, f"max direct-formula gap {worst:.2e}; I/d and pure-state gap {worst_exact:.2e}"


@_timed(8, "pure-state trace norm of the correlation matrix")
def criterion_pure_norm(cases=None, samples=200, tol=1e-9):
    worst = 0.0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        d = g.dim
        if d > 4:
            continue
        p = design_params(g)
        rng = _rng(800 + i)
        for _ in range(samples):
            psi = random_state_vector(d * d, rng)
            rho = np.outer(psi, psi.conj())
            lam = np.linalg.svd(psi.reshape(d, d), compute_uv=False)
            worst = max(worst, abs(ent.correlation_matrix(g, rho).trace_norm - ent.pure_state_norm(lam, p)))
    return worst <= tol, f"max |norm - closed form| = {worst:.2e}"


@_timed(9, "Schmidt-number criterion")
def criterion_schmidt(cases=None, samples=500, tol=1e-9):
    false_pos, worst_sat = 0, 0.0
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        d = g.dim
        if d > 4:
            continue
        p = design_params(g)
        rng = _rng(900 + i)
        for _ in range(samples):
            rho = random_separable(d, int(rng.integers(1, 5)), rng).matrix
            violated, _, _ = ent.check_schmidt_criterion(g, rho, 1, params=p, tol=tol)
            false_pos += violated
        for r in range(1, d + 1):
            psi = bipartite_vector_from_schmidt(SchmidtVector.uniform(r), d, rng)
            _, lhs, rhs = ent.check_schmidt_criterion(g, np.outer(psi, psi.conj()), r, params=p)
            worst_sat = max(worst_sat, abs(lhs - rhs))
    ok = false_pos == 0 and worst_sat <= tol
    return ok, f"{false_pos} false positives; max saturation gap {worst_sat:.2e}"


@_timed(10, "concurrence lower bound")
def criterion_concurrence(cases=None, samples=500, tol=1e-9):
    worst = -np.inf
    for i, case in enumerate(cases or acceptance_cases()):
        g = build_case(case)
        d = g.dim
        if d > 4:
            continue
        p = design_params(g)
        rng = _rng(1000 + i)
        for _ in range(samples):
            psi = random_state_vector(d * d, rng)
            rho = np.outer(psi, psi.conj())
            worst = max(worst, ent.concurrence_lower_bound(g, rho, params=p) - ent.pure_concurrence(psi))
    mub2 = preset("mub", 2)
    bell = maximally_entangled(2).matrix
    bound = ent.concurrence_lower_bound(mub2, bell)
    exact = ent.pure_concurrence(bell)
    eq_gap = max(abs(bound - 1.0), abs(exact - 1.0))
    ok = worst <= tol and eq_gap <= tol
    return ok, f"max (bound - exact) = {worst:.2e}; Bell state bound {bound:.12f} vs {exact:.12f}"


def sufficiency_pairs():
    """Pairs of structurally different designs with equal (S, C_max)."""
    g1 = (4 + np.sqrt(6)) / 10  # gamma_1^2/2 + gamma_2^2/3 = 1/4, the mu of an N = 1 design in d = 2
    two_frame = build_geam(GeamConfig(2, [FrameSpec(2, g1), FrameSpec(3, 1 - g1)], target_S=0.03))
    return [
        ("gsic d=3 SIC basis vs Gell-Mann", preset("gsic", 3, b=0.45), preset("gsic", 3, b=0.45, basis="gellmann")),
        ("mum d=3 MUB basis vs Gell-Mann", preset("mum", 3, b=0.45), preset("mum", 3, b=0.45, basis="gellmann")),
        ("d=2 one frame M=4 vs frames M=2,3", preset("gsic", 2, b=0.59), two_frame),
    ]


def two_constant_profile(geam, states, pure_vectors, mus=COHERENCE_MUS):
    """Every quantity whose value should depend only on (S, C_max)."""
    p = design_params(geam)
    d = geam.dim
    out = [p.S, p.C_max]
    for rho in states:
        purity = float(np.vdot(rho, rho).real)
        pr = ms.born_probabilities(geam, rho)
        out.append(float(pr @ pr))
        out.append(ms.ioc_formula(p, purity, d))
        out.extend(ms.bz_direct(geam, rho))
        out.extend(ms.bz_formulas(p, purity, d))
        for mu in mus:
            out.append(ms.quantum_uncertainty(geam, rho, mu))
            out.append(ms.coherence_formula(p, rho, mu))
        out.append(ms.quantum_uncertainty(geam, rho, 0.2, 0.3))
        out.append(ms.coherence_formula(p, rho, 0.2, 0.3))
        for nu in RENYI_NUS:
            out.append(ms.renyi_bound(float(pr @ pr), nu))
        for nu in TSALLIS_NUS:
            out.append(ms.tsallis_bound(float(pr @ pr), nu))
    for psi in pure_vectors:
        rho = np.outer(psi, psi.conj())
        lam = np.linalg.svd(psi.reshape(d, d), compute_uv=False)
        out.append(ent.correlation_matrix(geam, rho).trace_norm)
        out.append(ent.pure_state_norm(lam, p))
        out.append(ent.concurrence_lower_bound(geam, rho, params=p, raw=True))
        out.append(ent.schmidt_number_bound(p, 1))
    return np.array(out)


@_timed(11, "two-constant sufficiency")
def criterion_sufficiency(samples=50, tol=1e-8):
    worst, labels = 0.0, []
    for j, (label, first, second) in enumerate(sufficiency_pairs()):
        d = first.dim
        rng = _rng(1100 + j)
        states = [random_mixed(d, d, rng).matrix for _ in range(samples)]
        vectors = [random_state_vector(d * d, rng) for _ in range(samples)]
        gap = float(np.max(np.abs(two_constant_profile(first, states, vectors) - two_constant_profile(second, states, vectors))))
        worst = max(worst, gap)
        labels.append(f"{label}: {gap:.1e}")
    return worst <= tol, "; ".join(labels)


CRITERIA = (
    criterion_closed_form,
    criterion_conical,
    criterion_square_sum,
    criterion_ioc,
    criterion_entropy,
    criterion_bz,
    criterion_coherence,
    criterion_pure_norm,
    criterion_schmidt,
    criterion_concurrence,
    criterion_sufficiency,
)


def run_all(echo=print):
    results = []
    for crit in CRITERIA:
        res = crit()
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
