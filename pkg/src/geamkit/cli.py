"""Command-line interface.

Exit codes: 0 success, 1 validation or criterion failure, 2 usage error.
"""
import argparse
import os
import sys

import numpy as np

from . import entanglement as ent
from . import measures as ms
from .errors import GeamError, NotADesign, PositivityViolation, UnsupportedPreset
from .geam import build_geam, check_conical_design, design_params, search_positive_S, validate_geam
from .io import geam_to_dict, load_config, load_geam, load_state, write_json
from .presets import PRESET_NAMES, closed_form_row, preset
from .states import (
    DensityMatrix,
    SchmidtVector,
    bipartite_from_schmidt,
    random_mixed,
    random_pure,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _munu(text):
    parts = _float_list(text)
    if len(parts) == 1:
        return parts[0], None
    if len(parts) == 2:
        return parts[0], parts[1]
    raise argparse.ArgumentTypeError(f"expected 'mu' or 'mu,nu', got {text!r}")


def _design_summary(geam):
    try:
        return design_params(geam).to_dict()
    except NotADesign:
        return None


# ---------------------------------------------------------------------------


def cmd_preset(args):
    try:
        geam = preset(args.name, args.dim, b=args.b, N=args.frames, M=args.outcomes, basis=args.basis)
    except UnsupportedPreset as exc:
        raise UsageError(str(exc)) from exc
    params = design_params(geam)
    row = closed_form_row(args.name, args.dim, b=args.b, N=args.frames, M=args.outcomes)
    if args.out:
        write_json(args.out, geam_to_dict(geam))
    if args.params_out:
        write_json(args.params_out, params.to_dict())
    write_json("-", {
        "preset": args.name,
        "dim": args.dim,
        "operators": int(sum(geam.sizes)),
        "measured": {"S": params.S, "mu": params.mu, "C_max": params.C_max,
                     "kappa_plus": params.kappa_plus, "kappa_minus": params.kappa_minus},
        "closed_form": row,
    })
    return EXIT_OK


def cmd_build(args):
    config = load_config(args.config)
    if args.search_s:
        from dataclasses import replace

        config = replace(config, target_S=search_positive_S(config))
    geam = build_geam(config)
    write_json(args.out, geam_to_dict(geam))
    write_json("-", {"target_S": config.target_S, "design": _design_summary(geam)})
    return EXIT_OK


def cmd_validate(args):
    geam = load_geam(args.geam)
    report = validate_geam(geam, args.tol)
    chk = check_conical_design(geam, args.tol)
    out = report.to_dict()
    out["conical_design"] = {
        "is_design": chk.is_design,
        "kappa_plus": chk.kappa_plus,
        "kappa_minus": chk.kappa_minus,
        "residual": chk.residual,
    }
    out["design_params"] = _design_summary(geam)
    write_json(args.out or "-", out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_measure(args):
    geam = load_geam(args.geam)
    state = load_state(args.state)
    if state.bipartite or state.dim != geam.dim:
        raise UsageError("measure needs a single-system state of the GEAM's dimension")
    params = design_params(geam)
    report = ms.measure_report(geam, state.matrix, params, nus=args.nu, munus=args.munu)
    write_json(args.out or "-", report)
    return EXIT_OK


def cmd_detect(args):
    geam = load_geam(args.geam)
    state = load_state(args.state)
    if not state.bipartite or state.dim != geam.dim:
        raise UsageError("detect needs a bipartite state on d x d with d the GEAM's dimension")
    write_json(args.out or "-", ent.detection_report(geam, state.matrix))
    return EXIT_OK


def cmd_random_state(args):
    rng = np.random.default_rng(args.seed)
    if args.schmidt is not None:
        state = bipartite_from_schmidt(SchmidtVector(args.schmidt), args.dim, rng)
    elif args.bipartite:
        if args.rank in (None, 1):
            state = random_pure(args.dim, rng, bipartite=True)
        else:
            state = DensityMatrix(random_mixed(args.dim**2, args.rank, rng).matrix, bipartite=True)
    else:
        state = random_mixed(args.dim, args.rank or 1, rng)
    write_json(args.out or "-", state.to_dict())
    return EXIT_OK


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all(echo=print)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="geamkit",
        description="Generalized equiangular measurements and the measures built from them.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("preset", help="build a standard conical 2-design", formatter_class=fmt)
    p.add_argument("--name", required=True, choices=PRESET_NAMES)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--b", type=float, default=None, help="purity parameter; mum/gsic default to (1 + 1/d)/2")
    p.add_argument("--frames", type=int, default=None, help="N for nm_povm")
    p.add_argument("--outcomes", type=int, default=None, help="M for nm_povm")
    p.add_argument("--basis", choices=("auto", "gellmann"), default="auto")
    p.add_argument("--out", default=None, help="write the GEAM JSON here")
    p.add_argument("--params-out", default=None, help="write the design parameters JSON here")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("build", help="build a GEAM from a GeamConfig JSON file", formatter_class=fmt)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--search-s", action="store_true", help="replace b/target_S by the largest positive common S")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="check the defining trace conditions", formatter_class=fmt)
    p.add_argument("--geam", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("measure", help="entropies, BZ invariants and coherence of a state", formatter_class=fmt)
    p.add_argument("--geam", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--nu", type=_float_list, default=[0.5, 1.0, 1.5, 2.0, 2.5, 3.0],
                   help="comma-separated entropy orders")
    p.add_argument("--munu", type=_munu, nargs="+", default=[(0.5, None)],
                   help="skew-information parameters, each 'mu' or 'mu,nu'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("detect", help="Schmidt-number and concurrence bounds", formatter_class=fmt)
    p.add_argument("--geam", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("random-state", help="sample a density matrix", formatter_class=fmt)
    p.add_argument("--dim", type=int, required=True, help="local dimension d")
    p.add_argument("--rank", type=int, default=None, help="rank (1 = pure)")
    p.add_argument("--bipartite", action="store_true", help="state on C^d (x) C^d")
    p.add_argument("--schmidt", type=_float_list, default=None,
                   help="comma-separated Schmidt coefficients (implies bipartite pure)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_random_state)

    p = sub.add_parser("selftest", help="run the acceptance suite", formatter_class=fmt)
    p.set_defaults(func=cmd_selftest)
    return parser


def _limit_threads():
    n = os.environ.get("GEAMKIT_THREADS")
    if not n:
        return None
    from threadpoolctl import threadpool_limits

    return threadpool_limits(int(n))


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    limiter = _limit_threads()
    try:
        return args.func(args)
    except (UsageError, UnsupportedPreset, FileNotFoundError) as exc:
        print(f"geamkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PositivityViolation as exc:
        print(f"geamkit: PositivityViolation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except GeamError as exc:
        print(f"geamkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        if limiter is not None:
            limiter.restore_original_limits()


if __name__ == "__main__":
    sys.exit(main())
