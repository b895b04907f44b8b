"""Command-line front end.

Subcommands: ``exact``, ``coeffs``, ``stats``, ``approx`` operate on a
matrix file in the JSON schema {"n": n, "re": [...], "im": [...]};
``experiment`` runs a config-driven Monte Carlo sweep and exits nonzero
iff any acceptance-tagged check in the config fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .approximate import approx_ptas, approx_simple, approx_truncated, default_config
from .coefficients import coefficient_submatrix, coefficients_interpolation
from .harness import ExperimentConfig, evaluate_checks, run_experiment, write_results
from .logcomplex import LogComplex
from .matrices import load_matrix
from .exact import CapacityError, permanent_naive, permanent_ryser
from .symmetric import compute_V_D


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _print_log_value(value: LogComplex) -> None:
    if value.is_zero:
        print("value: 0 (exact zero)")
        return
    print(f"log_mag: {value.log_mag!r}")
    print(f"phase: {value.phase!r}")
    if value.log_mag < 700.0:
        print(f"value: {value.to_complex()!r}")


def _cmd_exact(args) -> int:
    M = load_matrix(args.matrix)
    fn = permanent_ryser if args.method == "ryser" else permanent_naive
    _print_log_value(fn(M))
    return 0


def _cmd_coeffs(args) -> int:
    A = load_matrix(args.matrix)
    if args.method == "interp":
        coeffs = coefficients_interpolation(A).coeffs
        if args.k_max is not None:
            coeffs = coeffs[: args.k_max + 1]
    else:
        k_max = A.shape[0] if args.k_max is None else args.k_max
        coeffs = [coefficient_submatrix(A, k) for k in range(k_max + 1)]
    json.dump([[c.real, c.imag] for c in coeffs], sys.stdout)
    print()
    return 0


def _cmd_stats(args) -> int:
    A = load_matrix(args.matrix)
    stats = compute_V_D(A, args.m)
    out = {
        "n": stats.n,
        "C": [[c.real, c.imag] for c in stats.C],
        "V": [[v.real, v.imag] for v in stats.V],
        "D": [[d.real, d.imag] for d in stats.D],
    }
    json.dump(out, sys.stdout)
    print()
    return 0


def _cmd_approx(args) -> int:
    R = load_matrix(args.matrix)
    cfg = default_config(args.eps)
    if args.algorithm == "truncated":
        est = approx_truncated(R, args.mu, cfg)
    elif args.algorithm == "simple":
        est = approx_simple(R, args.mu, args.xi)
    else:
        est = approx_ptas(R, args.mu, args.xi, cfg)
    print(f"algorithm: {est.algorithm}")
    print(f"t_used: {est.t_used}")
    _print_log_value(est.value)
    return 0


def _cmd_experiment(args) -> int:
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_json(json.load(fh))
    records = run_experiment(cfg, threads=args.threads, progress=args.progress)
    if args.out:
        write_results(records, args.out, format=args.format)
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    results = evaluate_checks(records, cfg.checks)
    failed_acceptance = False
    for res in results:
        status = "PASS" if res["passed"] else "FAIL"
        tag = " [acceptance]" if res["acceptance"] else ""
        print(f"{status}{tag} {res['name']}: {res['value']:.6g}")
        if res["acceptance"] and not res["passed"]:
            failed_acceptance = True
    return 1 if failed_acceptance else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permest")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("exact", help="exact permanent of a matrix file")
    ex.add_argument("--matrix", required=True)
    ex.add_argument("--method", choices=["ryser", "naive"], default="ryser")
    ex.set_defaults(fn=_cmd_exact)

    co = sub.add_parser("coeffs", help="expansion coefficients a_k")
    co.add_argument("--matrix", required=True)
    co.add_argument("--method", choices=["submatrix", "interp"], required=True)
    co.add_argument("--k-max", type=int, default=None)
    co.set_defaults(fn=_cmd_coeffs)

    st = sub.add_parser("stats", help="column sums and V/D estimators")
    st.add_argument("--matrix", required=True)
    st.add_argument("--m", type=int, required=True)
    st.set_defaults(fn=_cmd_stats)

    ap = sub.add_parser("approx", help="approximate the permanent")
    ap.add_argument("--matrix", required=True)
    ap.add_argument("--mu", type=_parse_complex, required=True)
    ap.add_argument("--eps", type=float, required=True)
    ap.add_argument("--algorithm", choices=["truncated", "simple", "ptas"], required=True)
    ap.add_argument("--xi", type=_parse_complex, default=0j,
                    help="quasi-variance of the entry distribution (RE,IM)")
    ap.set_defaults(fn=_cmd_approx)

    xp = sub.add_parser("experiment", help="run a Monte Carlo sweep from a JSON config")
    xp.add_argument("--config", required=True)
    xp.add_argument("--out", default=None)
    xp.add_argument("--format", choices=["csv", "json"], default="csv")
    xp.add_argument("--threads", type=int, default=1)
    xp.add_argument("--progress", action="store_true")
    xp.set_defaults(fn=_cmd_experiment)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CapacityError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
