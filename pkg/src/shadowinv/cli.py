"""``shadowinv`` command line.

Exit codes: 0 success, 1 validation failure, 2 numerical failure, 3 bad arguments.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .exceptions import NumericalError, ValidationError
from .io import parse_h, resolve_operator, resolve_povm
from .povms import canonical_estimators
from .product import scaling_curve
from .sampler import estimate_observable, exact_moments, fourth_moment, outcome_probabilities, sample_outcomes
from .sweeps import sweep_equator, sweep_sphere
from .variance import (
    OptimizerOptions,
    coefficient_vector,
    coefficients_from_estimators,
    optimize_shadow_norm,
    sample_complexity_bound,
    shadow_norm,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def write_csv(rows, out):
    """Write dict rows with a fixed column order and 12 significant digits."""
    if not rows:
        return
    fields = list(rows[0])
    handle = open(out, "w", newline="") if out and out != "-" else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_fmt(row[f]) for f in fields])
    finally:
        if handle is not sys.stdout:
            handle.close()


def _report(pairs, stream=None):
    stream = stream or sys.stdout
    print(" ".join(f"{k}={_fmt(v)}" for k, v in pairs), file=stream)


def _complex_str(h):
    return ",".join(f"{z.real:.12g}:{z.imag:.12g}" for z in np.atleast_1d(h))


def _opts(args):
    return OptimizerOptions(restarts=args.restarts, max_evals=args.max_evals, tol=args.tol, seed=args.seed)


def _canonical_or_none(name):
    return canonical_estimators(name) if name else None


def cmd_validate(args):
    povm, _ = resolve_povm(args.povm)
    dec = povm.decomposition
    print(f"d={povm.dim} n={povm.n} D={dec.rank} free={dec.n_free}")
    return EXIT_OK


def cmd_norm(args):
    povm, name = resolve_povm(args.povm)
    A = resolve_operator(args.observable, args.theta, args.phi)
    df = povm.dual
    cv = coefficient_vector(A, df)
    pairs = [("norm_h0", shadow_norm(cv, povm))]
    reference = _canonical_or_none(name)
    if reference is not None:
        pairs.append(("norm_canonical", shadow_norm(coefficients_from_estimators(A, reference), povm)))
    if args.h is not None:
        h = parse_h(args.h)
        pairs.append(("norm_h", shadow_norm(cv.with_h(h), povm)))
    if args.optimize:
        res = optimize_shadow_norm(A, df, povm, _opts(args), reference)
        pairs += [
            ("norm_opt", res.norm_opt),
            ("converged", str(res.converged).lower()),
            ("evaluations", res.evaluations),
        ]
        best = res.norm_opt
    else:
        best = pairs[-1][1]
    pairs.append(("bound", sample_complexity_bound(best, args.epsilon, args.delta)))
    _report(pairs)
    if args.optimize:
        print(f"h_opt={_complex_str(res.h_opt)}")
    return EXIT_OK


def cmd_sweep_sphere(args):
    povm, name = resolve_povm(args.povm)
    n_theta, n_phi = _parse_grid(args.grid, (61, 61))
    rows = sweep_sphere(povm, n_theta, n_phi, _opts(args), builtin=name)
    write_csv(rows, args.out)
    return EXIT_OK


def cmd_sweep_equator(args):
    povm, _ = resolve_povm(args.povm)
    (n,) = _parse_grid(args.grid, (181,), dims=1)
    rows = sweep_equator(povm, n, _opts(args))
    write_csv(rows, args.out)
    return EXIT_OK


def cmd_scale(args):
    rows = []
    for r in scaling_curve(args.baseline, args.optimized, args.n_max):
        rows.append(
            {
                "N": r["N"],
                "baseline_pow": r["norm_a"],
                "optimized_pow": r["norm_b"],
                "ratio": r["ratio"],
                "bound_baseline": sample_complexity_bound(r["norm_a"], args.epsilon, args.delta),
                "bound_optimized": sample_complexity_bound(r["norm_b"], args.epsilon, args.delta),
            }
        )
    write_csv(rows, args.out)
    return EXIT_OK


def cmd_simulate(args):
    povm, _ = resolve_povm(args.povm)
    A = resolve_operator(args.observable, args.theta, args.phi)
    rho = resolve_operator(args.state, args.theta, args.phi)
    df = povm.dual
    configs = [("h0", coefficient_vector(A, df))]
    if args.h is not None:
        configs.append(("h_user", coefficient_vector(A, df, parse_h(args.h))))
    if args.optimize and df.n_free:
        res = optimize_shadow_norm(A, df, povm, _opts(args))
        configs.append(("h_opt", res.coefficients))

    probs = outcome_probabilities(rho, povm)
    if args.exact:
        hist, shots = probs, None
    else:
        hist, shots = sample_outcomes(probs, args.shots, args.seed), args.shots

    rows, violated = [], False
    for label, cv in configs:
        mean_exact, second_exact, var_exact = exact_moments(rho, povm, cv)
        mean_emp, second_emp = estimate_observable(hist, cv)
        norm = shadow_norm(cv, povm)
        if shots:
            sigma_mean = math.sqrt(max(var_exact, 0.0) / shots)
            sigma_second = math.sqrt(max(fourth_moment(probs, cv) - second_exact**2, 0.0) / shots)
        else:
            sigma_mean = sigma_second = 0.0
        violation = second_emp > norm + 5 * sigma_second + 1e-9
        violated |= violation
        rows.append(
            {
                "config": label,
                "h": _complex_str(cv.h) if cv.h.size else "",
                "mean_emp": mean_emp.real,
                "mean_exact": mean_exact.real,
                "sigma_mean": sigma_mean,
                "second_emp": second_emp,
                "second_exact": second_exact,
                "sigma_second": sigma_second,
                "shadow_norm": norm,
                "violation": str(violation).lower(),
            }
        )
    for row in rows:
        _report(row.items())
    if args.out:
        write_csv(rows, args.out)
    return EXIT_INVALID if violated else EXIT_OK


def _parse_grid(text, default, dims=2):
    if text is None:
        return default
    try:
        parts = tuple(int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"bad --grid value {text!r}") from None
    if len(parts) != dims or min(parts) < 1:
        raise UsageError(f"--grid needs {dims} positive integer(s) separated by 'x'")
    return parts


def build_parser():
    parser = _Parser(prog="shadowinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, povm_default=None, observable=False):
        p.add_argument("--povm", default=povm_default, required=povm_default is None)
        if observable:
            p.add_argument("--observable", required=True)
        p.add_argument("--theta", type=float, default=0.0)
        p.add_argument("--phi", type=float, default=0.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=8)
        p.add_argument("--max-evals", type=int, default=5000)
        p.add_argument("--tol", type=float, default=1e-7)
        p.add_argument("--epsilon", type=float, default=0.1)
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--out", default=None)

    p = sub.add_parser("validate", help="check a POVM and print d, n, D and n-D")
    p.add_argument("--povm", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("norm", help="shadow norms of one observable")
    common(p, observable=True)
    p.add_argument("--optimize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--h", default=None, help="free parameters as re:im pairs, comma separated")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("sweep-sphere", help="Bloch-sphere sweep of baseline and optimised norms (CSV)")
    common(p, povm_default="pauli6")
    p.add_argument("--grid", default=None, help="N_THETAxN_PHI, default 61x61")
    p.set_defaults(func=cmd_sweep_sphere)

    p = sub.add_parser("sweep-equator", help="equatorial-projector sweep of optimised norms (CSV)")
    common(p, povm_default="planar4")
    p.add_argument("--grid", default=None, help="number of phi points in [0, pi], default 181")
    p.set_defaults(func=cmd_sweep_equator)

    p = sub.add_parser("scale", help="multiplicative scaling table for N sites (CSV)")
    p.add_argument("--baseline", type=float, default=1.5)
    p.add_argument("--optimized", type=float, default=1.15)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("simulate", help="Monte Carlo check of means and the variance bound")
    common(p, observable=True)
    p.add_argument("--state", required=True)
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--exact", action="store_true", help="use exact probabilities instead of sampling")
    p.add_argument("--optimize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--h", default=None)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (EXIT_USAGE)
        return exc.code
    try:
        return args.func(args)
    except ValidationError as exc:
        print(json.dumps({"status": "invalid", "reason": exc.reason, "detail": str(exc)}))
        return EXIT_INVALID
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(json.dumps({"status": "error", "reason": "numerical_failure", "detail": str(exc)}), file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, KeyError, FileNotFoundError, ValueError) as exc:
        print(f"shadowinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
