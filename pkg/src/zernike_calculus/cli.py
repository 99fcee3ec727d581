"""Command-line interface.

Exit codes: 0 success, 1 domain error (e.g. incompatible Neumann data),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .aggregate import GradientCoefficientPair, wavefront_eval
from .derivatives import DerivativeSign, apply_A
from .fileio import FormatError, read_boundary, read_coeffs, write_coeffs
from .laplacian import NeumannCompatibilityError, inverse_laplacian, laplacian, solve_neumann
from .polynomials import RadialMethod
from .reconstruction import reconstruct
from .tables import check_tables

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _f(x) -> str:
    return repr(float(x) + 0.0)


def cmd_eval(args):
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    alpha = read_coeffs(args.coeffs)
    axis = np.linspace(-1.0, 1.0, args.grid)
    pts = [(nu, mu) for nu in axis for mu in axis if nu * nu + mu * mu <= 1.0]
    values = wavefront_eval(alpha, pts, RadialMethod(args.method))
    rows = ["nu,mu,re,im"]
    rows += [f"{_f(nu)},{_f(mu)},{_f(v.real)},{_f(v.imag)}" for (nu, mu), v in zip(pts, values)]
    _write_text(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_grad(args):
    alpha = read_coeffs(args.coeffs)
    write_coeffs(args.out_plus, apply_A(DerivativeSign.PLUS, alpha))
    write_coeffs(args.out_minus, apply_A(DerivativeSign.MINUS, alpha))
    return EXIT_OK


def cmd_reconstruct(args):
    plus, minus = read_coeffs(args.plus), read_coeffs(args.minus)
    if plus.max_degree != minus.max_degree:
        raise UsageError(f"N headers differ: plus N={plus.max_degree}, minus N={minus.max_degree}")
    N = args.degree if args.degree is not None else plus.max_degree + 1
    report = reconstruct(GradientCoefficientPair(plus, minus), N)
    write_coeffs(args.out, report.alpha_hat)
    summary = {
        "degree": N,
        "residual_norm_sq": report.residual_norm_sq,
        "piston_undetermined": report.piston_undetermined,
        "per_m_orders": {str(m): i for m, i in sorted(report.per_m_orders.items())},
        "boundary_degrees": {str(m): n for m, n in sorted(report.boundary_degrees.items())},
    }
    text = json.dumps(summary, indent=2) + "\n"
    if args.report:
        _write_text(args.report, text)
    else:
        print(f"residual_norm_sq={report.residual_norm_sq!r} piston_undetermined=true")
    return EXIT_OK


def cmd_laplacian(args):
    alpha = read_coeffs(args.coeffs)
    result = inverse_laplacian(alpha) if args.inverse else laplacian(alpha)
    write_coeffs(args.out, result)
    return EXIT_OK


def cmd_neumann(args):
    f = read_coeffs(args.f)
    psi = read_boundary(args.psi)
    N = args.degree if args.degree is not None else f.max_degree
    try:
        sol = solve_neumann(f, psi, N, tol=args.tol)
    except NeumannCompatibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"compatibility_defect={exc.defect!r}")
        return EXIT_DOMAIN
    write_coeffs(args.out, sol.phi)
    summary = {"compatibility_defect": sol.compatibility_defect, "piston_free": sol.piston_free,
               "degree": N + 2}
    if args.report:
        _write_text(args.report, json.dumps(summary, indent=2) + "\n")
    else:
        print(f"compatibility_defect={sol.compatibility_defect!r} piston_free=true")
    return EXIT_OK


def run_selftest(laplacian_fn=None, inverse_fn=None, out=None):
    """Recompute both Laplacian tables; returns the exit code."""
    out = out or sys.stdout
    kwargs = {}
    if laplacian_fn is not None:
        kwargs["laplacian_fn"] = laplacian_fn
    if inverse_fn is not None:
        kwargs["inverse_fn"] = inverse_fn
    checks = check_tables(**kwargs)
    print("; ".join(c.summary() for c in checks), file=out)
    for c in checks:
        for failure in c.failures:
            print(f"  {c.name} FAIL {failure}", file=out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_DOMAIN


def cmd_selftest(args):
    return run_selftest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zernike-calculus",
        description="Zernike gradient/Laplacian expansions, reconstruction and Neumann solves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="synthesize a wave-front on a Cartesian grid (CSV)")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--grid", type=int, required=True, help="points per axis")
    p.add_argument("--method", default="recurrence", choices=[m.value for m in RadialMethod])
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grad", help="coefficients of dW/dnu +- i dW/dmu")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--out-plus", required=True)
    p.add_argument("--out-minus", required=True)
    p.set_defaults(func=cmd_grad)

    p = sub.add_parser("reconstruct", help="least-squares wave-front from gradient coefficients")
    p.add_argument("--plus", required=True)
    p.add_argument("--minus", required=True)
    p.add_argument("--degree", type=int, help="wave-front degree N (default: header N + 1)")
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("laplacian", help="Laplacian or inverse Laplacian of a coefficient file")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("neumann", help="solve -Lap(phi) = f with d(phi)/dn = psi")
    p.add_argument("--f", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--degree", type=int, help="degree bound N of f (default: header N)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_neumann)

    p = sub.add_parser("selftest", help="regenerate the reference Laplacian tables")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
