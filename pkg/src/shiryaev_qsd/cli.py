"""Command line front end.

Exit codes: 0 success, 1 verification or invariant failure, 2 usage or
domain error, 3 convergence failure. Output is a single JSON document
(default) or CSV on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys as _sys

from .distribution import qsd_cdf, qsd_pdf
from .errors import (
    BracketError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    KernelError,
    NonConvergenceError,
    ToleranceNotMetError,
)
from .moments import moment_frac, moment_log
from .quadrature import quad_log_moment, quad_moment
from .report import CheckRow, EvalReport, ResultRow
from .spectral import assemble_system, eigen_checks, solve_lambda
from .verify import run_checks

__all__ = ["main"]

_DUAL_ROUTE_TOL = 1e-8


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shiryaev-qsd",
        description=(
            "Quasi-stationary law of the drifting ratio process confined "
            "to (0, A): decay rate, density, distribution function and "
            "real-order moments, each cross-checkable against quadrature."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--A", type=float, required=True, help="confinement cutoff, > 0")
    common.add_argument(
        "--tol", type=float, default=1e-12, help="rate solver relative tolerance"
    )
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output shape"
    )

    sp = sub.add_parser("eig", parents=[common], help="solve the decay rate")

    sp = sub.add_parser("pdf", parents=[common], help="density at points")
    sp.add_argument("--x", type=float, action="append", required=True, help="repeatable")
    sp.add_argument("--check", action="store_true", help="append the verification battery")

    sp = sub.add_parser("cdf", parents=[common], help="distribution function at points")
    sp.add_argument("--x", type=float, action="append", required=True, help="repeatable")
    sp.add_argument("--check", action="store_true", help="append the verification battery")

    sp = sub.add_parser("moment", parents=[common], help="moments of real order")
    sp.add_argument("--s", type=float, action="append", required=True, help="repeatable")
    sp.add_argument(
        "--log", action="store_true", help="also report the expected logarithm"
    )
    sp.add_argument(
        "--check",
        action="store_true",
        help="recompute every order by quadrature and compare",
    )

    sp = sub.add_parser("table", parents=[common], help="density/cdf on a uniform grid")
    sp.add_argument("--points", type=int, default=33, help="grid size, at least 2")

    sp = sub.add_parser("verify", parents=[common], help="run the full check battery")
    sp.add_argument("--perturb-lambda", type=float, default=None, help=argparse.SUPPRESS)

    return p


def _cmd_eig(args) -> EvalReport:
    es = solve_lambda(args.A, tol=args.tol)
    rep = EvalReport(command="eig", inputs={"A": args.A, "tol": args.tol})
    rep.results = [
        ResultRow("rate", es.lam, "closed_form"),
        ResultRow("index", es.xi, "identity"),
        ResultRow("normalizer", es.C, "closed_form"),
        ResultRow("boundary-residual", es.residual, "identity"),
    ]
    rep.checks = [
        CheckRow(name, passed, metric)
        for name, passed, metric in eigen_checks(es.A, es.lam, es.xi, es.C)
    ]
    return rep


def _cmd_points(args, which: str) -> EvalReport:
    es = solve_lambda(args.A, tol=args.tol)
    f = qsd_pdf if which == "pdf" else qsd_cdf
    rep = EvalReport(
        command=which, inputs={"A": args.A, "tol": args.tol, "x": list(args.x)}
    )
    for x in args.x:
        rep.results.append(ResultRow(f"{which}[x={x!r}]", f(x, es), "closed_form"))
    if args.check:
        rep.checks = run_checks(es)
    return rep


def _cmd_moment(args) -> EvalReport:
    es = solve_lambda(args.A, tol=args.tol)
    rep = EvalReport(
        command="moment",
        inputs={"A": args.A, "tol": args.tol, "s": list(args.s), "log": args.log},
    )
    for s in args.s:
        m = moment_frac(s, es)
        rep.results.append(ResultRow(f"moment[s={s!r}]", m.value, "closed_form"))
        if args.check:
            q = quad_moment(s, es)
            rep.results.append(ResultRow(f"moment-quad[s={s!r}]", q, "quadrature"))
            rel = abs(m.value - q) / max(abs(q), 1e-300)
            rep.checks.append(
                CheckRow(f"dual-route[s={s!r}]", rel <= _DUAL_ROUTE_TOL, rel)
            )
    if args.log:
        lv = moment_log(es)
        rep.results.append(ResultRow("log-moment", lv, "closed_form"))
        if args.check:
            q = quad_log_moment(es)
            rep.results.append(ResultRow("log-moment-quad", q, "quadrature"))
            rel = abs(lv - q) / max(abs(q), 1e-300)
            rep.checks.append(CheckRow("dual-route[log]", rel <= _DUAL_ROUTE_TOL, rel))
    return rep


def _cmd_table(args) -> EvalReport:
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    es = solve_lambda(args.A, tol=args.tol)
    rep = EvalReport(
        command="table",
        inputs={"A": args.A, "tol": args.tol, "points": args.points},
    )
    for i in range(args.points):
        x = args.A * i / (args.points - 1)
        rep.results.append(ResultRow(f"pdf[x={x!r}]", qsd_pdf(x, es), "closed_form"))
        rep.results.append(ResultRow(f"cdf[x={x!r}]", qsd_cdf(x, es), "closed_form"))
    return rep


def _cmd_verify(args) -> EvalReport:
    inputs = {"A": args.A, "tol": args.tol}
    es = solve_lambda(args.A, tol=args.tol)
    if args.perturb_lambda is not None:
        inputs["perturb_lambda"] = args.perturb_lambda
        es = assemble_system(args.A, es.lam * (1.0 + args.perturb_lambda), validate=False)
    rep = EvalReport(command="verify", inputs=inputs)
    rep.checks = run_checks(es)
    return rep


_DISPATCH = {
    "eig": _cmd_eig,
    "pdf": lambda a: _cmd_points(a, "pdf"),
    "cdf": lambda a: _cmd_points(a, "cdf"),
    "moment": _cmd_moment,
    "table": _cmd_table,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return 0 if code == 0 else 2
    try:
        rep = _DISPATCH[args.command](args)
    except DomainError as e:
        print(f"error: {e}", file=_sys.stderr)
        return 2
    except (
        BracketError,
        ConvergenceError,
        NonConvergenceError,
        ToleranceNotMetError,
    ) as e:
        print(f"error: {e}", file=_sys.stderr)
        return 3
    except (ConsistencyError, KernelError) as e:
        print(f"error: {e}", file=_sys.stderr)
        return 1
    if args.format == "csv":
        _sys.stdout.write(rep.to_csv())
    else:
        _sys.stdout.write(rep.to_json() + "\n")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
