"""Command-line interface.

Subcommands:
    covariants  - compute H, G, S, T, (U,S), (U,T) for a quantic JSON file
    syzygy      - verify the four syzygy identities for a quantic
    classify    - classify the Weierstrass equation on one Hamilton curve
    flow        - integrate the Hamilton flow, write a trajectory CSV
    report      - run the full fixture/property suite; CSVs + figures

Exit codes: 0 success; 1 usage or input error; 2 verification failure
(a residual that should be identically zero is not).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import BinaryQuantic, as_rational, poly_json_dict, rational_str
from . import covariants as cov
from . import flow as fl
from . import weierstrass as ws
from .report import DEFAULT_SEED, run_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class UsageError(Exception):
    pass


def _load_quantic(path: str) -> BinaryQuantic:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from None
    try:
        return BinaryQuantic.from_json_dict(obj)
    except ValueError as exc:
        raise UsageError(f"bad quantic in {path}: {exc}") from None


def _parse_start(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f'start must be "p,q", got {text!r}')
    try:
        return as_rational(parts[0]), as_rational(parts[1])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad start point {text!r}: {exc}") from None


def _fmt_float(x: float) -> float:
    # 17 significant digits round-trips any double
    return float(f"{x:.17g}")


COVARIANT_BUILDERS = {
    "H": lambda u: cov.hessian(u),
    "G": lambda u: cov.covariant_g(u),
    "S": lambda u: cov.covariant_s(u),
    "T": lambda u: cov.covariant_t(u),
    "dS": lambda u: cov.grad_s(u),
    "dT": lambda u: cov.grad_t(u),
}


def cmd_covariants(args) -> int:
    u = _load_quantic(args.infile)
    names = args.emit or list(COVARIANT_BUILDERS)
    out = {"order": u.order, "covariants": {}}
    for name in names:
        try:
            out["covariants"][name] = poly_json_dict(COVARIANT_BUILDERS[name](u))
        except ValueError as exc:
            raise UsageError(f"covariant {name}: {exc}") from None
    text = json.dumps(out, indent=2)
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_syzygy(args) -> int:
    u = _load_quantic(args.infile)
    try:
        residuals = cov.all_syzygy_residuals(u)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    verdict = {
        name: "zero" if res.is_zero else "nonzero"
        for name, res in residuals.items()
    }
    print(json.dumps(verdict, indent=2))
    return EXIT_OK if all(v == "zero" for v in verdict.values()) else EXIT_VERIFICATION


def cmd_classify(args) -> int:
    u = _load_quantic(args.infile)
    start = _parse_start(args.start)
    try:
        c = ws.classify(u, start)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(c.to_json_dict(), indent=2))
    return EXIT_OK


def cmd_flow(args) -> int:
    u = _load_quantic(args.infile)
    start = _parse_start(args.start)
    if args.t_end <= 0:
        raise UsageError("--t-end must be positive")
    if args.dt <= 0:
        raise UsageError("--dt must be positive")
    try:
        report = fl.integrate(
            u,
            (float(start[0]), float(start[1])),
            t_end=args.t_end,
            dt=args.dt,
            method=args.method,
            output_stride=args.stride,
            rtol=args.rtol,
            atol=args.atol,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.outfile:
        from .report import _write_traj_csv

        _write_traj_csv(report, args.outfile)
    if args.plot_dir:
        from .plotting import render_flow_figures

        stem = os.path.splitext(os.path.basename(args.infile))[0]
        render_flow_figures(report, args.plot_dir, stem)
    summary = {
        "u_drift_max": _fmt_float(report.u_drift_max),
        "residual_max": _fmt_float(report.residual_max),
        "second_order_error_max": _fmt_float(report.second_order_error_max),
        "proper": fl.monitor_properness(report, tol=args.proper_tol),
        "lame_parameter": _fmt_float(report.samples[0].lame_parameter),
        "diverged": report.diverged,
    }
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_report(args) -> int:
    seed = args.seed
    if seed is None:
        env = os.environ.get("QH_SEED")
        seed = int(env) if env else DEFAULT_SEED
    summary = run_report(seed=seed, out_dir=args.out_dir)
    text = json.dumps(summary, indent=2, sort_keys=True)
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.out_dir and args.outfile is None:
        with open(os.path.join(args.out_dir, "summary.json"), "w") as fh:
            fh.write(text + "\n")
    if not summary["all_passed"]:
        failed = [k for k, v in summary["sweeps"].items() if v["passed"] != v["count"]]
        print(f"verification failures in: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quanticflow",
        description="Covariants, syzygies, and Hamilton flows of binary quantics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cov = sub.add_parser("covariants", help="compute the covariant bundle")
    p_cov.add_argument("--in", dest="infile", required=True, help="quantic JSON file")
    p_cov.add_argument("--out", dest="outfile", help="output JSON path (default stdout)")
    p_cov.add_argument(
        "--emit", action="append", choices=sorted(COVARIANT_BUILDERS),
        help="restrict to one covariant (repeatable; default all)",
    )
    p_cov.set_defaults(func=cmd_covariants)

    p_syz = sub.add_parser("syzygy", help="verify the four syzygy identities")
    p_syz.add_argument("--in", dest="infile", required=True)
    p_syz.set_defaults(func=cmd_syzygy)

    p_cls = sub.add_parser("classify", help="classify the Weierstrass equation")
    p_cls.add_argument("--in", dest="infile", required=True)
    p_cls.add_argument("--start", required=True, help='rational start point "p,q"')
    p_cls.set_defaults(func=cmd_classify)

    p_flow = sub.add_parser("flow", help="integrate the Hamilton flow")
    p_flow.add_argument("--in", dest="infile", required=True)
    p_flow.add_argument("--start", required=True, help='start point "p,q"')
    p_flow.add_argument("--t-end", type=float, default=0.1)
    p_flow.add_argument("--dt", type=float, default=1e-4)
    p_flow.add_argument(
        "--method", choices=["rk4", "rk45_adaptive"], default="rk4"
    )
    p_flow.add_argument("--stride", type=int, default=1, help="steps per CSV sample")
    p_flow.add_argument("--rtol", type=float, default=1e-10)
    p_flow.add_argument("--atol", type=float, default=1e-12)
    p_flow.add_argument("--proper-tol", type=float, default=1e-8)
    p_flow.add_argument("--out", dest="outfile", help="trajectory CSV path")
    p_flow.add_argument("--plot-dir", help="directory for rendered figures")
    p_flow.set_defaults(func=cmd_flow)

    p_rep = sub.add_parser("report", help="run the full fixture/property suite")
    p_rep.add_argument(
        "--seed", type=int, default=None,
        help=f"sweep seed (default QH_SEED or {DEFAULT_SEED})",
    )
    p_rep.add_argument("--out", dest="outfile", help="summary JSON path")
    p_rep.add_argument(
        "--out-dir", default="report_out",
        help="directory for fixture CSVs and figures (default report_out)",
    )
    p_rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except cov.InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
