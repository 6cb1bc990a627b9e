"""Command-line front end: ``numrad {radius,check,suite,curve,list-checks}``.

Exit codes: 0 success, 1 a check failed, 2 bad flags/config/input,
3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .campaign import (
    ALL_CHECK_IDS,
    FAMILY_OF,
    INFORMATIONAL_IDS,
    CampaignConfig,
    default_config,
    family_of,
    run_campaign,
)
from .ensembles import ginibre, positive_definite, salt, stream
from .errors import ConfigError, NumericalError
from .inequalities import CURVE_SPANS, curve_matrix
from .linalg import PowerFamily, load_matrix
from .norms import OPERATOR, FROBENIUS, parse_norm
from .radius import (
    GridConfig,
    classical_radius_lower_oracle,
    frobenius_closed_form,
    generalized_radii,
    generalized_radius,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
VERIFY_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _grid_flags(p: argparse.ArgumentParser, coarse_default=None):
    p.add_argument("--grid-points", type=int, default=coarse_default,
                   help="coarse theta grid size")
    p.add_argument("--refine-tol", type=float, default=None, help="smallest bisection cell")


def _grid_from(args, base: GridConfig) -> GridConfig:
    kw = {}
    if args.grid_points is not None:
        kw["coarse_points"] = args.grid_points
    if args.refine_tol is not None:
        kw["refine_tol"] = args.refine_tol
    return replace(base, **kw) if kw else base


def _campaign_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="campaign config JSON (default: shipped config)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--trial-offset", type=int, help="first trial index (replay a witness)")
    p.add_argument("--dims", type=_int_list, help="comma-separated dimensions")
    p.add_argument("--norm", type=_str_list, help="comma-separated norms")
    p.add_argument("--p-values", type=_str_list, help="comma-separated Schatten exponents")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="write per-trial slack values as CSV")
    _grid_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="numrad", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"numrad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("radius", help="certified w_N of a matrix file")
    p.add_argument("matrix_file")
    p.add_argument("--norm", default="operator")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against an independent oracle")
    _grid_flags(p)

    p = sub.add_parser("check", help="run the campaign for one check id")
    p.add_argument("check_id")
    _campaign_flags(p)

    p = sub.add_parser("suite", help="run every registered check")
    _campaign_flags(p)

    p = sub.add_parser("curve", help="sample a convexity curve as CSV")
    p.add_argument("function_id", choices=sorted(CURVE_SPANS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--norm", default="operator")
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--t-step", type=float, default=0.05)
    p.add_argument("--identity", action="store_true", help="use A = I")
    p.add_argument("--x-file", help="matrix JSON for X (default: random)")
    p.add_argument("--a-file", help="matrix JSON for A (default: random positive definite)")
    _grid_flags(p)

    sub.add_parser("list-checks", help="print registered check ids")
    return parser


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_radius(args) -> int:
    spec = parse_norm(args.norm)
    A = load_matrix(args.matrix_file)
    cfg = _grid_from(args, GridConfig())
    est = generalized_radius(A, spec, cfg)
    out = {"lo": est.lo, "hi": est.hi, "theta_star": est.theta_star, "lipschitz": est.lipschitz,
           "norm": str(spec)}
    ok = True
    if args.verify:
        out["verify"], ok = _verify(A, spec, est, cfg)
    print(json.dumps(out, indent=2, sort_keys=True))
    if not ok:
        print("verification failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _verify(A, spec, est, cfg):
    scale = max(est.hi, 1.0)
    report = {}
    # the same radius with the self-contained Jacobi eigensolver
    jac = generalized_radii([A], spec, cfg, solver="jacobi")[0]
    report["jacobi"] = {"lo": jac.lo, "hi": jac.hi}
    ok = abs(jac.mid - est.mid) <= VERIFY_TOL * scale
    if spec == FROBENIUS:
        cf = frobenius_closed_form(A)
        report["closed_form"] = cf
        ok &= abs(cf - est.mid) <= VERIFY_TOL * scale
    if spec == OPERATOR:
        low = classical_radius_lower_oracle(A)
        report["sampling_lower_bound"] = low
        ok &= low <= est.hi + 1e-9
    report["ok"] = bool(ok)
    return report, bool(ok)


def _campaign_config(args) -> CampaignConfig:
    base = CampaignConfig.load(args.config) if args.config else default_config()
    data = base.to_json()
    for key, attr in (("seed", "seed"), ("trials", "trials"), ("trial_offset", "trial_offset"),
                      ("dims", "dims"), ("norms", "norm")):
        val = getattr(args, attr)
        if val is not None:
            data[key] = val
    if args.p_values is not None:
        data["p_values"] = [v if v.lower() in ("inf", "infinity") else _float(v)
                            for v in args.p_values]
    cfg = CampaignConfig.from_json(data)
    return replace(cfg, grid=_grid_from(args, cfg.grid))


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _emit_report(report, args) -> int:
    _write(report.dumps(), args.out)
    if args.csv:
        _write(report.slack_csv(), args.csv)
    return EXIT_FAIL if report.fails else EXIT_OK


def cmd_check(args) -> int:
    family_of(args.check_id)  # ConfigError listing valid ids
    cfg = _campaign_config(args)
    report = run_campaign(cfg, [args.check_id], workers=args.workers, keep_rows=bool(args.csv))
    return _emit_report(report, args)


def cmd_suite(args) -> int:
    cfg = _campaign_config(args)
    report = run_campaign(cfg, workers=args.workers, keep_rows=bool(args.csv))
    return _emit_report(report, args)


def cmd_curve(args) -> int:
    fid = args.function_id
    spec = parse_norm(args.norm)
    lo_span, hi_span = CURVE_SPANS[fid]
    t_min = lo_span if args.t_min is None else args.t_min
    t_max = hi_span if args.t_max is None else args.t_max
    if not (args.t_step > 0 and t_max >= t_min and math.isfinite(t_min) and math.isfinite(t_max)):
        raise ConfigError("need t-step > 0 and t-max >= t-min")
    if args.dim < 1:
        raise ConfigError("dim must be >= 1")
    count = int(math.floor((t_max - t_min) / args.t_step + 1e-9)) + 1
    ts = [round(t_min + i * args.t_step, 12) for i in range(count)]
    rng = stream(args.seed, salt("curve"), 0)
    A = np.eye(args.dim, dtype=complex) if args.identity else positive_definite(rng, args.dim)
    X = ginibre(rng, args.dim)
    if args.a_file:
        A = load_matrix(args.a_file)
    if args.x_file:
        X = load_matrix(args.x_file)
    P = PowerFamily(A)
    mats = [curve_matrix(fid, P, X, t) for t in ts]
    ests = generalized_radii(mats, spec, _grid_from(args, GridConfig()))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["t", "lo", "hi"])
    for t, e in zip(ts, ests):
        w.writerow([repr(t), repr(e.lo), repr(e.hi)])
    return EXIT_OK


def cmd_list_checks(args) -> int:
    for cid in ALL_CHECK_IDS:
        kind = "informational" if cid in INFORMATIONAL_IDS else "primary"
        print(f"{cid}\t{FAMILY_OF[cid]}\t{kind}")
    return EXIT_OK


COMMANDS = {
    "radius": cmd_radius,
    "check": cmd_check,
    "suite": cmd_suite,
    "curve": cmd_curve,
    "list-checks": cmd_list_checks,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # remaining input-validation errors (e.g. DimensionMismatch)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
