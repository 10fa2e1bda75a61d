"""Command line entry point: ``sl2-cocycles {verify,eval,list-suites}``.

Exit codes: 0 success, 1 verification failure or genericity rejection,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import core, harness
from .cocycles import AFunctional, NFunctional, beta_A_closed, beta_N_closed, omega_A, omega_N
from .core import Field, Mat2, PairGA, ProjPoint, Vec2
from .errors import CocycleError, DetDrift, FieldMismatch, GenericityError, UnknownSuite
from .sampling import SamplerConfig
from .spaces import GenericityConfig

CSV_COLUMNS = [
    "suite", "field", "trials_requested", "trials_run", "rejected",
    "max_residual", "tolerance", "failures", "seed", "elapsed_ms",
]
FORMULAS = ("project_N", "project_A", "cross_ratio", "beta_N", "beta_A", "omega_N", "omega_A")


class UsageError(Exception):
    pass


# --- parsing ---------------------------------------------------------------


def parse_scalar(token: str, field: Field):
    token = token.strip()
    try:
        if "j" in token:
            value = complex(token)
        else:
            value = float(token)
        return field.scalar(value)
    except (ValueError, FieldMismatch) as exc:
        raise UsageError(f"cannot read {token!r} as a {field.value} scalar: {exc}") from None


def parse_vector(token: str, field: Field) -> Vec2:
    parts = token.split(",")
    if len(parts) != 2:
        raise UsageError(f"vector {token!r} must have two comma-separated components")
    return Vec2(*(parse_scalar(p, field) for p in parts))


def parse_point(token: str) -> ProjPoint:
    token = token.strip().lower()
    if token in ("inf", "infinity", "∞"):
        return ProjPoint.infinity()
    try:
        x = float(token)
    except ValueError:
        raise UsageError(f"cannot read {token!r} as a point of P^1(R)") from None
    if not math.isfinite(x):
        raise UsageError(f"use 'inf' for the point at infinity, got {token!r}")
    return ProjPoint.at(x)


def parse_pair(token: str, margin: float) -> PairGA:
    parts = token.split(",")
    if len(parts) != 2:
        raise UsageError(f"pair {token!r} must have two comma-separated points")
    return PairGA(parse_point(parts[0]), parse_point(parts[1]), distinct_margin=margin)


def parse_matrix(token: str, field: Field) -> Mat2:
    parts = token.split(",")
    if len(parts) != 4:
        raise UsageError("matrix needs four comma-separated entries a11,a12,a21,a22")
    try:
        return Mat2(*(parse_scalar(p, field) for p in parts))
    except DetDrift as exc:
        raise UsageError(f"matrix is not in SL(2): {exc}") from None


def parse_n_functional(token: str) -> NFunctional:
    try:
        parts = [float(p) for p in token.split(",")]
    except ValueError:
        raise UsageError(f"cannot read --alpha {token!r}") from None
    if len(parts) == 1:
        return NFunctional(parts[0])
    if len(parts) == 2:
        return NFunctional(*parts)
    raise UsageError("--alpha takes c or c_re,c_im")


# --- formatting ------------------------------------------------------------


def fmt_number(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    return f"{x:.15g}"


def _finite_or_none(x):
    return x if isinstance(x, (int, float)) and math.isfinite(x) else None


def _json_report(report: harness.VerificationReport) -> dict:
    d = report.to_dict()
    d["max_residual"] = _finite_or_none(d["max_residual"])
    for f in d["failures"]:
        f["residual"] = _finite_or_none(f["residual"])
    return d


def render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_json_report(r) for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow([
                r.suite, r.field, r.trials_requested, r.trials_run, r.total_rejected,
                repr(r.max_residual), repr(r.tolerance), len(r.failures), r.seed,
                repr(r.elapsed_ms),
            ])
        return buf.getvalue()
    lines = [
        f"SUITE {r.suite} field={r.field} trials={r.trials_run} rejected={r.total_rejected} "
        f"max_residual={r.max_residual:.3e} tol={r.tolerance:.1e} {'PASS' if r.passed else 'FAIL'}"
        for r in reports
    ]
    return "\n".join(lines) + "\n"


def render_value(formula: str, value, fmt: str) -> str:
    if fmt == "json":
        v = {"re": value.real, "im": value.imag} if isinstance(value, complex) else value
        return json.dumps({"formula": formula, "value": v}) + "\n"
    if fmt == "csv":
        return f"formula,value\n{formula},{fmt_number(value)}\n"
    return fmt_number(value) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# --- commands --------------------------------------------------------------


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an integer") from None


def _margins(args, defaults: GenericityConfig) -> GenericityConfig:
    return GenericityConfig(
        indep_margin=args.indep_margin if args.indep_margin is not None else defaults.indep_margin,
        distinct_margin=args.distinct_margin if args.distinct_margin is not None else defaults.distinct_margin,
        orientation_margin=(
            args.orientation_margin if args.orientation_margin is not None else defaults.orientation_margin
        ),
    )


def _selected_suites(selection: str, field: Field) -> list[str]:
    available = harness.suites_for(field)
    if selection == "all":
        return available
    names = [s.strip() for s in selection.split(",") if s.strip()]
    for name in names:
        if name not in harness.SUITES:
            raise UsageError(f"unknown suite {name!r}; see list-suites")
        if name not in available:
            raise UsageError(f"suite {name} is not defined over the {field.value} field")
    return names


def cmd_verify(args) -> int:
    field = Field(args.field)
    seed = args.seed if args.seed is not None else _env_int("COCYCLE_SEED")
    trials = args.trials if args.trials is not None else _env_int("COCYCLE_TRIALS")
    base = SamplerConfig()
    try:
        cfg = SamplerConfig(
            seed=base.seed if seed is None else seed,
            trials=base.trials if trials is None else trials,
            margins=_margins(args, base.margins),
            field=field,
            tol=args.tol,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    names = _selected_suites(args.suite, field)
    if args.mutation is not None and args.mutation not in harness.MUTATIONS:
        raise UsageError(f"unknown mutation {args.mutation!r}")
    reports = [harness.run_suite(name, cfg, mutation=args.mutation) for name in names]
    _write(render_reports(reports, args.format), args.output)
    return 0 if all(r.passed for r in reports) else 1


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.formula} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def evaluate(args):
    field = Field(args.field)
    margins = _margins(args, GenericityConfig())
    f = args.formula
    if f in ("project_N", "project_A"):
        _require(args, "matrix")
        g = parse_matrix(args.matrix, field)
        return core.project_N(g) if f == "project_N" else core.project_A(g)
    if f == "cross_ratio":
        if not args.points or len(args.points) != 4:
            raise UsageError("cross_ratio needs --points with exactly four points")
        pts = [parse_point(p) for p in args.points]
        return core.cross_ratio(*pts, distinct_margin=margins.distinct_margin)
    _require(args, "alpha")
    if f in ("beta_N", "omega_N"):
        phi = parse_n_functional(args.alpha)
        if f == "beta_N":
            _require(args, "u", "v")
            return beta_N_closed(phi, parse_vector(args.u, field), parse_vector(args.v, field), margins)
        _require(args, "v0", "v1", "v2")
        vs = [parse_vector(t, field) for t in (args.v0, args.v1, args.v2)]
        return omega_N(phi, *vs, margins)
    if field is not Field.REAL:
        raise UsageError(f"{f} is only defined over the real field")
    try:
        psi = AFunctional(float(args.alpha))
    except ValueError:
        raise UsageError("--alpha for the A case is a single real coefficient") from None
    if f == "beta_A":
        _require(args, "x", "y")
        x, y = (parse_pair(t, margins.distinct_margin) for t in (args.x, args.y))
        return beta_A_closed(psi, x, y, margins)
    _require(args, "x", "y", "z")
    x, y, z = (parse_pair(t, margins.distinct_margin) for t in (args.x, args.y, args.z))
    return omega_A(psi, x, y, z, margins, convention=args.convention)


def cmd_eval(args) -> int:
    try:
        value = evaluate(args)
    except GenericityError as exc:
        print(f"genericity rejection ({exc.margin}): {exc}", file=sys.stderr)
        return 1
    _write(render_value(args.formula, value, args.format), args.output)
    return 0


def cmd_list_suites(args) -> int:
    fields = [Field(args.field)] if args.field else list(Field)
    for name, suite in harness.SUITES.items():
        if any(f in suite.fields for f in fields):
            kinds = ",".join(sorted(f.value for f in suite.fields))
            print(f"{name:26s} [{kinds}] tol={suite.tolerance:.0e} {suite.doc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2-cocycles",
        description="Evaluate and verify explicit SL(2) cocycles on G/N and G/A.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, field_default="real"):
        p.add_argument("--field", choices=[f.value for f in Field], default=field_default)
        p.add_argument("--format", choices=["json", "csv", "text"], default="text")
        p.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
        p.add_argument("--indep-margin", type=float, default=None)
        p.add_argument("--distinct-margin", type=float, default=None)
        p.add_argument("--orientation-margin", type=float, default=None)

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default="all", help="suite name, comma-separated list, or 'all'")
    v.add_argument("--trials", type=int, default=None, help="trials per suite (env COCYCLE_TRIALS)")
    v.add_argument("--seed", type=int, default=None, help="64-bit seed (env COCYCLE_SEED)")
    v.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    v.add_argument("--mutation", default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate one formula")
    common(e)
    e.add_argument("formula", choices=FORMULAS)
    e.add_argument("--alpha", help="functional: c, or c_re,c_im for the N case")
    e.add_argument("--matrix", help="a11,a12,a21,a22")
    e.add_argument("--points", nargs="+", help="four points of P^1(R); 'inf' is infinity")
    e.add_argument("--u")
    e.add_argument("--v")
    e.add_argument("--v0")
    e.add_argument("--v1")
    e.add_argument("--v2")
    e.add_argument("--x", help="pair of points, e.g. inf,0")
    e.add_argument("--y")
    e.add_argument("--z")
    e.add_argument("--convention", choices=["derivation", "theorem"], default="derivation")
    e.set_defaults(func=cmd_eval)

    ls = sub.add_parser("list-suites", help="list registered suites")
    ls.add_argument("--field", choices=[f.value for f in Field], default=None)
    ls.set_defaults(func=cmd_list_suites)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownSuite, FieldMismatch, DetDrift) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CocycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # e.g. non-positive margins
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
