"""Command-line front end: bounds tables, end-to-end audits, oracle comparisons.

Output contract: table (human), csv (plot-ready), or json (one object with
inputs, rows, summary).  Numbers are printed with 12 significant digits and
re-parse to the same bytes, so identical invocations are byte-identical;
the version banner goes to stderr and only under --verbose.

Exit codes: 0 ok, 2 parse error, 3 unsupported (operator, n) combination,
4 bound violation found by audit, 5 infeasible LP discretization.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .bounds import OperatorKind, bound_exact, summarize_shape
from .geometry import ShapeError, load_shape
from .minimizer import (
    MinimizationInput,
    dimension_constants,
    minimizer_profile,
    optimal_moment,
    scaled_mass,
)
from .verification import (
    LpInfeasibleError,
    SpectrumSample,
    audit,
    lp_minimize,
    quadrature_moment,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_VIOLATION = 4
EXIT_INFEASIBLE = 5

BOUND_COLUMNS = ("m", "liyau", "melas", "exact", "asymptotic", "theorem", "epsilon")
AUDIT_COLUMNS = ("m", "sum", "liyau", "melas", "exact", "theorem", "slack")
ORACLE_COLUMNS = ("closed", "lp", "rel_gap", "quad_residual", "degenerate")


def _fmt(value) -> str:
    """Canonical cell rendering: 12 significant digits for floats."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _json_render(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value in output: {value}")
        return format(value, ".12g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_render(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(
            json.dumps(str(k)) + ":" + _json_render(v) for k, v in value.items()
        ) + "}"
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def _emit(fmt: str, columns, inputs: dict, rows: list[dict], summary: dict, trailer=()):
    if fmt == "json":
        print(_json_render({"inputs": inputs, "rows": rows, "summary": summary}))
        return
    cells = [[_fmt(row.get(c)) for c in columns] for row in rows]
    if fmt == "csv":
        print(",".join(columns))
        for line in cells:
            print(",".join(line))
    else:
        widths = [
            max(len(columns[j]), max((len(r[j]) for r in cells), default=0))
            for j in range(len(columns))
        ]
        print("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
        for line in cells:
            print("  ".join(c.rjust(w) for c, w in zip(line, widths)))
    for line in trailer:
        print(line)


def _parse_m_range(text: str) -> list[int]:
    """Integer "a" or inclusive integer range "a..b", both >= 1."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ValueError(f"bad m argument {text!r}; expected an integer or a..b") from None
    if lo < 1 or hi < lo:
        raise ValueError(f"bad m range {text!r}; need 1 <= a <= b")
    return list(range(lo, hi + 1))


def _load_spectrum(path: str, operator: str) -> SpectrumSample:
    """Read eigenvalues from a text/CSV file, one value per line (last column)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ValueError(f"cannot read spectrum file {path}: {exc}") from exc
    values: list[float] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        fields = []
        for token in line.replace(",", " ").split():
            try:
                fields.append(float(token))
            except ValueError:
                fields = []
                break
        if not fields:
            if lineno == 1:
                continue  # header row
            raise ValueError(f"spectrum file {path}: non-numeric line {lineno}: {line!r}")
        values.append(fields[-1])
    if not values:
        raise ValueError(f"spectrum file {path} contains no eigenvalues")
    return SpectrumSample(
        operator=operator, eigenvalues=tuple(sorted(values)), source="external"
    )


def _geometry_inputs(shape) -> dict:
    geom = summarize_shape(shape)
    return {"n": geom.n, "volume": geom.volume, "inertia": geom.inertia}


def cmd_bound(args) -> int:
    try:
        shape = load_shape(args.shape)
        ms = _parse_m_range(args.m)
    except (ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    kind = OperatorKind(args.operator)
    geom = summarize_shape(shape)
    if kind == OperatorKind.BILAPLACE and geom.n != 2:
        print(
            f"error: bilaplace bounds are published for n=2 only, shape has n={geom.n}",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED
    rows = []
    for m in ms:
        rep = bound_exact(kind, geom, m, sharp=args.sharp_beta)
        rows.append(
            {
                "m": rep.m,
                "liyau": rep.liyau,
                "melas": rep.melas,
                "exact": rep.exact,
                "asymptotic": rep.asymptotic,
                "theorem": rep.two_term,
                "epsilon": rep.epsilon,
                "degenerate": rep.degenerate,
            }
        )
    inputs = {
        "command": "bound",
        "operator": kind.value,
        "m": args.m,
        "sharp": bool(args.sharp_beta),
        **_geometry_inputs(shape),
    }
    summary = {"count": len(rows)}
    _emit(args.format, BOUND_COLUMNS, inputs, rows, summary)
    return EXIT_OK


def cmd_audit(args) -> int:
    try:
        shape = load_shape(args.shape)
        spectrum = None
        if args.spectrum is not None:
            spectrum = _load_spectrum(args.spectrum, args.operator)
            if len(spectrum.eigenvalues) < args.m_max:
                raise ValueError(
                    f"spectrum file has {len(spectrum.eigenvalues)} eigenvalues, "
                    f"need m_max={args.m_max}"
                )
        if args.m_max < 1:
            raise ValueError(f"m-max must be >= 1, got {args.m_max}")
        if args.workers < 1:
            raise ValueError(f"workers must be >= 1, got {args.workers}")
    except (ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    kind = OperatorKind(args.operator)
    geom = summarize_shape(shape)
    if kind == OperatorKind.BILAPLACE and geom.n != 2:
        print(
            f"error: bilaplace bounds are published for n=2 only, shape has n={geom.n}",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED
    report = audit(kind, shape, args.m_max, spectrum=spectrum, workers=args.workers)
    rows = [
        {
            "m": row.m,
            "sum": row.spectrum_sum,
            "liyau": row.liyau,
            "melas": row.melas,
            "exact": row.exact,
            "theorem": row.two_term,
            "slack": row.slack,
        }
        for row in report.rows
    ]
    inputs = {
        "command": "audit",
        "operator": kind.value,
        "m_max": args.m_max,
        "spectral": report.spectral,
        "spectrum_source": spectrum.source if spectrum is not None else
        ("exact_box" if report.spectral else None),
        **_geometry_inputs(shape),
    }
    diff = report.exact_minus_two_term
    summary = {
        "ok": report.ok,
        "violations": list(report.violations),
        "min_slack": report.min_slack,
        "argmin_m": report.argmin_m,
        "exact_minus_theorem_min": None if diff is None else diff[0],
        "exact_minus_theorem_max": None if diff is None else diff[1],
    }
    trailer = [f"violation: {v}" for v in report.violations] if args.format != "json" else []
    _emit(args.format, AUDIT_COLUMNS, inputs, rows, summary, trailer)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_oracle(args) -> int:
    try:
        inp = MinimizationInput(n=args.n, cap=args.cap, slope=args.slope, mass=args.mass)
        if args.grid < 50:
            raise ValueError(f"grid must have >= 50 points, got {args.grid}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    closed = optimal_moment(inp)
    try:
        lp = lp_minimize(inp, grid_points=args.grid, r_max=args.r_max)
    except LpInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    profile = minimizer_profile(inp)
    quad = dimension_constants(inp.n).sphere_area * quadrature_moment(profile, inp.n + 1)
    m_star = scaled_mass(inp)
    rows = [
        {
            "closed": closed,
            "lp": lp,
            "rel_gap": abs(lp - closed) / closed,
            "quad_residual": abs(quad - closed) / closed,
            "degenerate": m_star < 1.0,
        }
    ]
    inputs = {
        "command": "oracle",
        "n": args.n,
        "cap": args.cap,
        "slope": args.slope,
        "mass": args.mass,
        "grid": args.grid,
        "r_max": args.r_max,
    }
    summary = {"m_star": m_star, "branch": profile.kind}
    _emit(args.format, ORACLE_COLUMNS, inputs, rows, summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenfloor",
        description="Lower bounds for sums of eigenvalues, with independent verification.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("table", "json", "csv"), default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--verbose", action="store_true", help="print a version banner to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser(
        "bound", parents=[common],
        help="evaluate every lower bound for a shape over a range of m",
    )
    p_bound.add_argument("--shape", required=True, help="JSON shape document")
    p_bound.add_argument(
        "--operator", required=True, choices=[k.value for k in OperatorKind]
    )
    p_bound.add_argument(
        "--m", required=True, help="integer or inclusive range a..b"
    )
    p_bound.add_argument(
        "--sharp-beta", action="store_true",
        help="use lemma-level safety factors in the theorem column",
    )
    p_bound.set_defaults(func=cmd_bound)

    p_audit = sub.add_parser(
        "audit", parents=[common],
        help="check bound orderings (and spectra, where available) for m = 1..m_max",
    )
    p_audit.add_argument("--shape", required=True, help="JSON shape document")
    p_audit.add_argument(
        "--operator", required=True, choices=[k.value for k in OperatorKind]
    )
    p_audit.add_argument("--m-max", required=True, type=int)
    p_audit.add_argument(
        "--spectrum", default=None,
        help="external eigenvalue file (one value per line; cross-checked on boxes)",
    )
    p_audit.add_argument(
        "--workers", type=int, default=1,
        help="parallel lattice enumeration workers (output is identical)",
    )
    p_audit.set_defaults(func=cmd_audit)

    p_oracle = sub.add_parser(
        "oracle", parents=[common],
        help="compare the closed-form minimum against LP and quadrature oracles",
    )
    p_oracle.add_argument("--n", required=True, type=int)
    p_oracle.add_argument("--cap", required=True, type=float, help="pointwise bound M")
    p_oracle.add_argument("--slope", required=True, type=float, help="Lipschitz bound L")
    p_oracle.add_argument("--mass", required=True, type=float, help="prescribed mass m")
    p_oracle.add_argument("--grid", type=int, default=400)
    p_oracle.add_argument("--r-max", type=float, default=None)
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        print(f"eigenfloor {__version__}", file=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
