"""Command-line surface.

Subcommands:
    map      solve for a map from (t, lambda) or (t1, t2), classify,
             normalize, and emit JSON (and SVG with --format svg)
    region   tabulate the gearlike interval and Nehari band (CSV/SVG)
    params   invert (beta, gamma) to the full parameter set (JSON)
    module   conformal module table (CSV)
    sweep    gamma -> module curve at fixed beta (CSV)

Exit codes: 0 success, 2 usage/domain error, 3 numeric failure.  Output is
deterministic: floats at 17 significant digits, SVG coordinates at 6
decimals, LF line endings.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import svgplot
from .analysis import (InversionError, beta_gamma_integrals, conformal_module,
                       gearlike_region, invert_beta_gamma,
                       lambda_from_prevertices, module_gamma_sweep)
from .gear_geometry import (GEAR, PREGEAR, GearParams, NormalizationError,
                            extract_pregear, normalize_to_gear,
                            tooth_curvature)
from .geometry import symmetrize_prevertices
from .mapping import (BranchTrackingError, SolverConfig,
                      StepSizeUnderflowError, solve_goodman,
                      solve_schwarzian_ivp)
from .schwarzian import (PreverticesPair, SymmetricParams, build_symmetric,
                         convention_notes, lambda_bounds)

SCHEMA = "gearmap/1"

USAGE_EXIT = 2
NUMERIC_EXIT = 3


class UsageError(ValueError):
    pass


def _fmt_float(x) -> str:
    return f"{float(x):.17g}"


def _json_dump(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{pad}  "{k}": {_json_dump(v, indent + 1)}'
                for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{pad}  {_json_dump(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return _json_dump({"re": obj.real, "im": obj.imag}, indent)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_float(v) if isinstance(v, float) else str(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def _solver_config(args) -> SolverConfig:
    kwargs = {}
    if args.tol is not None:
        kwargs["abs_tol"] = args.tol
        kwargs["rel_tol"] = args.tol
    if args.eps is not None:
        kwargs["boundary_offset"] = args.eps
    if args.rays is not None:
        kwargs["rays"] = args.rays
    try:
        return SolverConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_map(args) -> int:
    have_sym = args.t is not None or getattr(args, "lam", None) is not None
    have_gen = args.t1 is not None or args.t2 is not None
    if have_sym == have_gen:
        raise UsageError("give either --t with --lambda, or --t1 with --t2")
    cfg = _solver_config(args)

    if have_sym:
        if args.t is None or args.lam is None:
            raise UsageError("--t and --lambda must be given together")
        try:
            params = SymmetricParams(args.t, args.lam)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        solution = solve_schwarzian_ivp(build_symmetric(params), cfg)
        parameters = {"t": params.t, "lambda": params.lam}
        bounds = lambda_bounds(params.t)
    else:
        if args.t1 is None or args.t2 is None:
            raise UsageError("--t1 and --t2 must be given together")
        try:
            pair = PreverticesPair(args.t1, args.t2)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        solution = solve_goodman(pair, cfg)
        parameters = {"t1": pair.t1, "t2": pair.t2}
        bounds = None

    desc = extract_pregear(solution)
    curvatures = tooth_curvature(solution)
    beta = gamma = None
    b_minus, b_plus = desc.b_minus, desc.b_plus
    norm_error = None
    if desc.classification in (GEAR, PREGEAR):
        try:
            _, gear = normalize_to_gear(desc, solution)
            beta, gamma = gear.beta, gear.gamma
        except NormalizationError as exc:
            norm_error = str(exc)

    report = {
        "schema": SCHEMA,
        "command": "map",
        "parameters": parameters,
        "classification": desc.classification,
        "beta": beta,
        "gamma": gamma,
        "b_minus": b_minus,
        "b_plus": b_plus,
        "tooth_curvature_upper": curvatures[0],
        "tooth_curvature_lower": curvatures[1],
        "diagnostics": {
            "wronskian_drift": solution.wronskian_drift,
            "not_univalent_evidence": solution.not_univalent_evidence,
            "lambda_bounds": list(bounds) if bounds else None,
            "fit_residual": desc.diagnostics.get("worst_fit_residual"),
            "symmetry_residual": desc.diagnostics.get("symmetry_residual"),
            "tooth_circle_gap": desc.diagnostics.get("tooth_circle_gap"),
            "reason": desc.diagnostics.get("reason"),
            "normalization_error": norm_error,
            "conventions": convention_notes(),
        },
    }
    _write(args.out, _json_dump(report) + "\n")
    if args.format == "svg":
        svg = svgplot.map_figure(solution, desc)
        _write(args.svg_out or _derive(args.out, ".svg"), svg)
    return 0


def _derive(out, suffix):
    if out in (None, "-"):
        return "-"
    base = out[:-5] if out.endswith(".json") else out
    return base + suffix


def cmd_region(args) -> int:
    if args.n < 10:
        raise UsageError("need a grid of at least 10 points")
    if not (0.0 < args.tmin < args.tmax < 0.5 * math.pi):
        raise UsageError("need 0 < tmin < tmax < pi/2")
    grid = np.linspace(args.tmin, args.tmax, args.n)
    sample = gearlike_region(grid, probe=args.probe)
    rows = [(float(t), float(lm), float(lp), float(nl), float(nh))
            for t, lm, lp, nl, nh in zip(sample.t, sample.lam_minus,
                                         sample.lam_plus, sample.nehari_lo,
                                         sample.nehari_hi)]
    if args.format == "svg":
        _write(args.out, svgplot.region_figure(sample))
    else:
        text = _csv(rows, ["t", "lambda_minus", "lambda_plus",
                           "nehari_lo", "nehari_hi"])
        _write(args.out, text)
    return 0


def cmd_params(args) -> int:
    if args.beta is None or args.gamma is None:
        raise UsageError("params requires --beta and --gamma")
    try:
        gear = GearParams(beta=args.beta, gamma=args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    pair = invert_beta_gamma(gear)
    q, t = symmetrize_prevertices(pair.t1, pair.t2)
    lam = lambda_from_prevertices(pair)
    module = conformal_module(t)
    lo, hi = lambda_bounds(t)
    report = {
        "schema": SCHEMA,
        "command": "params",
        "parameters": {"beta": gear.beta, "gamma": gear.gamma},
        "t1": pair.t1,
        "t2": pair.t2,
        "q": q,
        "t": t,
        "lambda": lam,
        "M": module.M,
        "diagnostics": {
            "lambda_bounds": [lo, hi],
            "lambda_inside_bounds": bool(lo < lam < hi),
            "pi_minus_t2": math.pi - pair.t2,
            "t2_near_pi": bool(pair.t2 > math.pi - 0.15),
            "note": ("gamma close to pi forces t2 close to pi"
                     if pair.t2 > math.pi - 0.15 else None),
        },
    }
    _write(args.out, _json_dump(report) + "\n")
    return 0


def cmd_module(args) -> int:
    ts = list(args.t or [])
    if args.tmin is not None or args.tmax is not None:
        if args.tmin is None or args.tmax is None or args.n is None:
            raise UsageError("grid needs --tmin, --tmax and --n together")
        ts.extend(np.linspace(args.tmin, args.tmax, args.n))
    if not ts:
        raise UsageError("module requires --t or a --tmin/--tmax/--n grid")
    for t in ts:
        if not (0.0 < t < 0.5 * math.pi):
            raise UsageError(f"t={t} outside (0, pi/2)")
    rows = [(float(t), conformal_module(float(t)).M) for t in ts]
    _write(args.out, _csv(rows, ["t", "M"]))
    return 0


def cmd_sweep(args) -> int:
    if args.beta is None or not args.beta > 1.0:
        raise UsageError("sweep requires --beta greater than 1")
    if args.n < 3:
        raise UsageError("need at least 3 grid points")
    if not (0.0 < args.gmin < args.gmax < math.pi):
        raise UsageError("need 0 < gmin < gmax < pi")
    grid = np.linspace(args.gmin, args.gmax, args.n)
    points = module_gamma_sweep(args.beta, grid)
    peak = max(range(len(points)), key=lambda i: points[i].M)
    rows = [(p.gamma, p.M, 1 if i == peak else 0)
            for i, p in enumerate(points)]
    _write(args.out, _csv(rows, ["gamma", "M", "is_argmax"]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gearmap",
        description="Conformal maps of the disk onto one-tooth gear and "
                    "pregear domains")
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="solve, classify, measure one map")
    p_map.add_argument("--t", type=float)
    p_map.add_argument("--lambda", dest="lam", type=float)
    p_map.add_argument("--t1", type=float)
    p_map.add_argument("--t2", type=float)
    p_map.add_argument("--eps", type=float)
    p_map.add_argument("--tol", type=float)
    p_map.add_argument("--rays", type=int)
    p_map.add_argument("--format", choices=("json", "svg"), default="json")
    p_map.add_argument("--out", default="-")
    p_map.add_argument("--svg-out", default=None)
    p_map.set_defaults(func=cmd_map)

    p_region = sub.add_parser("region", help="gearlike region table/figure")
    p_region.add_argument("--tmin", type=float, default=0.05)
    p_region.add_argument("--tmax", type=float, default=1.52)
    p_region.add_argument("--n", type=int, default=60)
    p_region.add_argument("--probe", action="store_true")
    p_region.add_argument("--format", choices=("csv", "svg"), default="csv")
    p_region.add_argument("--out", default="-")
    p_region.set_defaults(func=cmd_region)

    p_params = sub.add_parser("params", help="invert (beta, gamma)")
    p_params.add_argument("--beta", type=float)
    p_params.add_argument("--gamma", type=float)
    p_params.add_argument("--out", default="-")
    p_params.set_defaults(func=cmd_params)

    p_module = sub.add_parser("module", help="conformal module M(t)")
    p_module.add_argument("--t", type=float, action="append")
    p_module.add_argument("--tmin", type=float)
    p_module.add_argument("--tmax", type=float)
    p_module.add_argument("--n", type=int)
    p_module.add_argument("--out", default="-")
    p_module.set_defaults(func=cmd_module)

    p_sweep = sub.add_parser("sweep", help="gamma -> module curve")
    p_sweep.add_argument("--beta", type=float)
    p_sweep.add_argument("--gmin", type=float, default=0.15)
    p_sweep.add_argument("--gmax", type=float, default=2.95)
    p_sweep.add_argument("--n", type=int, default=60)
    p_sweep.add_argument("--out", default="-")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE_EXIT
    except (StepSizeUnderflowError, BranchTrackingError, InversionError,
            NormalizationError, ArithmeticError) as exc:
        diag = {"schema": SCHEMA, "error": type(exc).__name__,
                "message": str(exc)}
        sys.stdout.write(_json_dump(diag) + "\n")
        return NUMERIC_EXIT


if __name__ == "__main__":
    sys.exit(main())
