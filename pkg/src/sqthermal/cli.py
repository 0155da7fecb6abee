"""Command-line interface.

Subcommands: `stats` (closed-form point values), `verify` (closed form vs
Fock oracle, single point or built-in grid), `spectral` (atom
decomposition report), `sweep` (one parameter over a linear range).

Exit codes: 0 success, 1 verification or truncation failure, 2 malformed
input or domain error. Output is deterministic: identical invocations
produce byte-identical bytes. Angles are radians; numbers are printed with
12 significant digits in csv/json and 6 in tables.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .closed_form import ModeParameters, StateKind, number_statistics
from .fock import DEFAULT_DIM_MAX, SQUEEZE_R_MAX, ConvergenceError, converge_statistics
from .params import DimensionlessTemperature
from .spectral import (
    InfiniteTemp,
    equilibrium_temperature,
    evaluate_representation,
    normalization_integral,
    spectral_for_photons_in_squeezed_thermal,
    spectral_for_squeezed_in_photon_thermal,
)
from .verify import (
    DEFAULT_COMPARE_TOL,
    ORACLE_TOL_FACTOR,
    rel_err,
    verification_grid,
    verify_point,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_STATE_CHOICES = tuple(kind.value for kind in StateKind)


def _fmt12(v: float) -> str:
    return format(float(v), ".12g")


def _fmt6(v: float) -> str:
    return format(float(v), ".6g")


def _round12(v: float) -> float:
    return float(_fmt12(v))


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_csv(header: list[str], rows: list[list[str]]) -> None:
    print(",".join(header))
    for row in rows:
        print(",".join(row))


def _print_table(header: list[str], rows: list[list[str]]) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=float, default=None, help="squeeze magnitude (>= 0)")
    parser.add_argument("--phi", type=float, default=None, help="squeeze phase, radians")
    parser.add_argument("--alpha-mag", type=float, default=None, help="|alpha|")
    parser.add_argument("--alpha-phase", type=float, default=None,
                        help="phase of alpha, radians")
    parser.add_argument("--x", type=float, default=None,
                        help="dimensionless temperature hbar*omega/(k_B*T)")
    parser.add_argument("--temp-kelvin", type=float, default=None,
                        help="temperature in kelvin (with --omega-rad-s, instead of --x)")
    parser.add_argument("--omega-rad-s", type=float, default=None,
                        help="mode angular frequency in rad/s (with --temp-kelvin)")


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table",
                        help="output format (default: table)")


def _resolve_x(args, *, allow_plain_kelvin: bool = False) -> DimensionlessTemperature | None:
    """Apply the --x vs --temp-kelvin/--omega-rad-s exclusivity rules."""
    if args.omega_rad_s is not None and args.temp_kelvin is None:
        raise ValueError("--omega-rad-s requires --temp-kelvin")
    if args.x is not None and args.omega_rad_s is not None:
        raise ValueError("--x and --temp-kelvin/--omega-rad-s are mutually exclusive")
    if args.x is not None and args.temp_kelvin is not None and not allow_plain_kelvin:
        raise ValueError("--x and --temp-kelvin/--omega-rad-s are mutually exclusive")
    if args.x is not None:
        return DimensionlessTemperature(args.x)
    if args.temp_kelvin is not None and args.omega_rad_s is not None:
        return DimensionlessTemperature.from_physical(args.temp_kelvin, args.omega_rad_s)
    return None


def _point_values(args) -> dict:
    return {
        "r": args.r if args.r is not None else 0.0,
        "phi": args.phi if args.phi is not None else 0.0,
        "alpha_mag": args.alpha_mag if args.alpha_mag is not None else 0.0,
        "alpha_phase": args.alpha_phase if args.alpha_phase is not None else 0.0,
    }


def _mode_parameters(args, *, allow_plain_kelvin: bool = False) -> ModeParameters:
    x = _resolve_x(args, allow_plain_kelvin=allow_plain_kelvin)
    if x is None:
        raise ValueError("a temperature is required: --x, or --temp-kelvin with --omega-rad-s")
    vals = _point_values(args)
    return ModeParameters.from_values(x=x.x, **vals)


def _inputs_json(p: ModeParameters, **extra) -> dict:
    inputs = {
        "r": _round12(p.squeeze.r),
        "phi": _round12(p.squeeze.phi),
        "alpha_mag": _round12(p.coherent.mag),
        "alpha_phase": _round12(p.coherent.theta),
        "x": _round12(p.x.x),
    }
    inputs.update(extra)
    return inputs


def cmd_stats(args) -> int:
    p = _mode_parameters(args)
    state = StateKind(args.state)
    stats = number_statistics(p, state)
    if args.format == "json":
        _print_json({
            "inputs": _inputs_json(p, state=state.value),
            "results": [{"mean": _round12(stats.mean), "variance": _round12(stats.variance)}],
        })
    elif args.format == "csv":
        _print_csv(["mean", "variance"], [[_fmt12(stats.mean), _fmt12(stats.variance)]])
    else:
        _print_table(["quantity", "value"],
                     [["mean", _fmt6(stats.mean)], ["variance", _fmt6(stats.variance)]])
    return EXIT_OK


_VERIFY_CSV_HEADER = [
    "r", "phi", "alpha_mag", "alpha_phase", "x", "state",
    "closed_mean", "oracle_mean", "rel_err_mean",
    "closed_var", "oracle_var", "rel_err_var",
    "converged", "dims_tried",
]


def cmd_verify(args) -> int:
    if args.r is not None and args.r > SQUEEZE_R_MAX:
        raise ValueError(
            f"r={args.r:g} exceeds the oracle squeeze cap r_max={SQUEEZE_R_MAX:g}")
    x = _resolve_x(args)
    point_flags = any(v is not None for v in
                      (args.r, args.phi, args.alpha_mag, args.alpha_phase))
    if args.grid and x is not None:
        raise ValueError("--grid and an explicit point are mutually exclusive")
    if x is not None:
        points = [ModeParameters.from_values(x=x.x, **_point_values(args))]
        grid = False
    elif point_flags and not args.grid:
        raise ValueError("single-point verify needs --x (or --temp-kelvin with "
                         "--omega-rad-s); pass --grid to run the built-in grid")
    else:
        points = list(verification_grid())
        grid = True

    rel_tol = args.rel_tol
    rows = []
    for p in points:
        rows.extend(verify_point(p, rel_tol=rel_tol, dim_max=args.fock_dim_max))
    all_ok = all(row.passed(rel_tol) for row in rows)
    max_err = max((max(r.rel_err_mean, r.rel_err_variance) for r in rows), default=0.0)

    if args.format == "json":
        _print_json({
            "inputs": {
                "grid": grid,
                "points": len(points),
                "rel_tol": _round12(rel_tol),
                "oracle_rel_tol": _round12(rel_tol * ORACLE_TOL_FACTOR),
                "fock_dim_max": args.fock_dim_max,
            },
            "results": [
                {
                    **_inputs_json(row.params, state=row.state.value),
                    "closed_mean": _round12(row.closed.mean),
                    "oracle_mean": _round12(row.oracle.mean),
                    "rel_err_mean": _round12(row.rel_err_mean),
                    "closed_var": _round12(row.closed.variance),
                    "oracle_var": _round12(row.oracle.variance),
                    "rel_err_var": _round12(row.rel_err_variance),
                    "truncation": row.report.to_json(),
                }
                for row in rows
            ],
            "max_rel_err": _round12(max_err),
            "ok": all_ok,
        })
    else:
        fmt = _fmt12 if args.format == "csv" else _fmt6
        cells = [
            [
                fmt(row.params.squeeze.r), fmt(row.params.squeeze.phi),
                fmt(row.params.coherent.mag), fmt(row.params.coherent.theta),
                fmt(row.params.x.x), row.state.value,
                fmt(row.closed.mean), fmt(row.oracle.mean), fmt(row.rel_err_mean),
                fmt(row.closed.variance), fmt(row.oracle.variance),
                fmt(row.rel_err_variance),
                str(row.report.converged).lower(),
                ";".join(str(d) for d in row.report.dims_tried),
            ]
            for row in rows
        ]
        if args.format == "csv":
            _print_csv(_VERIFY_CSV_HEADER, cells)
        else:
            _print_table(_VERIFY_CSV_HEADER, cells)
            print(f"verify: {'ok' if all_ok else 'FAILED'} "
                  f"(max rel err {_fmt6(max_err)}, tol {_fmt6(rel_tol)})")
    return EXIT_OK if all_ok else EXIT_FAILED


_SPECTRAL_BUILDERS = (
    (StateKind.PHOTONS_IN_SQUEEZED_THERMAL, spectral_for_photons_in_squeezed_thermal,
     "mean_photons_in_squeezed_thermal"),
    (StateKind.SQUEEZED_IN_PHOTON_THERMAL, spectral_for_squeezed_in_photon_thermal,
     "mean_squeezed_in_photon_thermal"),
)


def cmd_spectral(args) -> int:
    p = _mode_parameters(args, allow_plain_kelvin=True)
    temp_kelvin = args.temp_kelvin
    results = []
    for state, builder, _ in _SPECTRAL_BUILDERS:
        sf = builder(p)
        closed = number_statistics(p, state).mean
        reconstructed = evaluate_representation(sf, p.x)
        infinite_mu = next(
            (atom.mu for atom in sf.atoms if isinstance(atom.temp, InfiniteTemp)), None)
        entry = {
            "state": state.value,
            "atoms": sf.to_json(),
            "chemical_potential": infinite_mu,
            "normalization": normalization_integral(sf),
            "reconstruction_residual": abs(reconstructed - closed),
        }
        if temp_kelvin is not None:
            entry["t_eq_kelvin"] = equilibrium_temperature(sf, temp_kelvin)
        results.append(entry)

    if args.format == "json":
        payload = []
        for entry in results:
            item = {
                "state": entry["state"],
                "atoms": [
                    {"weight": _round12(a["weight"]),
                     "temp": a["temp"] if a["temp"] == "infinite" else _round12(a["temp"]),
                     "mu": _round12(a["mu"])}
                    for a in entry["atoms"]
                ],
                "chemical_potential": (None if entry["chemical_potential"] is None
                                       else _round12(entry["chemical_potential"])),
                "normalization": _round12(entry["normalization"]),
                "reconstruction_residual": _round12(entry["reconstruction_residual"]),
            }
            if "t_eq_kelvin" in entry:
                item["t_eq_kelvin"] = _round12(entry["t_eq_kelvin"])
            payload.append(item)
        inputs = _inputs_json(p)
        if temp_kelvin is not None:
            inputs["temp_kelvin"] = _round12(temp_kelvin)
        _print_json({"inputs": inputs, "results": payload})
        return EXIT_OK

    fmt = _fmt12 if args.format == "csv" else _fmt6
    header = ["state", "atom", "weight", "temp", "mu",
              "chemical_potential", "normalization", "t_eq_kelvin",
              "reconstruction_residual"]
    rows = []
    for entry in results:
        for i, atom in enumerate(entry["atoms"]):
            rows.append([
                entry["state"], str(i), fmt(atom["weight"]),
                "infinite" if atom["temp"] == "infinite" else fmt(atom["temp"]),
                fmt(atom["mu"]),
                "" if entry["chemical_potential"] is None else fmt(entry["chemical_potential"]),
                fmt(entry["normalization"]),
                fmt(entry["t_eq_kelvin"]) if "t_eq_kelvin" in entry else "",
                fmt(entry["reconstruction_residual"]),
            ])
    if args.format == "csv":
        _print_csv(header, rows)
    else:
        _print_table(header, rows)
    return EXIT_OK


_SWEEP_PARAMS = ("r", "phi", "alpha-mag", "alpha-phase", "x")


def cmd_sweep(args) -> int:
    if not (args.steps >= 2):
        raise ValueError(f"--steps must be >= 2, got {args.steps}")
    if not (args.start < args.stop):
        raise ValueError(f"--start must be < --stop, got [{args.start}, {args.stop}]")
    param = args.param
    if param == "x" and args.start <= 0.0:
        raise ValueError("swept x values must be positive")
    state = StateKind(args.state)
    fixed = _point_values(args)
    if param == "x":
        x_fixed = None
    else:
        x = _resolve_x(args)
        if x is None:
            raise ValueError("a temperature is required: --x, or --temp-kelvin "
                             "with --omega-rad-s")
        x_fixed = x.x

    values = np.linspace(args.start, args.stop, args.steps)
    attr = param.replace("-", "_")
    rows = []
    failed = False
    for value in values:
        point_vals = dict(fixed)
        x_val = x_fixed
        if param == "x":
            x_val = float(value)
        else:
            point_vals[attr] = float(value)
        p = ModeParameters.from_values(x=x_val, **point_vals)
        stats = number_statistics(p, state)
        row = {"param": param, "value": float(value),
               "mean": stats.mean, "variance": stats.variance}
        if args.oracle:
            oracle_tol = args.rel_tol * ORACLE_TOL_FACTOR
            try:
                oracle, _ = converge_statistics(p, state, oracle_tol,
                                                dim_max=args.fock_dim_max)
                o_mean, o_var = oracle.mean, oracle.variance
            except ConvergenceError as exc:
                # Keep the last (unconverged) values so the row stays printable.
                failed = True
                o_mean = exc.report.means[-1]
                o_var = exc.report.variances[-1]
            row.update({
                "oracle_mean": o_mean,
                "oracle_variance": o_var,
                "rel_err_mean": rel_err(stats.mean, o_mean),
                "rel_err_var": rel_err(stats.variance, o_var),
            })
        rows.append(row)

    keys = ["param", "value", "mean", "variance"]
    if args.oracle:
        keys += ["oracle_mean", "oracle_variance", "rel_err_mean", "rel_err_var"]

    if args.format == "json":
        inputs = {"param": param, "start": _round12(args.start),
                  "stop": _round12(args.stop), "steps": args.steps,
                  "state": state.value, "oracle": bool(args.oracle)}
        inputs.update({k: _round12(v) for k, v in fixed.items()})
        if x_fixed is not None:
            inputs["x"] = _round12(x_fixed)
        _print_json({
            "inputs": inputs,
            "results": [
                {k: (row[k] if k == "param" else _round12(row[k])) for k in keys}
                for row in rows
            ],
        })
    else:
        fmt = _fmt12 if args.format == "csv" else _fmt6
        cells = [[row["param"]] + [fmt(row[k]) for k in keys[1:]] for row in rows]
        if args.format == "csv":
            _print_csv(keys, cells)
        else:
            _print_table(keys, cells)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqthermal",
        description="Photon statistics of squeezed coherent light in thermal states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="closed-form mean and variance at one point")
    _add_param_flags(p_stats)
    _add_format_flag(p_stats)
    p_stats.add_argument("--state", choices=_STATE_CHOICES, required=True)
    p_stats.set_defaults(func=cmd_stats)

    p_verify = sub.add_parser(
        "verify", help="closed form vs Fock oracle (built-in grid by default)")
    _add_param_flags(p_verify)
    _add_format_flag(p_verify)
    p_verify.add_argument("--grid", action="store_true",
                          help="run the built-in grid (also the default with no point)")
    p_verify.add_argument("--rel-tol", type=float, default=DEFAULT_COMPARE_TOL,
                          help="comparison tolerance (default: 1e-6)")
    p_verify.add_argument("--fock-dim-max", type=int, default=DEFAULT_DIM_MAX,
                          help="truncation cap for the oracle (default: 512)")
    p_verify.set_defaults(func=cmd_verify)

    p_spectral = sub.add_parser("spectral", help="delta-atom decomposition report")
    _add_param_flags(p_spectral)
    _add_format_flag(p_spectral)
    p_spectral.set_defaults(func=cmd_spectral)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter over a linear range")
    _add_param_flags(p_sweep)
    _add_format_flag(p_sweep)
    p_sweep.add_argument("--param", choices=_SWEEP_PARAMS, required=True)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--state", choices=_STATE_CHOICES, required=True)
    p_sweep.add_argument("--oracle", action="store_true",
                         help="also run the Fock oracle at every point")
    p_sweep.add_argument("--rel-tol", type=float, default=DEFAULT_COMPARE_TOL)
    p_sweep.add_argument("--fock-dim-max", type=int, default=DEFAULT_DIM_MAX)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
