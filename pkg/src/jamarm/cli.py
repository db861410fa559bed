"""Command-line front end.

Subcommands: fk, decouple, simulate, calibrate, stiffness, serve. Results go
to standard output as JSON (simulate writes one canonical snapshot per line,
optionally to --out).
"""

import argparse
import json
import math
import sys

from .characterization import (
    capacity_at,
    deflection_under_load,
    fit_linear,
    load_calibration_csv,
    load_stiffness_csv,
    spring_constant,
    stiffness_ratio,
)
from .coupling import TendonCommand, decouple
from .kinematics import BendState, arm_fk, arm_shape_samples
from .simulator import (
    SessionConfig,
    load_session_config,
    parse_script_file,
    run_script,
    trajectory_serialize,
)


def _load_config(path) -> SessionConfig:
    return load_session_config(path) if path else SessionConfig()


def _parse_floats(text, expected, what):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != expected:
        raise SystemExit(f"error: {what} needs {expected} comma-separated values")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise SystemExit(f"error: could not parse {what} {text!r}")


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_fk(args):
    cfg = _load_config(args.config)
    segments = cfg.plant.segments
    values = _parse_floats(args.bend, 2 * len(segments), "--bend")
    bends = [
        BendState(math.radians(values[2 * i]), math.radians(values[2 * i + 1]))
        for i in range(len(segments))
    ]
    frames = arm_fk(segments, bends)
    shape = arm_shape_samples(segments, bends, cfg.plant.shape_points_per_segment)
    _emit(
        {
            "bend_deg": [[values[2 * i], values[2 * i + 1]] for i in range(len(segments))],
            "frames": [
                {
                    "position_m": [float(v) for v in f.position],
                    "rotation": [[float(v) for v in row] for row in f.rotation],
                }
                for f in frames
            ],
            "tip_m": [float(v) for v in frames[-1].position],
            "shape_m": [[float(v) for v in row] for row in shape],
        }
    )


def _cmd_decouple(args):
    cfg = _load_config(args.config)
    values = _parse_floats(args.cmd, 4, "--cmd")
    # the law is linear, so mm in -> mm out
    act = decouple(TendonCommand(*values), cfg.coupling)
    _emit(
        {
            "cmd_mm": {"x1i": values[0], "y1i": values[1], "x2i": values[2], "y2i": values[3]},
            "actuation_mm": {"x1o": act.x1o, "y1o": act.y1o, "x2o": act.x2o, "y2o": act.y2o},
            "alpha": cfg.coupling.alpha,
            "beta": cfg.coupling.beta,
            "seg2_offset_deg": math.degrees(cfg.coupling.seg2_offset),
        }
    )


def _cmd_simulate(args):
    cfg = _load_config(args.config)
    events = parse_script_file(args.script)
    text = trajectory_serialize(run_script(events, cfg), cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_calibrate(args):
    fit = fit_linear(load_calibration_csv(args.csv))
    _emit(
        {
            "slope_deg_per_m": fit.slope,
            "intercept_deg": fit.intercept,
            "slope_ci95": list(fit.slope_ci95),
            "intercept_ci95": list(fit.intercept_ci95),
            "r_squared": fit.r_squared,
            "n": fit.n,
        }
    )


def _cmd_stiffness(args):
    table = load_stiffness_csv(args.csv)
    capacity = capacity_at(table, args.pressure)
    try:
        ratio = stiffness_ratio(table, args.pressure)
    except ValueError:
        ratio = None  # table does not reach down to 0 psi
    out = {
        "pressure_psi": args.pressure,
        "capacity_N": capacity,
        "stiffness_ratio": ratio,
        "spring_constant_N_per_m": spring_constant(table, args.pressure),
        "reference_deflection_m": table.reference_deflection_m,
    }
    if args.load is not None:
        result = deflection_under_load(table, args.pressure, args.load)
        out["load_N"] = args.load
        out["deflection_m"] = result.deflection_m
        out["exceeds_reference"] = result.exceeds_reference
    _emit(out)


def _cmd_serve(args):
    from .simulator.server import serve

    serve(_load_config(args.config), port=args.port, host=args.host)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jamarm",
        description="Tendon-driven variable-stiffness continuum arm toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fk", help="forward kinematics for given per-segment bends")
    p.add_argument("--config", help="session config JSON")
    p.add_argument(
        "--bend",
        required=True,
        metavar="TX1,TY1,TX2,TY2",
        help="per-segment bend angles in degrees",
    )
    p.set_defaults(func=_cmd_fk)

    p = sub.add_parser("decouple", help="apply the tendon decoupling law")
    p.add_argument("--config", help="session config JSON")
    p.add_argument(
        "--cmd",
        required=True,
        metavar="X1,Y1,X2,Y2",
        help="desired pair displacements in mm",
    )
    p.set_defaults(func=_cmd_decouple)

    p = sub.add_parser("simulate", help="run an event script deterministically")
    p.add_argument("--config", help="session config JSON")
    p.add_argument("--script", required=True, help="event script file")
    p.add_argument("--out", help="write the trajectory here instead of stdout")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("calibrate", help="fit bend angle vs tendon displacement")
    p.add_argument("--csv", required=True, help="CSV with header x_m,theta_deg")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("stiffness", help="evaluate a load-capacity table")
    p.add_argument("--csv", required=True, help="CSV with header pressure_psi,capacity_N")
    p.add_argument("--pressure", required=True, type=float, help="vacuum pressure (psi)")
    p.add_argument("--load", type=float, help="applied load (N) for a deflection readout")
    p.set_defaults(func=_cmd_stiffness)

    p = sub.add_parser("serve", help="run the wire-protocol session server")
    p.add_argument("--config", help="session config JSON")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
