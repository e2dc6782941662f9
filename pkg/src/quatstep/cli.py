"""Command-line front end: ``quatstep {coeffs,verify,packet,sweep}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input or regime
violation, 3 packet maximum on the sampling-grid edge.

Options may also come from ``--config FILE``, a flat ``key = value`` file
whose keys are the long option names (``sigma-ratio = 0.01``, ``V = 0 1 0``).
Command-line flags override the file, which overrides built-in defaults.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from . import __version__
from .errors import BoundaryMaxError, QuatStepError, RegimeError
from .packet import default_times, energy_grid, velocity_sweep, track_trajectory
from .quadrature import QuadratureSpec
from .step import PotentialStep, amplitudes, flux, kinematics, phase_split
from .verification import run_all

EXIT_OK, EXIT_VERIFY, EXIT_REGIME, EXIT_BOUNDARY = 0, 1, 2, 3

COEFF_COLUMNS = ["e_over_v0", "eps", "rho_plus", "rho_minus", "abs_w", "re_r", "im_r",
                 "abs_r", "theta_r", "re_t", "im_t", "abs_t", "theta_t", "R", "T"]
PACKET_COLUMNS = ["t", "packet", "x_tracked", "x_predicted", "residual", "rel_residual"]
SWEEP_COLUMNS = ["e0_over_v0", "v1_over_v0", "vel_ratio", "t_tra_dimless", "t_ref_dimless"]
DEFAULT_V1_OVER_V0 = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0]


class UsageError(QuatStepError):
    pass


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return "%.17g" % (value + 0.0)  # +0.0 folds -0.0 into 0.0


def _config_echo(args) -> dict:
    skip = {"command", "func", "config", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def render(args, columns, rows) -> str:
    config = _config_echo(args)
    if args.format == "json":
        def clean(v):
            return None if isinstance(v, float) and math.isnan(v) else v
        doc = {"tool": f"quatstep {__version__}", "command": args.command,
               "config": config, "columns": columns,
               "rows": [[clean(v) for v in row] for row in rows]}
        return json.dumps(doc, indent=1) + "\n"
    lines = [f"# quatstep {__version__}", f"# command: {args.command}"]
    lines += [f"# {k} = {v!r}" for k, v in config.items()]
    lines.append(",".join(columns))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None):
    """Write to ``out`` atomically (temp file + rename), or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".quatstep-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _step(args) -> PotentialStep:
    if args.V is None:
        raise UsageError("--V v1 v2 v3 is required")
    return PotentialStep(*args.V)


def _energy(args, V: PotentialStep) -> float:
    if args.E is not None:
        return args.E
    if args.e0_over_v0 is not None:
        if V.V0 == 0.0:
            raise UsageError("--e0-over-v0 needs a nonzero potential; use --E")
        return args.e0_over_v0 * V.V0
    raise UsageError("give --E or --e0-over-v0")


def cmd_coeffs(args):
    V = _step(args)
    E = _energy(args, V)
    k = kinematics(E, V)
    a = amplitudes(k)
    ps = phase_split(k)
    f = flux(k, a)
    e_over_v0 = E / V.V0 if V.V0 > 0 else math.inf
    row = [e_over_v0, k.eps, k.rho_plus, k.rho_minus, abs(k.w), a.r.real, a.r.imag,
           ps.mod_r, ps.theta_r, a.t.real, a.t.imag, ps.mod_t, ps.theta_t, f.R, f.T]
    emit(render(args, COEFF_COLUMNS, [[float(v) for v in row]]), args.out)
    return EXIT_OK


def cmd_verify(args):
    results = run_all(seed=args.seed, tol_scale=args.tol_scale)
    ok = all(r.passed for r in results)
    report = {"tool": f"quatstep {__version__}", "seed": args.seed, "passed": ok,
              "suites": [r.as_dict() for r in results]}
    emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_packet(args):
    V = _step(args)
    E0 = _energy(args, V)
    times = args.times or default_times(E0, args.sigma_ratio, args.count)
    quad = QuadratureSpec(args.rule, args.nodes)
    rows = []
    v0 = math.sqrt(2.0 * E0)
    for r in track_trajectory(V, E0, args.sigma_ratio, times, quad, args.grid_points,
                              truncation_sigmas=args.truncation):
        rows.append([r.t, r.packet, r.x_tracked, r.x_predicted, r.residual,
                     r.residual / (v0 * abs(r.t))])
    emit(render(args, PACKET_COLUMNS, rows), args.out)
    return EXIT_OK


def cmd_sweep(args):
    start, stop, step = args.e0_range
    grid = energy_grid(start, stop, step)
    rows = [[r.e0_over_v0, r.v1_over_v0, r.vel_ratio, r.t_tra_dimless, r.t_ref_dimless]
            for r in velocity_sweep(args.v0, args.v1_over_v0, grid, args.guard)]
    emit(render(args, SWEEP_COLUMNS, rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="flat key = value option file")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--V", nargs=3, type=float, metavar=("V1", "V2", "V3"))
    physics.add_argument("--E", type=float, help="energy, internal units")
    physics.add_argument("--e0-over-v0", type=float, help="energy in units of V0")

    p = argparse.ArgumentParser(prog="quatstep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"quatstep {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common, physics], help="plane-wave coefficients")
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol-scale", type=float, default=1.0,
                   help="multiply every tolerance (testing hook; 0 forces failure)")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("packet", parents=[common, physics], help="track packet maxima")
    k.add_argument("--sigma-ratio", type=float, default=0.01, help="sigma_eps / eps0")
    k.add_argument("--truncation", type=float, default=6.0, help="window half-width in sigmas")
    k.add_argument("--nodes", type=int, default=512)
    k.add_argument("--rule", choices=["gauss_legendre", "trapezoid"], default="gauss_legendre")
    k.add_argument("--grid-points", type=int, default=801)
    k.add_argument("--times", nargs="+", type=float)
    k.add_argument("--count", type=int, default=5, help="default times per sign")
    k.set_defaults(func=cmd_packet)

    s = sub.add_parser("sweep", parents=[common], help="velocity ratio and delay times against E0/V0")
    s.add_argument("--v0", type=float, default=1.0, help="potential magnitude V0")
    s.add_argument("--v1-over-v0", nargs="+", type=float, default=DEFAULT_V1_OVER_V0)
    s.add_argument("--e0-range", nargs=3, type=float, default=[1.0, 10.0, 0.01],
                   metavar=("START", "STOP", "STEP"))
    s.add_argument("--guard", type=float, default=0.05)
    s.set_defaults(func=cmd_sweep)
    return p


def read_config(path: str) -> list[str]:
    """Turn a ``key = value`` file into command-line tokens."""
    tokens = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            tokens.append("--" + key.replace("_", "-"))
            tokens.extend(value.split())
    return tokens


def _split_config(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        config = _split_config(argv)
        if config is not None and argv and not argv[0].startswith("-"):
            argv = [argv[0]] + read_config(config) + argv[1:]
        args = parser.parse_args(argv)
        return args.func(args)
    except BoundaryMaxError as exc:
        print(f"quatstep: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except (RegimeError, UsageError, QuatStepError, ValueError, OSError) as exc:
        print(f"quatstep: {exc}", file=sys.stderr)
        return EXIT_REGIME


if __name__ == "__main__":
    sys.exit(main())
