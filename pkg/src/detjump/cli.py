"""``detjump`` command-line interface.

Exit codes: 0 success, 1 validation failure, 2 domain error, 3 I/O or
parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import DomainError, GasSpecError, NumericalError
from .gas import read_gas_spec
from .jump import JumpInputs, jump_from_layer
from .layer import layer_integrals
from .oracle import run_validation
from .sweep import HEADER as SWEEP_HEADER
from .sweep import SweepRequest, format_number, parse_f_grid, run_sweep, write_csv
from .znd import (dimensional_rate, params_at_overdrive, profile_at, spatial_map,
                  taylor_extension, to_thermo, znd_params)

PROFILE_HEADER = ("lambda", "x_m", "p_Pa", "rho_kg_m3", "u_m_s", "T_K", "W_1_s", "p_nd",
                  "v_nd", "upsilon_nd")

INTEGRALS_COMMENT = (
    "I1p and Irho are the areas between the reactive profile and its burned state, "
    "in pressure and density, over distance behind the shock (SI). xVN = Irho/(rho_CJ - rho_0) "
    "places the shock relative to the hydrodynamic discontinuity. alpha0 = alpha01 + alpha02 "
    "is the surface tension per half-reaction length; alpha = lf * alpha0.")

EXIT_VALIDATION, EXIT_DOMAIN, EXIT_IO = 1, 2, 3


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _params(gas, args):
    if getattr(args, "mach", None) is not None:
        return znd_params(gas, args.mach, verbatim_b=args.verbatim_b)
    return params_at_overdrive(gas, args.overdrive, verbatim_b=args.verbatim_b)


def _dump_json(obj, stream):
    json.dump(obj, stream, indent=2, allow_nan=True)
    stream.write("\n")


def cmd_profile(gas, args):
    if args.samples < 2:
        raise DomainError("--samples must be at least 2")
    params = _params(gas, args)
    if args.taylor and not params.at_cj:
        raise DomainError("Taylor extension only defined at CJ")
    rows = []
    for lam in np.linspace(0.0, 1.0, args.samples):
        lam = float(lam)
        st = profile_at(params, lam)
        th = to_thermo(params, st)
        x = math.inf if lam == 1.0 else spatial_map(params, gas, lam)
        rows.append((lam, x, th.p, th.rho, th.u, th.T, dimensional_rate(params, gas, lam),
                     st.p, st.v, st.upsilon))
    if args.taylor:
        vn = params.stateVN
        front = params.D_m_s
        for s in taylor_extension(params, gas, args.taylor_samples, args.taylor_distance):
            u_shock = front - s.u
            rows.append((1.0, s.x, s.p, s.rho, u_shock, s.p / (s.rho * gas.Rg), 0.0,
                         s.p / params.p_ref, u_shock / vn.c, vn.rho / s.rho))
    with _output(args.out) as out:
        write_csv(rows, PROFILE_HEADER, out)


def cmd_cj(gas, args):
    params = params_at_overdrive(gas, 1.0, verbatim_b=args.verbatim_b)
    vn, cj = params.stateVN, params.stateCJ
    with _output(args.out) as out:
        _dump_json({"D_CJ_mach": params.D, "D_CJ_m_s": params.D_m_s, "p_VN_Pa": vn.p,
                    "rho_VN": vn.rho, "T_VN_K": vn.T, "p_CJ_Pa": cj.p, "rho_CJ": cj.rho}, out)


def cmd_integrals(gas, args):
    params = _params(gas, args)
    li = layer_integrals(params, gas)
    doc = {"overdrive_f": params.overdrive, "D_mach": params.D}
    doc.update(li.as_dict())
    doc["comment"] = INTEGRALS_COMMENT
    with _output(args.out) as out:
        _dump_json(doc, out)


def cmd_sweep(gas, args):
    values = tuple(float(v) for v in args.values.split(",") if v.strip())
    request = SweepRequest(gas=gas, vary=args.vary, values=values,
                           f_grid=parse_f_grid(args.f_grid), out=args.out)
    rows = run_sweep(request, workers=args.workers, verbatim_b=args.verbatim_b)
    with _output(args.out) as out:
        write_csv(rows, SWEEP_HEADER, out)


def cmd_jump(gas, args):
    params = _params(gas, args)
    li = layer_integrals(params, gas)
    res = jump_from_layer(li, JumpInputs(H=args.curvature, chi=args.stretch,
                                         grad_alpha_tangential=args.grad_alpha,
                                         dISigma_dt=args.dSigma_dt))
    with _output(args.out) as out:
        _dump_json({"mass_jump": res.mass_jump,
                    "normal_momentum_jump_Pa": res.normal_momentum_jump,
                    "tangential_momentum_jump_Pa": res.tangential_momentum_jump,
                    "energy_jump_W_m2": res.energy_jump,
                    "alpha_N_m": li.alpha, "alpha0_Pa": li.alpha0}, out)


def cmd_validate(gas, args):
    reports = run_validation(gas, verbatim_b=args.verbatim_b)
    with _output(args.out) as out:
        for r in reports:
            out.write(r.line() + "\n")
    return 0 if all(r.passed for r in reports) else EXIT_VALIDATION


def _add_common(p, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--gas", default=default(None), help="gas configuration JSON file")
    p.add_argument("--out", default=default(None), help="output path (default: stdout)")
    p.add_argument("--verbatim-b", action="store_true", default=default(False),
                   help="use the 1 - a**2 form of b (inconsistent; for auditing)")


def _add_speed(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--overdrive", type=float, default=1.0, help="f = (D/D_CJ)**2 (default 1)")
    g.add_argument("--mach", type=float, default=None, help="absolute detonation Mach number")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detjump", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="ZND profile CSV")
    _add_common(p, suppress=True)
    _add_speed(p)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--taylor", action="store_true", help="append the rarefaction fan (f = 1 only)")
    p.add_argument("--taylor-samples", type=int, default=100)
    p.add_argument("--taylor-distance", type=float, default=None,
                   help="distance travelled by the front (m, default lf)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("cj", help="Chapman-Jouguet speed and anchor states (JSON)")
    _add_common(p, suppress=True)
    p.set_defaults(func=cmd_cj)

    p = sub.add_parser("integrals", help="layer integrals and surface tension (JSON)")
    _add_common(p, suppress=True)
    _add_speed(p)
    p.set_defaults(func=cmd_integrals)

    p = sub.add_parser("sweep", help="alpha0 over a parameter family and overdrive grid (CSV)")
    _add_common(p, suppress=True)
    p.add_argument("--vary", choices=("p0", "Q"), required=True)
    p.add_argument("--values", required=True, help="comma-separated SI values")
    p.add_argument("--f-grid", default="1.0:2.5:50", help="start:stop:count or comma list")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("jump", help="modified jump conditions (JSON)")
    _add_common(p, suppress=True)
    _add_speed(p)
    p.add_argument("--curvature", type=float, default=0.0, help="mean curvature H (1/m)")
    p.add_argument("--stretch", type=float, default=0.0, help="stretch chi (1/s)")
    p.add_argument("--grad-alpha", type=float, default=0.0, help="surface gradient of alpha (N/m^2)")
    p.add_argument("--dSigma-dt", dest="dSigma_dt", type=float, default=0.0,
                   help="time derivative of the energy excess (W/m^2)")
    p.set_defaults(func=cmd_jump)

    p = sub.add_parser("validate", help="run the oracle checks")
    _add_common(p, suppress=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.gas is None:
        print("detjump: --gas is required", file=sys.stderr)
        return EXIT_IO
    try:
        gas = read_gas_spec(args.gas)
    except (OSError, GasSpecError) as exc:
        print(f"detjump: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(gas, args) or 0
    except DomainError as exc:
        print(f"detjump: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"detjump: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"detjump: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
