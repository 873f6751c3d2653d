"""Command-line front end.

Exit codes: 0 success (or a positive verdict), 1 negative verdict or failed
self-test, 2 unreadable input or numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, claims
from .core import OscillatorParams, PsoscError
from .dynamics import evolve_state
from .figures import FIGURES, figure_table, to_csv
from .io import dumps_state, load_state, save_state
from .measures import Axis, Model, energy_distribution, marginal
from .oracle import ValidationConfig, tunneling_test, validate


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1))


def _params(args) -> OscillatorParams:
    return OscillatorParams(args.hbar, args.mass, args.omega)


def _time(args, state) -> float:
    if args.angle is not None:
        return args.angle / state.params.omega
    return args.t or 0.0


def cmd_validate(args) -> int:
    state = load_state(args.state)
    cfg = ValidationConfig(time_samples=args.angles, marginal_grid=args.intervals,
                           energy_levels=args.levels, tol_negative=args.tol, tol_norm=args.tol)
    report = validate(state, Model(args.model), cfg)
    _emit(report.to_dict())
    return 0 if report.verdict else 1


def cmd_energy(args) -> int:
    state = load_state(args.state)
    dist = energy_distribution(Model(args.model), state, args.levels)
    _emit({"model": dist.model.value,
           "levels": [{"n": n, "energy": e, "probability": p} for n, (e, p) in enumerate(dist.entries)],
           "residual": dist.residual})
    return 0


def cmd_evolve(args) -> int:
    state = load_state(args.state)
    evolved = evolve_state(state, _time(args, state))
    if args.out:
        save_state(evolved, args.out)
    else:
        print(dumps_state(evolved))
    return 0


def cmd_tunnel(args) -> int:
    state = load_state(args.state)
    _emit(tunneling_test(state, Model(args.model), args.alpha).to_dict())
    return 0


def cmd_marginal(args) -> int:
    state = load_state(args.state)
    state = evolve_state(state, _time(args, state))
    marg = marginal(state, Axis(args.axis))
    out = {"axis": marg.axis.value, "total": marg.total(),
           "atoms": [{"at": loc, "weight": w} for loc, w in marg.atoms]}
    if args.interval:
        a, b = args.interval
        out["interval"] = {"a": a, "b": b, "probability": marg.integrate(a, b)}
    if args.points and marg.parts:
        half = marg.bound
        xs = [-half + 2 * half * i / (args.points - 1) for i in range(args.points)]
        out["density"] = [{"x": x, "value": float(v)} for x, v in zip(xs, marg.density(xs))]
    _emit(out)
    return 0


def cmd_figure(args) -> int:
    header, rows = figure_table(args.figure, _params(args))
    text = to_csv(header, rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_export(args) -> int:
    state = catalog.build(args.name, _params(args))
    if args.out:
        save_state(state, args.out)
    else:
        print(dumps_state(state))
    return 0


def cmd_selftest(args) -> int:
    failures = 0
    print(f"{'crit':<5}{'claim':<58}{'expected':<30}{'actual':<45}pass")
    for cid, claim, expected, actual, passed in claims.run_all():
        failures += not passed
        print(f"{cid:<5}{claim:<58}{expected:<30}{actual:<45}{'PASS' if passed else 'FAIL'}")
    print(f"{failures} claim(s) failed")
    return 0 if failures == 0 else 1


def _add_physics(p) -> None:
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)


def _add_time(p) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", type=float, help="evolution time")
    group.add_argument("--angle", type=float, help="flow angle omega*t")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psosc", description="Phase-space oscillator models.")
    sub = parser.add_subparsers(dest="command", required=True)
    models = [m.value for m in Model]

    p = sub.add_parser("validate", help="test membership of a state file in the state space")
    p.add_argument("state")
    p.add_argument("--model", choices=models, default="sawtooth")
    p.add_argument("--angles", type=int, default=180, help="flow angles sampled on [0, pi)")
    p.add_argument("--intervals", type=int, default=200, help="marginal test intervals")
    p.add_argument("--levels", type=int, default=64, help="energy levels checked")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("energy", help="energy distribution of a state file")
    p.add_argument("state")
    p.add_argument("--model", choices=models, default="sawtooth")
    p.add_argument("--levels", type=int, default=None)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("evolve", help="evolve a state file along the flow")
    p.add_argument("state")
    _add_time(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("tunnel", help="tunneling test at threshold alpha (energy units)")
    p.add_argument("state")
    p.add_argument("--model", choices=models, default="sawtooth")
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_tunnel)

    p = sub.add_parser("marginal", help="position or momentum marginal of a state file")
    p.add_argument("state")
    p.add_argument("--axis", choices=["position", "momentum"], default="position")
    _add_time(p)
    p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"))
    p.add_argument("--points", type=int, default=0, help="density samples across the support")
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("figure", help="write figure data as CSV")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--out")
    _add_physics(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("export", help="write a named state as a JSON state file")
    p.add_argument("name", choices=catalog.NAMES)
    p.add_argument("--out")
    _add_physics(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("selftest", help="recheck every claim and print a pass/fail table")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, PsoscError, ArithmeticError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"psosc: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
