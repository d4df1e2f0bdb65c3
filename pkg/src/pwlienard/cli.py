"""Command-line harness: expansions, roots, oracle checks, simulation,
inverse design and end-to-end verification.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
Default comparison tolerance can be overridden with PWLIENARD_REL_TOL.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import melnikov, oracle, roots, simulator
from .design import design_case_x, design_case_y, verify_design
from .errors import (NoConvergence, PwLienardError, QuadratureFailure,
                     SimulationError, TooManyTargets)
from .systems import PRESET_NAMES, Case, LienardSystem, load_preset

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

DEFAULT_REL_TOL = 1e-8


def _rel_tol() -> float:
    return float(os.environ.get("PWLIENARD_REL_TOL", DEFAULT_REL_TOL))


def _load_system(args) -> LienardSystem:
    if getattr(args, "preset", None):
        return load_preset(args.preset, lam=args.lam or 0.0, eps=args.eps or 0.0)
    if getattr(args, "system", None):
        with open(args.system) as fh:
            doc = json.load(fh)
        sys_ = LienardSystem.from_json(doc)
        if args.lam or args.eps:
            sys_ = sys_.with_params(args.lam or 0.0, args.eps or 0.0)
        return sys_
    raise SystemExit2("one of --preset/--system is required")


class SystemExit2(Exception):
    """Validation failure carrying a message for exit code 2."""


def _float_list(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _out_path(args, name: str):
    if not args.out:
        return None
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _emit(args, name: str, text: str):
    path = _out_path(args, name)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(args, v: float) -> str:
    return f"{v:.{args.precision}g}"


# -- subcommands ---------------------------------------------------------------


def cmd_melnikov(args) -> int:
    sys_ = _load_system(args)
    exp = melnikov.expand(sys_, project_odd=args.project_odd)
    grid = _float_list(args.h_grid)
    report = {
        "case": sys_.case.value,
        "m": sys_.m,
        "n": sys_.n,
        "M0": exp.m0.to_json(),
        "M1": exp.m1.to_json(),
        "zero_bound": {
            "M0": melnikov.zero_bound(sys_.case, sys_.m, sys_.n, "M0"),
            "M1": melnikov.zero_bound(sys_.case, sys_.m, sys_.n, "M1"),
        },
        "grid": [
            {"h": h, "M0": exp.m0.eval(h), "M1": exp.m1.eval(h)} for h in grid
        ],
    }
    _emit(args, "melnikov.json", json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_roots(args) -> int:
    sys_ = _load_system(args)
    exp = melnikov.expand(sys_, project_odd=args.project_odd)
    poly = exp.m1 if args.which == "M1" else exp.m0
    report = roots.isolate_positive_roots(poly, sys_.case, sys_.m, sys_.n,
                                          which=args.which)
    doc = {
        "which": args.which,
        "descartes_bound": report.descartes_bound,
        "theorem_bound": report.theorem_bound,
        "certified_count": report.certified_count(),
        "h_roots": [
            {"lo": r.lo, "hi": r.hi, "mid": r.mid, "certificate": r.certificate}
            for r in report.h_roots
        ],
        "suspected": [
            {"lo": r.lo ** 2, "hi": r.hi ** 2, "mid": r.mid ** 2,
             "certificate": r.certificate}
            for r in report.suspected
        ],
    }
    _emit(args, "roots.json", json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    sys_ = _load_system(args)
    exp = melnikov.expand(sys_, project_odd=True)
    tol = _rel_tol()
    rows = []
    worst = 0.0
    for h in _float_list(args.h_grid):
        pairs = [
            ("M0", exp.m0.eval(h), oracle.oracle_m0(sys_, h)),
            ("M1", exp.m1.eval(h), oracle.oracle_m1(sys_, h)),
        ]
        for name, closed, quad in pairs:
            err = abs(closed - quad) / (1.0 + abs(quad))
            worst = max(worst, err)
            rows.append([_fmt(args, h), name, _fmt(args, closed),
                         _fmt(args, quad), f"{err:.3e}",
                         "pass" if err <= tol else "FAIL"])
    text = "h,term,closed,oracle,rel_err,status\n" + "\n".join(
        ",".join(r) for r in rows) + "\n"
    _emit(args, "oracle.csv", text)
    return EXIT_OK if worst <= tol else EXIT_NUMERICAL


def cmd_simulate(args) -> int:
    sys_ = _load_system(args)
    config = simulator.SimConfig(lam=args.lam or 0.0, eps=args.eps or 0.0,
                                 rk_tol=args.rk_tol)
    lo, hi = (float(v) for v in args.r_range.split(":"))
    scan = simulator.find_cycles(sys_, (lo, hi), args.grid, config)
    doc = {
        "backend": simulator.BACKEND,
        "non_isolated": scan.non_isolated,
        "cycles": [c.to_json() for c in scan.cycles],
    }
    _emit(args, "cycles.json", json.dumps(doc, indent=2) + "\n")
    disp = "r,displacement\n" + "\n".join(
        f"{r!r},{d!r}" for r, d in zip(scan.grid, scan.displacements)) + "\n"
    path = _out_path(args, "displacement.csv")
    if path:
        with open(path, "w") as fh:
            fh.write(disp)
    if args.dump_traj is not None:
        rows = trajectory_rows(sys_, args.dump_traj, config)
        text = "t,x,y,side\n" + "\n".join(
            ",".join(repr(v) for v in row) for row in rows) + "\n"
        _emit(args, "trajectory.csv", text)
    return EXIT_OK


def trajectory_rows(sys_, r, config):
    """Crossing log for one full return started at section coordinate r."""
    _coord, _t, crossings = simulator.advance_to_section(sys_, r, config)
    start_side = crossings[0][3] if crossings else 0.0
    rows = [(0.0, r, 0.0, -start_side) if sys_.case is Case.SWITCH_Y
            else (0.0, 0.0, r, -start_side)]
    rows.extend(crossings)
    return rows


def cmd_design(args) -> int:
    targets = _float_list(args.targets) if args.targets else []
    case = Case(args.case)
    if case is Case.SWITCH_Y:
        sys_ = design_case_y(targets, args.m, args.n)
    else:
        sys_ = design_case_x(targets, args.m, args.n)
    ok, residuals, m1 = verify_design(sys_, targets)
    report = roots.isolate_positive_roots(m1, case, args.m, args.n) \
        if not m1.is_zero() else None
    doc = {
        "system": sys_.to_json(),
        "M1": m1.to_json(),
        "targets": targets,
        "residuals": residuals,
        "verified": ok,
        "roots": None if report is None else {
            "certified_count": report.certified_count(),
            "h_roots": [{"lo": r.lo, "hi": r.hi, "mid": r.mid}
                        for r in report.h_roots],
        },
    }
    _emit(args, "design.json", json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_NUMERICAL


def cmd_verify(args) -> int:
    sys_ = _load_system(args)
    tol = _rel_tol()
    exp = melnikov.expand(sys_, project_odd=True)
    rows = []

    def add(check, value, reference, threshold):
        err = abs(value - reference) / (1.0 + abs(reference))
        rows.append((check, value, reference, err, threshold,
                     err <= threshold))

    for h in _float_list(args.h_grid):
        add(f"M0@h={h}", exp.m0.eval(h), oracle.oracle_m0(sys_, h), tol)
        add(f"M1@h={h}", exp.m1.eval(h), oracle.oracle_m1(sys_, h), tol)
        n_terms = 5 if sys_.case is Case.SWITCH_Y else 4
        for i in range(n_terms):
            closed = _closed_term(sys_, exp, i, h)
            add(f"I{i}@h={h}", closed, oracle.quad_I(sys_, h, i), tol)
    if args.with_sim:
        lam = args.lam or 0.02
        eps = args.eps or 1e-4
        for h in (0.5, 2.0):
            est = oracle.fd_bifurcation_estimate(sys_, h, lam, eps)
            pred = exp.m0.eval(h) + lam * exp.m1.eval(h)
            # first-order estimate: allow O(eps) + O(lam^2) slack
            add(f"F@h={h}", est, pred, max(tol, 50 * (eps + lam * lam)))
    text = "check,value,reference,rel_err,tol,status\n" + "\n".join(
        f"{c},{_fmt(args, v)},{_fmt(args, r)},{e:.3e},{t:.1e},"
        f"{'pass' if ok else 'FAIL'}"
        for c, v, r, e, t, ok in rows) + "\n"
    _emit(args, "verify.csv", text)
    bad = [r for r in rows if not r[5]]
    if bad:
        print(f"first failing row: {bad[0][0]}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _closed_term(sys_, exp, i, h):
    if sys_.case is Case.SWITCH_Y:
        if i == 0:
            return melnikov.case_y_i_poly(sys_, 0).eval(h)
        if i == 1:
            return melnikov.case_y_i_poly(sys_.odd_projection(), 1).eval(h)
        if i == 3:
            return melnikov.case_y_i3(sys_.odd_projection()).eval(h)
        return 0.0  # I2, I4 vanish under the oddness hypothesis
    if i == 0:
        return melnikov.case_x_i_poly(sys_, 0).eval(h)
    if i == 1:
        return melnikov.case_x_i_poly(sys_.odd_projection(), 1).eval(h)
    if i == 2:
        return melnikov.case_x_i2(sys_.odd_projection()).eval(h)
    return melnikov.case_x_i3(sys_.odd_projection()).eval(h)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pwlienard",
        description="Melnikov expansions for piecewise Lienard systems")
    p.add_argument("--config", help="JSON file with default argument values")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--precision", type=int, default=17,
                   help="significant digits in numeric output")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--preset", choices=PRESET_NAMES)
        sp.add_argument("--system", help="LienardSystem JSON document path")
        sp.add_argument("--lam", type=float, default=None)
        sp.add_argument("--eps", type=float, default=None)

    sp = sub.add_parser("melnikov", help="closed-form expansion report")
    common(sp)
    sp.add_argument("--h-grid", default="0.5,1,2,3")
    sp.add_argument("--project-odd", action="store_true")
    sp.set_defaults(func=cmd_melnikov)

    sp = sub.add_parser("roots", help="certified positive-zero isolation")
    common(sp)
    sp.add_argument("--which", choices=["M0", "M1"], default="M1")
    sp.add_argument("--project-odd", action="store_true")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("oracle", help="closed form vs quadrature")
    common(sp)
    sp.add_argument("--h-grid", default="0.5,1,2,3")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("simulate", help="displacement scan and cycle search")
    common(sp)
    sp.add_argument("--r-range", default="1:6.5")
    sp.add_argument("--grid", type=int, default=400)
    sp.add_argument("--rk-tol", type=float, default=1e-10)
    sp.add_argument("--dump-traj", type=float, default=None,
                    metavar="R", help="dump the crossing log from r=R")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("design", help="place M1 zeros at target energies")
    sp.add_argument("--case", choices=["Y", "X"], required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--targets", default="")
    sp.set_defaults(func=cmd_design)

    sp = sub.add_parser("verify", help="closed form vs oracle vs simulator")
    common(sp)
    sp.add_argument("--h-grid", default="0.5,1,2,3")
    sp.add_argument("--with-sim", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def _all_actions(parser):
    actions = {a.dest: a for a in parser._actions}
    for sp_action in parser._subparsers._group_actions:
        for sp in sp_action.choices.values():
            actions.update({a.dest: a for a in sp._actions})
    return actions


def _apply_config(parser, argv):
    """Config file supplies values for flags left at their parser default."""
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            defaults = json.load(fh)
        actions = _all_actions(parser)
        bad = set(defaults) - set(actions)
        if bad:
            raise SystemExit2(f"unknown config keys: {sorted(bad)}")
        for key, val in defaults.items():
            if hasattr(args, key) and getattr(args, key) == actions[key].default:
                setattr(args, key, val)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, sys.argv[1:] if argv is None else argv)
    except (SystemExit2, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except (SystemExit2, TooManyTargets, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureFailure, NoConvergence, SimulationError,
            PwLienardError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
