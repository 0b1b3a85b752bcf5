"""``tecopt`` command-line front end.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 model error,
4 no feasible current.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import exergy, presets, tables
from .config import RunConfig, load_config, parse_grid
from .controller import run_closed_loop
from .errors import InfeasibleProblem, ModelError, ValidationError
from .module import tec1_12704
from .optimizer import (CurrentBounds, gamma_values, minimize_gamma,
                        sweep_current, sweep_environment)
from .steady_state import operating_point

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_INFEASIBLE = 0, 2, 3, 4


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _require_env(cfg: RunConfig):
    if cfg.environment is None:
        raise ValidationError("environment", "required for this command")
    return cfg.environment


def _grid(args, cfg, default=None):
    if args.grid is not None:
        return parse_grid(args.grid)
    if cfg is not None and cfg.grid is not None:
        return cfg.grid
    if default is not None:
        return parse_grid(default)
    raise ValidationError("grid", "give --grid or a grid in the config")


def cmd_solve(args):
    cfg = load_config(args.config)
    env = _require_env(cfg)
    if args.current is None:
        raise UsageError("solve needs --current")
    op = operating_point(cfg.module, env, args.current)
    try:
        report, error = exergy.gamma(op), None
    except ModelError as exc:
        report, error = None, type(exc).__name__
    with _output(args.out) as out:
        tables.write_table(out, tables.POINT_TABLE, [tables.point_row(op, report, error=error)])
    summary = (f"I={op.I:.6g} A  Q_C={op.Q_C:.6g} W  Q_H={op.Q_H:.6g} W  W={op.W:.6g} W  "
               f"T_Cj={op.T_Cj:.6g} K  T_Hj={op.T_Hj:.6g} K")
    if report is not None:
        summary += f"  COP={op.COP:.6g}  COP_rev={report.COP_rev:.6g}  gamma={report.gamma:.6g}"
    else:
        summary += f"  gamma undefined ({error})"
    print(summary, file=sys.stderr)


def cmd_sweep(args):
    cfg = load_config(args.config)
    env = _require_env(cfg)
    if cfg.sweep is not None:
        parameter, values = cfg.sweep
        rows = sweep_environment(cfg.module, env, parameter, values, cfg.bounds, cfg.tol)
        with _output(args.out) as out:
            tables.write_table(out, tables.ENV_SWEEP_TABLE, tables.environment_sweep_rows(rows, env))
        return
    grid = _grid(args, cfg)
    rows = sweep_current(cfg.module, env, grid)
    with _output(args.out) as out:
        tables.write_table(out, tables.POINT_TABLE, tables.current_sweep_rows(rows, env))


def cmd_optimize(args):
    cfg = load_config(args.config)
    env = _require_env(cfg)
    result = minimize_gamma(cfg.module, env, cfg.current_bounds, cfg.tol)
    with _output(args.out) as out:
        tables.write_table(out, tables.OPTIMIZE_TABLE, [tables.optimum_row(result)])


def _simulate(m, sim):
    return run_closed_loop(m, sim.plant, sim.controller, sim.initial, sim.duration, sim.dt)


def cmd_simulate(args):
    cfg = load_config(args.config)
    if cfg.simulation is None:
        raise ValidationError("simulation", "required for simulate")
    trace = _simulate(cfg.module, cfg.simulation)
    with _output(args.out) as out:
        tables.write_table(out, tables.TRACE_TABLE, tables.trace_rows(trace))


def _fig4_rows(m, name, grid, bounds):
    base, parameter, values = presets.FIG4[name]
    results = sweep_environment(m, base, parameter, values, bounds)
    rows = []
    for res in results:
        env = base.with_(**{parameter: res.value})
        g = gamma_values(m, env, grid)
        for I, gv in zip(grid, g):
            rows.append({
                "parameter": parameter, "value": res.value, "I": I,
                "gamma": None if np.isnan(gv) else gv,
                "I_star": res.result.I_star if res.result else None,
                "gamma_star": res.result.gamma_star if res.result else None,
            })
    return ["parameter", "value", "I", "gamma", "I_star", "gamma_star"], rows


def cmd_reproduce(args):
    m = load_config(args.config).module if args.config else tec1_12704()
    bounds = CurrentBounds.for_module(m)
    fig = args.figure
    if fig == "fig2":
        env = presets.FIG2_ENV
        rows = tables.current_sweep_rows(sweep_current(m, env, _grid(args, None, presets.CURRENT_GRID)), env)
        columns = tables.POINT_TABLE
    elif fig == "fig3":
        grid = _grid(args, None, presets.CURRENT_GRID)
        columns, rows = ["dT"] + tables.POINT_TABLE, []
        for dT in presets.FIG3_GRADIENTS:
            env = presets.FIG2_ENV.with_(T_H=presets.FIG2_ENV.T_C + dT)
            for row in tables.current_sweep_rows(sweep_current(m, env, grid), env):
                row["dT"] = dT
                rows.append(row)
    elif fig in presets.FIG4:
        columns, rows = _fig4_rows(m, fig, _grid(args, None, presets.CURRENT_GRID), bounds)
    else:
        trace = _simulate(m, presets.CONVERGING)
        rows = tables.trace_rows(trace)
        if fig == "fig6":
            columns = ["t", "T_C", "T_H", "I", "Q_H", "Q_C", "W", "COP", "COP_rev", "gamma"]
        else:
            columns = ["t", "T_C", "T_H", "I", "Q_C", "Q_C_loss", "gamma"]
    with _output(args.out) as out:
        tables.write_table(out, columns, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tecopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="JSON run configuration")
        p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")

    p = sub.add_parser("solve", help="operating point and exergy report at one current")
    common(p)
    p.add_argument("--current", type=float, help="drive current in A")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="current sweep, or environment sweep if configured")
    common(p)
    p.add_argument("--grid", help="current grid start:stop:step (A)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="current minimizing gamma")
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("simulate", help="closed-loop controller simulation")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce", help="figure datasets for the TEC1-12704 module")
    p.add_argument("figure", choices=presets.FIGURES)
    common(p, config_required=False)
    p.add_argument("--grid", help="current grid start:stop:step (A)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        args.func(args)
    except (ValidationError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleProblem as exc:
        print(f"error: InfeasibleProblem: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ModelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MODEL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
