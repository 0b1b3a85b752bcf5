"""Current selection: the drive current that minimizes the loss ratio gamma.

gamma(I) is smooth on the feasible interval and, for every environment we
have looked at, has a single minimum there. The search is a golden-section
search seeded from a coarse pre-scan; if the pre-scan shows more than one
local minimum the search falls back to a dense grid before refining.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import exergy
from .errors import InfeasibleProblem, ModelError, ValidationError
from .module import ModuleParams
from .steady_state import (SINGULAR_RTOL, Environment, OperatingPoint,
                           operating_point, solve_linear)

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_TOL = 1e-4
FEASIBILITY_TOL = 1e-6
FEASIBILITY_SCAN = 257
PRESCAN = 64
DENSE_SCAN = 4097
ENV_PARAMETERS = ("T_H", "T_C", "L_H", "L_C")


@dataclass(frozen=True)
class CurrentBounds:
    I_min: float
    I_max: float

    def __post_init__(self):
        lo, hi = float(self.I_min), float(self.I_max)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError("bounds", "current bounds must be finite")
        if lo < 0:
            raise ValidationError("I_min", "negative drive is outside the cooling regime")
        if lo > hi:
            raise ValidationError("I_min", f"I_min={lo} exceeds I_max={hi}")
        object.__setattr__(self, "I_min", lo)
        object.__setattr__(self, "I_max", hi)

    @classmethod
    def for_module(cls, m: ModuleParams) -> "CurrentBounds":
        return cls(0.0, m.I_max)


@dataclass(frozen=True)
class OptimizationResult:
    I_star: float
    gamma_star: float
    operating_point: OperatingPoint
    report: exergy.ExergyReport
    evaluations: int
    converged: bool
    feasible_interval: tuple[float, float]
    unimodal: bool = True


def gamma_values(m: ModuleParams, env: Environment, currents) -> np.ndarray:
    """Vectorized gamma over an array of currents; NaN where undefined."""
    I = np.asarray(currents, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q_c, q_h, det, scale = solve_linear(m, env, I)
        t_cj = env.T_C - q_c / env.L_C
        t_hj = env.T_H + q_h / env.L_H
        w = q_h - q_c
        ok = ((np.abs(det) > SINGULAR_RTOL * scale) & (q_c > 0) & (w > 0)
              & (t_cj > 0) & (t_hj > t_cj))
        loss = w * t_cj / (t_hj - t_cj) - q_c
        g = loss / q_c
    return np.where(ok, g, np.nan)


def _gamma_scalar(m: ModuleParams, env: Environment, I: float) -> float:
    q_c, q_h, det, scale = solve_linear(m, env, I)
    if abs(det) <= SINGULAR_RTOL * scale:
        return math.inf
    t_cj = env.T_C - q_c / env.L_C
    t_hj = env.T_H + q_h / env.L_H
    w = q_h - q_c
    if not (q_c > 0 and w > 0 and t_cj > 0 and t_hj > t_cj):
        return math.inf
    return (w * t_cj / (t_hj - t_cj) - q_c) / q_c


def _defined(m, env, I):
    return math.isfinite(_gamma_scalar(m, env, I))


def _bisect_edge(m, env, bad, good, tol):
    while abs(good - bad) > tol:
        mid = 0.5 * (bad + good)
        if _defined(m, env, mid):
            good = mid
        else:
            bad = mid
    return good


def feasible_interval(m: ModuleParams, env: Environment,
                      bounds: CurrentBounds | None = None,
                      tol: float = FEASIBILITY_TOL) -> tuple[float, float] | None:
    """Largest sub-interval of ``bounds`` on which gamma is defined.

    Returns ``None`` when no scanned current gives useful cooling. Edges are
    located by bisection to ``tol`` and always lie on the feasible side.
    Feasible windows narrower than the scan spacing can be missed.
    """
    bounds = bounds or CurrentBounds.for_module(m)
    lo, hi = bounds.I_min, bounds.I_max
    if lo == hi:
        return (lo, hi) if _defined(m, env, lo) else None
    xs = np.linspace(lo, hi, FEASIBILITY_SCAN)
    ok = np.isfinite(gamma_values(m, env, xs))
    if not ok.any():
        return None

    # longest run of feasible scan points
    best_start, best_len, start = 0, 0, None
    for i, flag in enumerate(np.append(ok, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if i - start > best_len:
                best_start, best_len = start, i - start
            start = None
    i0, i1 = best_start, best_start + best_len - 1

    left = float(xs[i0]) if i0 == 0 else _bisect_edge(m, env, float(xs[i0 - 1]), float(xs[i0]), tol)
    right = (float(xs[i1]) if i1 == len(xs) - 1
             else _bisect_edge(m, env, float(xs[i1 + 1]), float(xs[i1]), tol))
    return left, right


def golden_section(f, a, b, tol, max_iter=200):
    """Minimize a unimodal ``f`` on ``[a, b]``.

    Returns ``(x, f(x), evaluations, converged)`` where ``x`` is the best
    interior probe once the bracket is narrower than ``tol``.
    """
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol and evals < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
        evals += 1
    if fc <= fd:
        return c, fc, evals, b - a <= tol
    return d, fd, evals, b - a <= tol


def count_local_minima(values) -> int:
    """Strict local minima of a sampled curve, endpoints included."""
    v = np.where(np.isfinite(values), values, np.inf)
    n = len(v)
    if n == 1:
        return 1
    count = int(v[0] < v[1]) + int(v[-1] < v[-2])
    if n > 2:
        mid = v[1:-1]
        count += int(np.count_nonzero((mid < v[:-2]) & (mid < v[2:])))
    return count


def minimize_gamma(m: ModuleParams, env: Environment,
                   bounds: CurrentBounds | None = None,
                   tol: float = DEFAULT_TOL) -> OptimizationResult:
    if not tol > 0:
        raise ValidationError("tol", f"must be > 0, got {tol!r}")
    interval = feasible_interval(m, env, bounds)
    if interval is None:
        raise InfeasibleProblem(
            f"no current in bounds gives useful cooling (T_C={env.T_C}, T_H={env.T_H}, "
            f"L_C={env.L_C}, L_H={env.L_H})"
        )
    lo, hi = interval
    unimodal = True
    converged = True
    evaluations = 0

    if lo == hi:
        best = lo
        evaluations = 1
    else:
        xs = np.linspace(lo, hi, PRESCAN)
        g = gamma_values(m, env, xs)
        evaluations += PRESCAN
        if count_local_minima(g) > 1:
            unimodal = False
            xs = np.linspace(lo, hi, DENSE_SCAN)
            g = gamma_values(m, env, xs)
            evaluations += DENSE_SCAN
        g = np.where(np.isfinite(g), g, np.inf)
        k = int(np.argmin(g))
        a = float(xs[max(k - 1, 0)])
        b = float(xs[min(k + 1, len(xs) - 1)])
        x, fx, n, converged = golden_section(lambda I: _gamma_scalar(m, env, I), a, b, tol)
        evaluations += n
        best = x if fx < g[k] else float(xs[k])

    op = operating_point(m, env, best)
    report = exergy.gamma(op)
    return OptimizationResult(
        I_star=best,
        gamma_star=report.gamma,
        operating_point=op,
        report=report,
        evaluations=evaluations,
        converged=converged,
        feasible_interval=interval,
        unimodal=unimodal,
    )


@dataclass(frozen=True)
class CurrentSweepRow:
    I: float
    point: OperatingPoint | None
    report: exergy.ExergyReport | None
    error: str | None = None


@dataclass(frozen=True)
class EnvironmentSweepRow:
    parameter: str
    value: float
    result: OptimizationResult | None
    error: str | None = None


def thread_count() -> int:
    raw = os.environ.get("TEC_OPT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValidationError("TEC_OPT_THREADS", f"expected an integer, got {raw!r}") from None


def _ordered_map(fn, items, threads):
    threads = threads or thread_count()
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _evaluate_current(m, env, I):
    I = float(I)
    try:
        op = operating_point(m, env, I)
    except ModelError as exc:
        return CurrentSweepRow(I, None, None, type(exc).__name__)
    if I < 0:
        return CurrentSweepRow(I, op, None, "NegativeCurrent")
    try:
        return CurrentSweepRow(I, op, exergy.gamma(op))
    except ModelError as exc:
        return CurrentSweepRow(I, op, None, type(exc).__name__)


def sweep_current(m: ModuleParams, env: Environment, grid,
                  threads: int | None = None) -> list[CurrentSweepRow]:
    """One row per grid current. Points where gamma is undefined keep their
    operating point (if any) and carry the error name instead of a report."""
    grid = [float(x) for x in np.asarray(grid, dtype=float).ravel()]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValidationError("grid", "currents must be sorted ascending")
    return _ordered_map(lambda I: _evaluate_current(m, env, I), grid, threads)


def sweep_environment(m: ModuleParams, base_env: Environment, parameter: str, values,
                      bounds: CurrentBounds | None = None, tol: float = DEFAULT_TOL,
                      threads: int | None = None) -> list[EnvironmentSweepRow]:
    if parameter not in ENV_PARAMETERS:
        raise ValidationError("parameter", f"must be one of {ENV_PARAMETERS}, got {parameter!r}")
    envs = [base_env.with_(**{parameter: v}) for v in values]

    def run(env):
        value = getattr(env, parameter)
        try:
            return EnvironmentSweepRow(parameter, value, minimize_gamma(m, env, bounds, tol))
        except ModelError as exc:
            return EnvironmentSweepRow(parameter, value, None, type(exc).__name__)

    return _ordered_map(run, envs, threads)
