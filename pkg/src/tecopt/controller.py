"""Closed-loop simulation of a controller that keeps the cooler at min gamma.

The plant is a two-node lumped-capacitance network: the cold space and the
hot-side heat sink, each with its own leak to ambient. The TE module is
treated as quasi-static (its steady-state solution at the instantaneous
reservoir temperatures). Integration is explicit Euler.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import exergy
from .errors import InfeasibleProblem, ModelError, UnstableStep, ValidationError
from .module import ModuleParams, require_positive
from .optimizer import DEFAULT_TOL, CurrentBounds, minimize_gamma
from .steady_state import Environment, OperatingPoint, operating_point


def _require_nonnegative(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(name, f"expected a number, got {value!r}") from None
    if not math.isfinite(value) or value < 0:
        raise ValidationError(name, f"must be finite and >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class PlantModel:
    C_c: float          # cold-space heat capacity, J/K
    C_h: float          # heat-sink heat capacity, J/K
    U_c_amb: float      # cold-space leak to ambient, W/K
    U_h_amb: float      # heat-sink exhaust to ambient, W/K
    Q_int: float        # internal load in the cold space, W
    T_amb: float        # ambient, K
    L_C: float          # cold exchanger conductance, W/K
    L_H: float          # hot exchanger conductance, W/K

    def __post_init__(self):
        for name in ("C_c", "C_h", "T_amb", "L_C", "L_H"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))
        for name in ("U_c_amb", "U_h_amb"):
            object.__setattr__(self, name, _require_nonnegative(name, getattr(self, name)))
        try:
            object.__setattr__(self, "Q_int", float(self.Q_int))
        except (TypeError, ValueError):
            raise ValidationError("Q_int", f"expected a number, got {self.Q_int!r}") from None

    def environment(self, T_C, T_H) -> Environment:
        return Environment(T_C=T_C, T_H=T_H, L_C=self.L_C, L_H=self.L_H)

    @property
    def max_stable_dt(self) -> float:
        g_cold = self.U_c_amb + self.L_C
        g_hot = self.U_h_amb + self.L_H
        return 0.5 * min(self.C_c, self.C_h) / max(g_cold, g_hot)


@dataclass(frozen=True)
class PlantState:
    t: float
    T_C: float
    T_H: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "T_C", require_positive("T_C", self.T_C))
        object.__setattr__(self, "T_H", require_positive("T_H", self.T_H))


@dataclass(frozen=True)
class ControllerConfig:
    """Controller settings.

    ``hold_on_infeasible`` is the current applied when no feasible current
    exists; ``None`` keeps whatever was applied last.
    """

    update_period: float = 1.0
    bounds: CurrentBounds | None = None
    tol: float = DEFAULT_TOL
    sensor_noise_std: float = 0.0
    hold_on_infeasible: float | None = 0.0
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "update_period",
                           require_positive("update_period", self.update_period))
        object.__setattr__(self, "tol", require_positive("tol", self.tol))
        object.__setattr__(self, "sensor_noise_std",
                           _require_nonnegative("sensor_noise_std", self.sensor_noise_std))
        if self.hold_on_infeasible is not None:
            object.__setattr__(self, "hold_on_infeasible",
                               _require_nonnegative("hold_on_infeasible", self.hold_on_infeasible))


@dataclass(frozen=True)
class Reading:
    t: float
    T_C: float
    T_H: float
    L_C: float
    L_H: float


@dataclass(frozen=True)
class TraceRecord:
    t: float
    I_applied: float
    point: OperatingPoint
    report: exergy.ExergyReport | None
    state: PlantState
    tick: bool = True

    @property
    def reading(self) -> Reading:
        env = self.point.env
        return Reading(self.t, env.T_C, env.T_H, env.L_C, env.L_H)


@dataclass
class SimTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def column(self, name: str) -> np.ndarray:
        """Column as a float array; undefined entries become NaN.

        Looks the name up on the record, then its state, operating point and
        exergy report.
        """
        out = np.empty(len(self.records))
        for i, rec in enumerate(self.records):
            for holder in (rec, rec.state, rec.point, rec.report):
                if holder is not None and hasattr(holder, name):
                    value = getattr(holder, name)
                    break
            else:
                if rec.report is None and name in exergy.ExergyReport.__dataclass_fields__:
                    value = None
                else:
                    raise KeyError(name)
            out[i] = np.nan if value is None else float(value)
        return out


def step_plant(plant: PlantModel, state: PlantState, op: OperatingPoint, dt: float) -> PlantState:
    """Advance both reservoir temperatures by one explicit-Euler step."""
    dt = require_positive("dt", dt)
    limit = plant.max_stable_dt
    if dt > limit:
        raise UnstableStep(f"dt={dt} s exceeds the explicit-Euler limit {limit:.6g} s")
    cold_net = plant.U_c_amb * (plant.T_amb - state.T_C) + plant.Q_int - op.Q_C
    hot_net = op.Q_H - plant.U_h_amb * (state.T_H - plant.T_amb)
    return PlantState(
        t=state.t + dt,
        T_C=state.T_C + dt / plant.C_c * cold_net,
        T_H=state.T_H + dt / plant.C_h * hot_net,
    )


def _steps(span, dt, name):
    n = round(span / dt)
    if abs(n * dt - span) > 1e-9 * max(1.0, span):
        raise ValidationError(name, f"{span} s is not a whole number of {dt} s steps")
    return n


class _Controller:
    def __init__(self, m, cfg):
        self.m = m
        self.cfg = cfg
        self.bounds = cfg.bounds or CurrentBounds.for_module(m)
        self.rng = np.random.default_rng(cfg.seed)
        self.current = 0.0

    def command(self, env: Environment) -> float:
        noise = self.cfg.sensor_noise_std
        if noise > 0:
            dT = self.rng.normal(0.0, noise, size=2)
            env = env.with_(T_C=env.T_C + dT[0], T_H=env.T_H + dT[1])
        try:
            self.current = minimize_gamma(self.m, env, self.bounds, self.cfg.tol).I_star
        except InfeasibleProblem:
            if self.cfg.hold_on_infeasible is not None:
                self.current = self.cfg.hold_on_infeasible
        return self.current


def _report_or_none(op):
    try:
        return exergy.gamma(op)
    except ModelError:
        return None


def run_closed_loop(m: ModuleParams, plant: PlantModel, cfg: ControllerConfig,
                    initial: PlantState, duration: float, dt: float) -> SimTrace:
    """Simulate ``duration`` seconds, re-optimizing every ``update_period``.

    Records one entry per integration step, including the initial state.
    """
    dt = require_positive("dt", dt)
    if duration < 0:
        raise ValidationError("duration", f"must be >= 0, got {duration!r}")
    if dt > cfg.update_period:
        raise ValidationError("dt", "must not exceed the controller update period")
    if dt > plant.max_stable_dt:
        raise UnstableStep(f"dt={dt} s exceeds the explicit-Euler limit {plant.max_stable_dt:.6g} s")
    n_steps = _steps(duration, dt, "duration")
    per_tick = _steps(cfg.update_period, dt, "update_period")

    controller = _Controller(m, cfg)
    state = initial
    trace = SimTrace()
    for k in range(n_steps + 1):
        env = plant.environment(state.T_C, state.T_H)
        tick = k % per_tick == 0
        if tick:
            controller.command(env)
        op = operating_point(m, env, controller.current)
        trace.records.append(TraceRecord(state.t, controller.current, op,
                                         _report_or_none(op), state, tick))
        if k < n_steps:
            nxt = step_plant(plant, state, op, dt)
            state = PlantState(initial.t + (k + 1) * dt, nxt.T_C, nxt.T_H)
    return trace


def replay_environment(m: ModuleParams, cfg: ControllerConfig, readings) -> SimTrace:
    """Evaluate what the controller would command for each measured reading."""
    controller = _Controller(m, cfg)
    trace = SimTrace()
    last_t = -math.inf
    for row, r in enumerate(readings, start=1):
        try:
            t = float(r.t)
            env = Environment(r.T_C, r.T_H, r.L_C, r.L_H)
        except (ValidationError, TypeError, ValueError) as exc:
            raise ValidationError(f"row {row}", str(exc)) from None
        if not (math.isfinite(t) and t > last_t):
            raise ValidationError(f"row {row}", "times must be finite and strictly increasing")
        last_t = t
        controller.command(env)
        op = operating_point(m, env, controller.current)
        state = PlantState(t, env.T_C, env.T_H)
        trace.records.append(TraceRecord(t, controller.current, op, _report_or_none(op), state))
    return trace
