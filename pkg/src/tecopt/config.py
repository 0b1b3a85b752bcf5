"""JSON run configuration.

All quantities are SI. Field names match the model symbols::

    {
      "module_file": "tec1-12704",          # or "module": {...} or "materials": {...}
      "environment": {"T_C": 300, "T_H": 305, "L_C": 1, "L_H": 2},
      "bounds": {"I_min": 0, "I_max": 4},
      "tol": 1e-4,
      "grid": "0.01:4:0.01",
      "sweep": {"parameter": "T_H", "values": [310, 315, 320, 325]},
      "simulation": {
        "plant": {"C_c": 5, "C_h": 100, "U_c_amb": 0.45, "U_h_amb": 3,
                  "Q_int": 0, "T_amb": 303, "L_C": 1, "L_H": 2},
        "controller": {"update_period": 0.5, "tol": 1e-9},
        "initial": {"t": 0, "T_C": 303, "T_H": 323},
        "duration": 1200, "dt": 0.5
      }
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .controller import ControllerConfig, PlantModel, PlantState
from .errors import ValidationError
from .module import (LegMaterial, ModuleGeometry, ModuleParams, load_params,
                     lump_from_materials)
from .optimizer import DEFAULT_TOL, ENV_PARAMETERS, CurrentBounds
from .steady_state import Environment

TOP_LEVEL = {"module", "module_file", "materials", "environment", "bounds",
             "tol", "grid", "sweep", "simulation"}
MODULE_SOURCES = ("module", "module_file", "materials")


@dataclass(frozen=True)
class SimulationConfig:
    plant: PlantModel
    controller: ControllerConfig
    initial: PlantState
    duration: float
    dt: float


@dataclass(frozen=True)
class RunConfig:
    module: ModuleParams
    environment: Environment | None = None
    bounds: CurrentBounds | None = None
    tol: float = DEFAULT_TOL
    grid: np.ndarray | None = None
    sweep: tuple[str, list[float]] | None = None
    simulation: SimulationConfig | None = None

    @property
    def current_bounds(self) -> CurrentBounds:
        return self.bounds or CurrentBounds.for_module(self.module)


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:step`` with both ends inclusive; empty if ``stop < start``."""
    try:
        start, stop, step = (float(p) for p in str(text).split(":"))
    except ValueError:
        raise ValidationError("grid", f"expected start:stop:step, got {text!r}") from None
    if not step > 0:
        raise ValidationError("grid", "step must be > 0")
    if stop < start:
        return np.empty(0)
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _number(value, name):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(name, f"expected a number, got {value!r}") from None


def _section(data, name, cls, allowed=None):
    if not isinstance(data, dict):
        raise ValidationError(name, "expected a JSON object")
    fields = allowed or set(cls.__dataclass_fields__)
    unknown = set(data) - fields
    if unknown:
        raise ValidationError(f"{name}.{sorted(unknown)[0]}", "unknown field")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ValidationError(name, str(exc)) from None


def _module(data) -> ModuleParams:
    sources = [k for k in MODULE_SOURCES if k in data]
    if len(sources) != 1:
        raise ValidationError("module", f"exactly one of {MODULE_SOURCES} is required, got {sources}")
    key = sources[0]
    if key == "module_file":
        return load_params(data[key])
    if key == "module":
        if not isinstance(data[key], dict):
            raise ValidationError("module", "expected a JSON object")
        return ModuleParams.from_dict(data[key])
    mat = data[key]
    if not isinstance(mat, dict) or not {"p", "n", "geometry", "I_max"} <= set(mat):
        raise ValidationError("materials", "needs p, n, geometry and I_max")
    return lump_from_materials(
        _section(mat["p"], "materials.p", LegMaterial),
        _section(mat["n"], "materials.n", LegMaterial),
        _section(mat["geometry"], "materials.geometry", ModuleGeometry),
        I_max=mat["I_max"], V_max=mat.get("V_max"),
    )


def _simulation(data) -> SimulationConfig:
    if not isinstance(data, dict):
        raise ValidationError("simulation", "expected a JSON object")
    unknown = set(data) - {"plant", "controller", "initial", "duration", "dt"}
    if unknown:
        raise ValidationError(f"simulation.{sorted(unknown)[0]}", "unknown field")
    for key in ("plant", "initial", "duration", "dt"):
        if key not in data:
            raise ValidationError(f"simulation.{key}", "required")
    ctrl = dict(data.get("controller", {}))
    if "bounds" in ctrl and ctrl["bounds"] is not None:
        ctrl["bounds"] = _section(ctrl["bounds"], "simulation.controller.bounds", CurrentBounds)
    initial = dict(data["initial"])
    initial.setdefault("t", 0.0)
    return SimulationConfig(
        plant=_section(data["plant"], "simulation.plant", PlantModel),
        controller=_section(ctrl, "simulation.controller", ControllerConfig),
        initial=_section(initial, "simulation.initial", PlantState),
        duration=_number(data["duration"], "simulation.duration"),
        dt=_number(data["dt"], "simulation.dt"),
    )


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ValidationError("config", "top level must be a JSON object")
    unknown = set(data) - TOP_LEVEL
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown top-level field")
    module = _module(data)
    env = _section(data["environment"], "environment", Environment) if "environment" in data else None
    bounds = _section(data["bounds"], "bounds", CurrentBounds) if "bounds" in data else None
    tol = _number(data.get("tol", DEFAULT_TOL), "tol")
    if not tol > 0:
        raise ValidationError("tol", "must be > 0")
    grid = None
    if "grid" in data:
        g = data["grid"]
        if isinstance(g, list):
            grid = np.asarray(g, dtype=float)
        elif isinstance(g, dict):
            grid = parse_grid(f"{g.get('start')}:{g.get('stop')}:{g.get('step')}")
        else:
            grid = parse_grid(g)
    sweep = None
    if "sweep" in data:
        s = data["sweep"]
        if not isinstance(s, dict) or set(s) != {"parameter", "values"}:
            raise ValidationError("sweep", "expected {parameter, values}")
        if s["parameter"] not in ENV_PARAMETERS:
            raise ValidationError("sweep.parameter", f"must be one of {ENV_PARAMETERS}")
        if not isinstance(s["values"], list):
            raise ValidationError("sweep.values", "expected a list")
        sweep = (s["parameter"], [_number(v, "sweep.values") for v in s["values"]])
    sim = _simulation(data["simulation"]) if "simulation" in data else None
    return RunConfig(module=module, environment=env, bounds=bounds, tol=tol,
                     grid=grid, sweep=sweep, simulation=sim)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError("config", f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("config", f"invalid JSON: {exc}") from None
    return parse_config(data)
