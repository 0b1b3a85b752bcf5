"""Lumped thermoelectric module parameters.

A module of ``N`` p-n couples is described by three lumped constants: the
Seebeck coefficient ``A`` (V/K), the electrical resistance ``R`` (ohm) and
the thermal conductance ``K`` (W/K). They can be built from per-leg material
properties and geometry, or derived from a datasheet rating envelope.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .errors import ValidationError

BUILTIN_MODULES = {"tec1-12704": "tec1-12704.json"}


def require_positive(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(name, f"expected a number, got {value!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise ValidationError(name, f"must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class LegMaterial:
    """Magnitudes of one leg's transport properties (SI units)."""

    rho: float    # electrical resistivity, ohm*m
    alpha: float  # Seebeck coefficient magnitude, V/K
    kappa: float  # thermal conductivity, W/(m*K)

    def __post_init__(self):
        for name in ("rho", "alpha", "kappa"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))


@dataclass(frozen=True)
class ModuleGeometry:
    l: float  # effective leg length, m
    S: float  # leg cross-section, m^2
    N: int    # number of p-n couples

    def __post_init__(self):
        object.__setattr__(self, "l", require_positive("l", self.l))
        object.__setattr__(self, "S", require_positive("S", self.S))
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise ValidationError("N", f"must be an integer >= 1, got {self.N!r}")


@dataclass(frozen=True)
class ModuleParams:
    A: float
    R: float
    K: float
    I_max: float
    V_max: float | None = None

    def __post_init__(self):
        for name in ("A", "R", "K", "I_max"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))
        if self.V_max is not None:
            object.__setattr__(self, "V_max", require_positive("V_max", self.V_max))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        allowed = {"A", "R", "K", "I_max", "V_max"}
        unknown = set(data) - allowed - {"derivation"}
        if unknown:
            raise ValidationError(sorted(unknown)[0], "unknown module parameter")
        missing = {"A", "R", "K", "I_max"} - set(data)
        if missing:
            raise ValidationError(sorted(missing)[0], "missing module parameter")
        return cls(**{k: data[k] for k in allowed if k in data})


def lump_from_materials(p: LegMaterial, n: LegMaterial, geometry: ModuleGeometry,
                        I_max: float, V_max: float | None = None) -> ModuleParams:
    """Sum both legs over ``N`` couples into lumped ``A``, ``R``, ``K``.

    The resistance uses the leg aspect ratio ``l/S`` (ohm*m times 1/m gives
    ohm), the conductance its inverse ``S/l``.
    """
    g = geometry
    A = (p.alpha + n.alpha) * g.N
    R = (p.rho + n.rho) * (g.l / g.S) * g.N
    K = (p.kappa + n.kappa) * (g.S / g.l) * g.N
    return ModuleParams(A=A, R=R, K=K, I_max=I_max, V_max=V_max)


def figure_of_merit(m: ModuleParams, T: float) -> float:
    """Dimensionless ``ZT = A**2 / (K*R) * T`` at reference temperature ``T``."""
    T = require_positive("T", T)
    return m.A * m.A / (m.K * m.R) * T


def from_ratings(I_max: float, V_max: float, dT_max: float, T_hot: float) -> ModuleParams:
    """Back out ``A``, ``R``, ``K`` from a datasheet rating envelope.

    Uses the textbook maximum-performance relations of a single-stage cooler
    whose hot face is held at ``T_hot``:

    * at ``I_max`` the cold face reaches ``T_cold = T_hot - dT_max`` with zero
      load, so ``I_max = A*T_cold/R``;
    * the voltage there is ``V_max = R*I_max + A*dT_max = A*T_hot``;
    * ``dT_max = Z*T_cold**2/2`` with ``Z = A**2/(K*R)``.
    """
    I_max = require_positive("I_max", I_max)
    V_max = require_positive("V_max", V_max)
    dT_max = require_positive("dT_max", dT_max)
    T_hot = require_positive("T_hot", T_hot)
    T_cold = T_hot - dT_max
    if T_cold <= 0:
        raise ValidationError("dT_max", "must be below T_hot")
    A = V_max / T_hot
    R = A * T_cold / I_max
    Z = 2.0 * dT_max / T_cold**2
    K = A * A / (Z * R)
    return ModuleParams(A=A, R=R, K=K, I_max=I_max, V_max=V_max)


def load_params(source: str | Path) -> ModuleParams:
    """Load module parameters from a JSON file or a bundled module name."""
    key = str(source)
    if key in BUILTIN_MODULES:
        text = resources.files("tecopt").joinpath("data").joinpath(BUILTIN_MODULES[key]).read_text()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ValidationError("module_file", f"cannot read {source}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("module_file", f"invalid JSON: {exc}") from None
    return ModuleParams.from_dict(data)


def save_params(m: ModuleParams, path: str | Path) -> None:
    Path(path).write_text(json.dumps(m.to_dict(), indent=2) + "\n")


def tec1_12704() -> ModuleParams:
    """Bundled calibration for the TEC1-12704 module."""
    return load_params("tec1-12704")
