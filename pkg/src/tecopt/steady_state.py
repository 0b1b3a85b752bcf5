"""Steady-state heat balance of a TE cooler between two finite heat exchangers.

Sign convention: ``Q_C > 0`` is heat pulled out of the cold space,
``Q_H > 0`` heat rejected into the hot space. At low current with
``T_H > T_C`` back-conduction wins and ``Q_C`` goes negative.

Junction balances (cold, hot)::

    A*I*T_Cj - R*I**2/2 - K*(T_Hj - T_Cj) - Q_C = 0
    A*I*T_Hj + R*I**2/2 - K*(T_Hj - T_Cj) - Q_H = 0

with the exchangers ``Q_C = L_C*(T_C - T_Cj)`` and ``Q_H = L_H*(T_Hj - T_H)``.
Eliminating the junction temperatures leaves a 2x2 linear system in
``(Q_C, Q_H)`` that is solved directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import NonPhysicalTemperature, SingularSystem, ValidationError
from .module import ModuleParams, require_positive

SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class Environment:
    T_C: float  # cold-space temperature, K
    T_H: float  # hot-space temperature, K
    L_C: float  # cold exchanger conductance, W/K
    L_H: float  # hot exchanger conductance, W/K

    def __post_init__(self):
        for name in ("T_C", "T_H", "L_C", "L_H"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))

    def with_(self, **changes) -> "Environment":
        return replace(self, **changes)


@dataclass(frozen=True)
class OperatingPoint:
    """Full steady-state solution at one current.

    ``V`` is ``None`` at zero current and ``COP`` is ``None`` unless ``W > 0``.
    """

    I: float
    Q_C: float
    Q_H: float
    T_Cj: float
    T_Hj: float
    W: float
    V: float | None
    COP: float | None
    env: Environment = field(repr=False, compare=False)


def balance_system(m: ModuleParams, env: Environment, I):
    """Coefficients ``(a11, a12, b1, a21, a22, b2)`` of the reduced system.

    Works elementwise when ``I`` is a numpy array.
    """
    A, R, K = m.A, m.R, m.K
    dT = env.T_H - env.T_C
    joule = 0.5 * R * I * I
    a11 = -A * I / env.L_C - K / env.L_C - 1.0
    a12 = -K / env.L_H
    b1 = -A * I * env.T_C + joule + K * dT
    a21 = -K / env.L_C
    a22 = A * I / env.L_H - K / env.L_H - 1.0
    b2 = -A * I * env.T_H - joule + K * dT
    return a11, a12, b1, a21, a22, b2


def solve_linear(m: ModuleParams, env: Environment, I):
    """Cramer's-rule solve; returns ``(Q_C, Q_H, det, scale)`` without checks."""
    a11, a12, b1, a21, a22, b2 = balance_system(m, env, I)
    det = a11 * a22 - a12 * a21
    # product of row norms bounds |det|; the ratio measures how close the rows are to parallel
    scale = (abs(a11) + abs(a12)) * (abs(a21) + abs(a22))
    Q_C = (b1 * a22 - a12 * b2) / det
    Q_H = (a11 * b2 - a21 * b1) / det
    return Q_C, Q_H, det, scale


def balance_residuals(m: ModuleParams, env: Environment, I, Q_C, Q_H):
    """Residuals of the cold and hot balances with exchangers substituted.

    Evaluated term by term from the junction form, independent of the
    coefficients in :func:`balance_system`.
    """
    A, R, K = m.A, m.R, m.K
    T_Cj = env.T_C - Q_C / env.L_C
    T_Hj = env.T_H + Q_H / env.L_H
    cold = A * I * T_Cj - 0.5 * R * I * I - K * (T_Hj - T_Cj) - Q_C
    hot = A * I * T_Hj + 0.5 * R * I * I - K * (T_Hj - T_Cj) - Q_H
    return cold, hot


def residual_scale(m: ModuleParams, env: Environment, I, Q_C, Q_H):
    return max(1.0, abs(Q_C), abs(Q_H), m.K * abs(env.T_H - env.T_C), m.R * I * I)


def _check_current(I):
    try:
        I = float(I)
    except (TypeError, ValueError):
        raise ValidationError("I", f"expected a number, got {I!r}") from None
    if not math.isfinite(I):
        raise ValidationError("I", f"must be finite, got {I!r}")
    return I


def solve_heat_flows(m: ModuleParams, env: Environment, I: float) -> tuple[float, float]:
    """Heat flows ``(Q_C, Q_H)`` in watts at current ``I``.

    Raises :class:`SingularSystem` when the determinant is negligible
    relative to the product of the row norms.
    """
    I = _check_current(I)
    Q_C, Q_H, det, scale = solve_linear(m, env, I)
    if abs(det) <= SINGULAR_RTOL * scale:
        raise SingularSystem(det, scale)
    return Q_C, Q_H


def junction_temperatures(env: Environment, Q_C: float, Q_H: float) -> tuple[float, float]:
    T_Cj = env.T_C - Q_C / env.L_C
    T_Hj = env.T_H + Q_H / env.L_H
    if T_Cj <= 0 or T_Hj <= 0:
        raise NonPhysicalTemperature(
            f"junction temperatures T_Cj={T_Cj:.6g} K, T_Hj={T_Hj:.6g} K are not positive"
        )
    return T_Cj, T_Hj


def operating_point(m: ModuleParams, env: Environment, I: float) -> OperatingPoint:
    I = _check_current(I)
    Q_C, Q_H = solve_heat_flows(m, env, I)
    T_Cj, T_Hj = junction_temperatures(env, Q_C, Q_H)
    W = Q_H - Q_C
    V = W / I if I != 0 else None
    COP = Q_C / W if W > 0 else None
    return OperatingPoint(I=I, Q_C=Q_C, Q_H=Q_H, T_Cj=T_Cj, T_Hj=T_Hj,
                          W=W, V=V, COP=COP, env=env)
