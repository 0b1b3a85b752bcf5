"""Second-law bookkeeping for a steady-state operating point.

All reversible-limit quantities are referenced to the junction temperatures
``T_Cj``/``T_Hj``. ``eta_II`` follows the ``COP_rev / COP`` convention
(always >= 1), which makes ``gamma = eta_II - 1`` hold; it is the reciprocal
of the usual textbook second-law efficiency.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (DegenerateGradient, NoDrive, NoUsefulCooling,
                     ValidationError)
from .steady_state import OperatingPoint


@dataclass(frozen=True)
class ExergyReport:
    s_gen: float      # entropy generation rate, W/K
    COP_rev: float
    Q_C_max: float    # reversible cooling for the same electrical power, W
    Q_C_loss: float   # Q_C_max - Q_C, W
    eta_II: float     # COP_rev / COP
    gamma: float      # Q_C_loss / Q_C
    T_Cj: float
    T_Hj: float
    T_C: float
    T_H: float


def _require_junctions(T_Cj, T_Hj):
    if not T_Cj > 0:
        raise ValidationError("T_Cj", f"must be > 0, got {T_Cj!r}")
    if not T_Hj > 0:
        raise ValidationError("T_Hj", f"must be > 0, got {T_Hj!r}")


def entropy_generation(op: OperatingPoint) -> float:
    """Entropy generated per second: heat into the hot side over ``T_Hj``
    minus heat drawn from the cold side over ``T_Cj``."""
    _require_junctions(op.T_Cj, op.T_Hj)
    return op.Q_H / op.T_Hj - op.Q_C / op.T_Cj


def reversible_cop(T_Cj: float, T_Hj: float) -> float:
    _require_junctions(T_Cj, T_Hj)
    if T_Hj <= T_Cj:
        raise DegenerateGradient(
            f"reversible COP unbounded: T_Hj={T_Hj!r} K <= T_Cj={T_Cj!r} K"
        )
    return T_Cj / (T_Hj - T_Cj)


def max_cooling(W: float, T_Cj: float, T_Hj: float) -> float:
    if W < 0:
        raise ValidationError("W", f"must be >= 0, got {W!r}")
    return W * reversible_cop(T_Cj, T_Hj)


def cooling_loss(op: OperatingPoint) -> float:
    return max_cooling(op.W, op.T_Cj, op.T_Hj) - op.Q_C


def gamma(op: OperatingPoint) -> ExergyReport:
    """Loss ratio and the rest of the second-law report for ``op``.

    Only defined with useful cooling (``Q_C > 0``), positive drive
    (``W > 0``) and a hot junction above the cold one.
    """
    if not op.Q_C > 0:
        raise NoUsefulCooling(f"Q_C={op.Q_C!r} W at I={op.I!r} A")
    if not op.W > 0:
        raise NoDrive(f"W={op.W!r} W at I={op.I!r} A")
    cop_rev = reversible_cop(op.T_Cj, op.T_Hj)
    q_max = op.W * cop_rev
    q_loss = q_max - op.Q_C
    cop = op.Q_C / op.W
    return ExergyReport(
        s_gen=entropy_generation(op),
        COP_rev=cop_rev,
        Q_C_max=q_max,
        Q_C_loss=q_loss,
        eta_II=cop_rev / cop,
        gamma=q_loss / op.Q_C,
        T_Cj=op.T_Cj,
        T_Hj=op.T_Hj,
        T_C=op.env.T_C,
        T_H=op.env.T_H,
    )
