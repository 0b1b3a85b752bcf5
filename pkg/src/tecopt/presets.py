"""Environments and simulation settings behind the ``reproduce`` subcommand.

Each ``figN`` name is a fixed dataset for the TEC1-12704 module. Unless a
sweep varies them, the exchangers are ``L_C = 1 W/K`` and ``L_H = 2 W/K``
(the hot side gets twice the airflow).

The simulation preset is a desk-scale plant: a light cold space coupled to
a heavier heat sink that starts 20 K above ambient, tuned so the cold space
settles about 9 K below ambient.
"""
from __future__ import annotations

from .config import SimulationConfig
from .controller import ControllerConfig, PlantModel, PlantState
from .steady_state import Environment

FIG2_ENV = Environment(T_C=300.0, T_H=305.0, L_C=1.0, L_H=2.0)
CURRENT_GRID = "0.01:4:0.01"

FIG3_GRADIENTS = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]

CONDUCTANCES = [0.85, 1.5, 2.5, 3.5, 4.75]
FIG4 = {
    "fig4a": (Environment(300.0, 310.0, 1.0, 2.0), "T_H", [310.0, 315.0, 320.0, 325.0]),
    "fig4b": (Environment(300.0, 305.0, 1.0, 2.0), "T_C", [285.0, 290.0, 295.0, 300.0]),
    "fig4c": (Environment(300.0, 330.0, 1.0, 2.0), "L_H", CONDUCTANCES),
    "fig4d": (Environment(300.0, 330.0, 1.0, 2.0), "L_C", CONDUCTANCES),
}

CONVERGING_PLANT = PlantModel(C_c=5.0, C_h=100.0, U_c_amb=0.45, U_h_amb=3.0,
                              Q_int=0.0, T_amb=303.0, L_C=1.0, L_H=2.0)
CONVERGING = SimulationConfig(
    plant=CONVERGING_PLANT,
    controller=ControllerConfig(update_period=0.5, tol=1e-9),
    initial=PlantState(t=0.0, T_C=303.0, T_H=323.0),
    duration=1200.0,
    dt=0.5,
)

FIGURES = ("fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig6", "fig7")
