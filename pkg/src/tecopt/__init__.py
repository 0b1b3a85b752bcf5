"""Thermoelectric cooler performance model and loss-ratio current optimizer."""
from .errors import (DegenerateGradient, InfeasibleProblem, ModelError,
                     NonPhysicalTemperature, NoDrive, NoUsefulCooling,
                     SingularSystem, TecError, UnstableStep, ValidationError)
from .exergy import (ExergyReport, cooling_loss, entropy_generation, gamma,
                     max_cooling, reversible_cop)
from .module import (LegMaterial, ModuleGeometry, ModuleParams,
                     figure_of_merit, from_ratings, load_params,
                     lump_from_materials, save_params, tec1_12704)
from .optimizer import (CurrentBounds, OptimizationResult, feasible_interval,
                        minimize_gamma, sweep_current, sweep_environment)
from .steady_state import (Environment, OperatingPoint,
                           junction_temperatures, operating_point,
                           solve_heat_flows)

__version__ = "0.1.0"
