import numpy as np
import pytest

from tecopt.module import ModuleParams, tec1_12704
from tecopt.steady_state import Environment


def random_module(rng) -> ModuleParams:
    return ModuleParams(A=rng.uniform(0.02, 0.08), R=rng.uniform(1.0, 4.0),
                        K=rng.uniform(0.15, 0.6), I_max=rng.uniform(2.0, 8.0))


def random_environment(rng, max_gradient=30.0) -> Environment:
    T_C = rng.uniform(270.0, 310.0)
    return Environment(T_C=T_C, T_H=T_C + rng.uniform(0.0, max_gradient),
                       L_C=rng.uniform(0.5, 5.0), L_H=rng.uniform(0.5, 5.0))


@pytest.fixture
def tec():
    return tec1_12704()


@pytest.fixture
def fig2_env():
    return Environment(T_C=300.0, T_H=305.0, L_C=1.0, L_H=2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import re
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def order(line):
        number, suffix = re.match(r"criterion (\d+)(\w*)", line).groups()
        return int(number), suffix

    for line in sorted(module.RESULTS, key=order):
        terminalreporter.write_line(line)
