import csv
import io
import json

import pytest

from tecopt.cli import main
from tecopt.tables import OPTIMIZE_TABLE, POINT_TABLE

FIG2 = {"module_file": "tec1-12704",
        "environment": {"T_C": 300, "T_H": 305, "L_C": 1, "L_H": 2}}


@pytest.fixture
def write_config(tmp_path):
    def write(data):
        path = tmp_path / "run.json"
        path.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(path)
    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    rows = list(csv.DictReader(io.StringIO(out))) if out else []
    return code, out, err, rows


def test_solve_fig2(write_config, capsys):
    code, out, err, rows = run(["solve", "--config", write_config(FIG2), "--current", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0].split(",") == POINT_TABLE
    row = rows[0]
    assert float(row["Q_C"]) == pytest.approx(10.80632646971053416890480, rel=1e-13)
    assert float(row["gamma"]) == pytest.approx(10.42917978193642988798437, rel=1e-12)
    assert row["error"] == "NA"
    assert "gamma=" in err


def test_solve_idle_row(write_config, capsys):
    cfg = dict(FIG2, environment={"T_C": 300, "T_H": 300, "L_C": 1, "L_H": 2})
    code, _, err, rows = run(["solve", "--config", write_config(cfg), "--current", "0"], capsys)
    assert code == 0
    row = rows[0]
    assert float(row["Q_C"]) == 0 and float(row["W"]) == 0
    assert row["V"] == "NA" and row["COP"] == "NA" and row["gamma"] == "NA"
    assert row["error"] == "NoUsefulCooling"


def test_csv_round_trip_is_bit_exact(write_config, tmp_path, capsys):
    out_path = tmp_path / "opt.csv"
    code = main(["optimize", "--config", write_config(FIG2), "--out", str(out_path)])
    assert code == 0
    from tecopt.module import tec1_12704
    from tecopt.optimizer import minimize_gamma
    from tecopt.steady_state import Environment
    res = minimize_gamma(tec1_12704(), Environment(300, 305, 1, 2))
    with open(out_path, newline="") as fh:
        header = fh.readline()
        assert header == ",".join(OPTIMIZE_TABLE) + "\n"
        fh.seek(0)
        row = next(csv.DictReader(fh))
    assert float(row["I_star"]) == res.I_star
    assert float(row["gamma_star"]) == res.gamma_star
    assert float(row["Q_C_loss"]) == res.report.Q_C_loss


@pytest.mark.parametrize("data", [
    "{broken",
    {"environment": {"T_C": 300, "T_H": 305, "L_C": 1, "L_H": 2}},
    dict(FIG2, extra=1),
    dict(FIG2, environment={"T_C": 300, "T_H": 305, "L_C": 0, "L_H": 2}),
    dict(FIG2, environment={"T_C": 300, "T_H": 305, "L_C": 1}),
    dict(FIG2, bounds={"I_min": -1, "I_max": 4}),
    dict(FIG2, tol=0),
    dict(FIG2, module={"A": 0.04, "R": 2.34, "K": 0.28, "I_max": 4}),
])
def test_invalid_config_exits_2(data, write_config, capsys):
    code, _, err, _ = run(["optimize", "--config", write_config(data)], capsys)
    assert code == 2
    assert err.startswith("error: ValidationError")


def test_argument_errors_exit_2(write_config, capsys):
    assert main(["solve", "--config", write_config(FIG2)]) == 2
    assert main(["nonsense"]) == 2
    assert main(["sweep", "--config", write_config(FIG2), "--grid", "0:1"]) == 2
    assert main(["optimize", "--config", "/nonexistent/run.json"]) == 2
    capsys.readouterr()


def test_model_error_exits_3(write_config, capsys):
    cfg = dict(FIG2, environment={"T_C": 300, "T_H": 305, "L_C": 0.01, "L_H": 0.01})
    code, _, err, _ = run(["solve", "--config", write_config(cfg), "--current", "4"], capsys)
    assert code == 3
    assert "NonPhysicalTemperature" in err


def test_infeasible_exits_4(write_config, capsys):
    cfg = dict(FIG2, environment={"T_C": 250, "T_H": 400, "L_C": 1, "L_H": 2})
    code, out, err, _ = run(["optimize", "--config", write_config(cfg)], capsys)
    assert code == 4
    assert out == ""
    assert "InfeasibleProblem" in err


def test_current_sweep_and_empty_grid(write_config, capsys):
    code, _, _, rows = run(["sweep", "--config", write_config(FIG2), "--grid", "0.5:1.5:0.5"], capsys)
    assert code == 0
    assert [float(r["I"]) for r in rows] == [0.5, 1.0, 1.5]
    code, out, _, rows = run(["sweep", "--config", write_config(FIG2), "--grid", "1:0:0.1"], capsys)
    assert code == 0 and rows == []
    assert out == ",".join(POINT_TABLE) + "\n"


def test_environment_sweep_from_config(write_config, capsys):
    cfg = dict(FIG2, sweep={"parameter": "T_H", "values": [310, 315, 400]})
    code, _, _, rows = run(["sweep", "--config", write_config(cfg)], capsys)
    assert code == 0
    assert [r["error"] for r in rows] == ["NA", "NA", "InfeasibleProblem"]
    assert float(rows[0]["I_star"]) < float(rows[1]["I_star"])


def test_reproduce_fig4a(capsys):
    code, _, _, rows = run(["reproduce", "fig4a", "--grid", "0.5:2:0.5"], capsys)
    assert code == 0
    by_value = {}
    for r in rows:
        by_value.setdefault(float(r["value"]), set()).add(float(r["I_star"]))
    assert sorted(by_value) == [310, 315, 320, 325]
    stars = [by_value[v].pop() for v in sorted(by_value)]
    assert stars == sorted(stars)
    assert len(rows) == 16


def test_reproduce_fig2_matches_sweep(capsys):
    code, _, _, rows = run(["reproduce", "fig2"], capsys)
    assert code == 0
    assert len(rows) == 400
    assert float(rows[199]["I"]) == pytest.approx(2.0)
    assert float(rows[199]["Q_C"]) == pytest.approx(10.80632646971053416890480, rel=1e-12)


def test_simulate(write_config, capsys):
    cfg = dict(FIG2, simulation={
        "plant": {"C_c": 5, "C_h": 100, "U_c_amb": 0.45, "U_h_amb": 3,
                  "Q_int": 0, "T_amb": 303, "L_C": 1, "L_H": 2},
        "controller": {"update_period": 0.5},
        "initial": {"T_C": 303, "T_H": 323},
        "duration": 5, "dt": 0.5})
    code, _, _, rows = run(["simulate", "--config", write_config(cfg)], capsys)
    assert code == 0
    assert len(rows) == 11
    assert float(rows[-1]["t"]) == 5.0
    cfg["simulation"]["dt"] = 2.0
    cfg["simulation"]["controller"]["update_period"] = 2.0
    code, _, err, _ = run(["simulate", "--config", write_config(cfg)], capsys)
    assert code == 3 and "UnstableStep" in err
