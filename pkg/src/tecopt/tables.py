"""CSV dialect used for every tecopt output and for measured readings.

Comma separated, ``.`` decimal, one header row, ``NA`` for undefined
values, ``\\n`` line endings. Floats are written with ``repr`` so a value
read back is bit-identical to the one written.
"""
from __future__ import annotations

import csv
import io
import math

import numpy as np

from .controller import Reading, SimTrace
from .errors import ValidationError
from .optimizer import CurrentSweepRow, EnvironmentSweepRow, OptimizationResult

NA = "NA"
ENV_COLUMNS = ["T_C", "T_H", "L_C", "L_H"]
POINT_COLUMNS = ["I", "Q_C", "Q_H", "T_Cj", "T_Hj", "W", "V", "COP"]
REPORT_COLUMNS = ["s_gen", "COP_rev", "Q_C_max", "Q_C_loss", "eta_II", "gamma"]
POINT_TABLE = ENV_COLUMNS + POINT_COLUMNS + REPORT_COLUMNS + ["error"]
OPTIMUM_COLUMNS = (["I_star", "gamma_star", "I_lo", "I_hi", "evaluations", "converged", "unimodal"]
                   + POINT_COLUMNS[1:] + REPORT_COLUMNS[:-1])
OPTIMIZE_TABLE = ENV_COLUMNS + OPTIMUM_COLUMNS
ENV_SWEEP_TABLE = ["parameter", "value"] + OPTIMIZE_TABLE + ["error"]
READING_COLUMNS = ["t", "T_C", "T_H", "L_C", "L_H"]
TRACE_TABLE = READING_COLUMNS + ["tick"] + POINT_COLUMNS + REPORT_COLUMNS


def format_value(value) -> str:
    if value is None:
        return NA
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return NA if math.isnan(value) else repr(value)
    return str(value)


def write_table(stream, columns, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])


def table_to_string(columns, rows) -> str:
    buf = io.StringIO()
    write_table(buf, columns, rows)
    return buf.getvalue()


def _fields(obj, names):
    if obj is None:
        return {}
    return {n: getattr(obj, n) for n in names}


def point_row(point, report, env=None, error=None, I=None) -> dict:
    env = point.env if point is not None else env
    row = _fields(env, ENV_COLUMNS)
    row.update(_fields(point, POINT_COLUMNS))
    row.update(_fields(report, REPORT_COLUMNS))
    if point is None and I is not None:
        row["I"] = I
    row["error"] = error
    return row


def current_sweep_rows(rows: list[CurrentSweepRow], env) -> list[dict]:
    return [point_row(r.point, r.report, env=env, error=r.error, I=r.I) for r in rows]


def optimum_row(result: OptimizationResult) -> dict:
    op = result.operating_point
    row = _fields(op.env, ENV_COLUMNS)
    row.update(_fields(op, POINT_COLUMNS[1:]))
    row.update(_fields(result.report, REPORT_COLUMNS[:-1]))
    row.update(I_star=result.I_star, gamma_star=result.gamma_star,
               I_lo=result.feasible_interval[0], I_hi=result.feasible_interval[1],
               evaluations=result.evaluations, converged=result.converged,
               unimodal=result.unimodal)
    return row


def environment_sweep_rows(rows: list[EnvironmentSweepRow], base_env) -> list[dict]:
    out = []
    for r in rows:
        if r.result is not None:
            row = optimum_row(r.result)
        else:
            row = _fields(base_env.with_(**{r.parameter: r.value}), ENV_COLUMNS)
        row.update(parameter=r.parameter, value=r.value, error=r.error)
        out.append(row)
    return out


def trace_rows(trace: SimTrace) -> list[dict]:
    out = []
    for rec in trace:
        row = _fields(rec.reading, READING_COLUMNS)
        row.update(_fields(rec.point, POINT_COLUMNS))
        row.update(_fields(rec.report, REPORT_COLUMNS))
        row["I"] = rec.I_applied
        row["tick"] = rec.tick
        out.append(row)
    return out


def read_readings(stream) -> list[Reading]:
    """Parse ``(t, T_C, T_H, L_C, L_H)`` rows; other columns are ignored."""
    reader = csv.DictReader(stream)
    missing = [c for c in READING_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise ValidationError("header", f"missing column(s) {', '.join(missing)}")
    readings = []
    for row_no, raw in enumerate(reader, start=1):
        try:
            values = [float(raw[c]) for c in READING_COLUMNS]
        except (TypeError, ValueError):
            raise ValidationError(f"row {row_no}", f"non-numeric reading {raw!r}") from None
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(f"row {row_no}", "readings must be finite")
        readings.append(Reading(*values))
    return readings
