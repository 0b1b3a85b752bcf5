import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tecopt.errors import ValidationError
from tecopt.module import (LegMaterial, ModuleGeometry, ModuleParams, figure_of_merit,
                           from_ratings, load_params, lump_from_materials, save_params)

positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_bundled_calibration_matches_ratings(tec):
    derived = from_ratings(I_max=4.0, V_max=12.0, dT_max=66.0, T_hot=300.0)
    assert tec.A == pytest.approx(0.04, rel=1e-15)
    assert tec.R == pytest.approx(2.34, rel=1e-15)
    assert tec.K == pytest.approx(0.2836363636363636, rel=1e-15)
    for name in ("A", "R", "K", "I_max", "V_max"):
        assert getattr(tec, name) == pytest.approx(getattr(derived, name), rel=1e-15)


def test_zt_pinned(tec):
    # exact rational value 0.72320841551610778...
    assert figure_of_merit(tec, 300.0) == pytest.approx(0.7232084155161078, rel=1e-14)


def test_ratings_reproduce_their_envelope():
    m = from_ratings(I_max=6.0, V_max=15.4, dT_max=68.0, T_hot=300.0)
    T_cold = 300.0 - 68.0
    assert m.A * T_cold / m.R == pytest.approx(6.0, rel=1e-14)
    assert m.R * 6.0 + m.A * 68.0 == pytest.approx(15.4, rel=1e-14)
    assert figure_of_merit(m, T_cold) * T_cold / 2 == pytest.approx(68.0, rel=1e-14)


def test_lumping_unit_aspect():
    leg = LegMaterial(rho=1e-5, alpha=2e-4, kappa=1.5)
    m = lump_from_materials(leg, leg, ModuleGeometry(l=1e-3, S=1e-6, N=127), I_max=4.0)
    assert m.A == pytest.approx(0.0508, rel=1e-14)
    assert m.R == pytest.approx(2.54, rel=1e-14)
    assert m.K == pytest.approx(0.381, rel=1e-14)
    assert figure_of_merit(m, 300.0) == pytest.approx(0.8, abs=5e-4)


def test_zt_vanishes_with_seebeck():
    assert figure_of_merit(ModuleParams(A=1e-12, R=2, K=0.4, I_max=1), 300) < 1e-18


def test_lumping_hand_example():
    leg = LegMaterial(rho=1e-5, alpha=2e-4, kappa=1.5)
    geom = ModuleGeometry(l=1.6e-3, S=1.96e-6, N=127)
    m = lump_from_materials(leg, leg, geom, I_max=4.0)
    assert m.A == pytest.approx(0.0508, rel=1e-14)
    assert m.R == pytest.approx(2.0734693877551021, rel=1e-14)
    assert m.K == pytest.approx(0.466725, rel=1e-14)


@given(positive, positive, positive, positive, st.integers(1, 500), st.integers(2, 5))
def test_couple_count_scales_linearly(rho, alpha, kappa, l, N, c):
    leg = LegMaterial(rho=rho * 1e-6, alpha=alpha * 1e-5, kappa=kappa)
    one = lump_from_materials(leg, leg, ModuleGeometry(l * 1e-3, 1e-6, N), I_max=1.0)
    many = lump_from_materials(leg, leg, ModuleGeometry(l * 1e-3, 1e-6, N * c), I_max=1.0)
    for name in ("A", "R", "K"):
        assert getattr(many, name) == pytest.approx(c * getattr(one, name), rel=1e-12)


@given(positive, positive, st.floats(0.1, 10.0))
def test_zt_independent_of_geometry(l, S, scale):
    p = LegMaterial(1.1e-5, 2.1e-4, 1.4)
    n = LegMaterial(0.9e-5, 1.9e-4, 1.6)
    a = lump_from_materials(p, n, ModuleGeometry(l * 1e-3, S * 1e-6, 10), I_max=1.0)
    b = lump_from_materials(p, n, ModuleGeometry(l * 1e-3 * scale, S * 1e-6, 10), I_max=1.0)
    assert b.R == pytest.approx(a.R * scale, rel=1e-12)
    assert b.K == pytest.approx(a.K / scale, rel=1e-12)
    assert figure_of_merit(a, 300) == pytest.approx(figure_of_merit(b, 300), rel=1e-12)


@given(st.floats(0.01, 100.0))
def test_uniform_geometry_scaling_cancels(c):
    leg = LegMaterial(1e-5, 2e-4, 1.5)
    a = lump_from_materials(leg, leg, ModuleGeometry(1e-3, 1e-6, 31), I_max=1.0)
    b = lump_from_materials(leg, leg, ModuleGeometry(1e-3 * c, 1e-6 * c, 31), I_max=1.0)
    assert b.R == pytest.approx(a.R, rel=1e-12)
    assert b.K == pytest.approx(a.K, rel=1e-12)


def test_lumping_is_deterministic():
    leg = LegMaterial(1e-5, 2e-4, 1.5)
    geom = ModuleGeometry(1e-3, 1e-6, 71)
    assert lump_from_materials(leg, leg, geom, 3.0) == lump_from_materials(leg, leg, geom, 3.0)


@pytest.mark.parametrize("field,kwargs", [
    ("A", dict(A=0.0, R=1, K=1, I_max=1)),
    ("R", dict(A=1, R=-2, K=1, I_max=1)),
    ("K", dict(A=1, R=1, K=float("nan"), I_max=1)),
    ("I_max", dict(A=1, R=1, K=1, I_max=float("inf"))),
    ("V_max", dict(A=1, R=1, K=1, I_max=1, V_max=0)),
])
def test_module_params_reject_nonpositive(field, kwargs):
    with pytest.raises(ValidationError) as exc:
        ModuleParams(**kwargs)
    assert exc.value.field == field


@pytest.mark.parametrize("N", [0, -3, 2.5, True])
def test_geometry_needs_integer_couples(N):
    with pytest.raises(ValidationError):
        ModuleGeometry(1e-3, 1e-6, N)


def test_ratings_reject_dt_beyond_hot_side():
    with pytest.raises(ValidationError):
        from_ratings(4, 12, 300, 300)


def test_save_load_round_trip(tmp_path, tec):
    path = tmp_path / "m.json"
    save_params(tec, path)
    assert load_params(path) == tec


def test_load_rejects_unknown_and_missing(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"A": 1, "R": 1, "K": 1, "I_max": 1, "Z": 2}))
    with pytest.raises(ValidationError):
        load_params(bad)
    bad.write_text(json.dumps({"A": 1, "R": 1}))
    with pytest.raises(ValidationError):
        load_params(bad)
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        load_params(bad)
    with pytest.raises(ValidationError):
        load_params(tmp_path / "missing.json")
