import numpy as np
import pytest

from lmg_entanglement import sweep
from lmg_entanglement.entanglement import Method
from lmg_entanglement.errors import ConfigError, GridError
from lmg_entanglement.model import Coupling, ModelParams


def test_h_grid_hits_grid_points_exactly():
    grid = sweep.h_grid(0.0, 2.0, 0.01)
    assert len(grid) == 201
    assert grid[100] == 1.0 and grid[-1] == 2.0
    assert sweep.h_grid(-0.5, 0.5, 0.25) == [-0.5, -0.25, 0.0, 0.25, 0.5]


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(methods=[]),
        dict(methods=["bogus"]),
        dict(methods=["iso"], gamma=0.5),
        dict(n_particles=[1]),
        dict(h_values=[]),
        dict(coupling="ferro", h_values=[-0.1]),
        dict(coupling="sideways"),
    ],
)
def test_bad_sweep_specs(kwargs):
    base = dict(coupling="ferro", gamma=1.0, n_particles=[10], h_values=[0.5], methods=["dicke"])
    base.update(kwargs)
    with pytest.raises(ConfigError):
        sweep.SweepSpec(**base)


def test_bad_grid():
    with pytest.raises(ConfigError):
        sweep.h_grid(0, 1, 0)
    with pytest.raises(ConfigError):
        sweep.h_grid(1, 0, 0.1)


def test_records_sorted_and_hp_domain_flagged():
    spec = sweep.SweepSpec.from_range("ferro", 0.5, [20, 10], 0.9, 1.1, 0.1, ["hp", "dicke"])
    records = sweep.run_sweep(spec)
    keys = [(r.n_particles, r.h, r.method) for r in records]
    assert keys[:2] == [(10, 0.9, "dicke"), (10, 0.9, "hp")]
    assert len(records) == 12
    critical = [r for r in records if r.h == 1.0 and r.method == "hp"]
    assert all("hp_domain" in r.flags and r.e_g is None and r.q_global is None for r in critical)
    assert all(r.e_g is not None for r in records if r.method == "dicke")


def test_parallel_matches_serial():
    spec = sweep.SweepSpec.from_range("antiferro", 0.3, [12], -0.4, 0.4, 0.2, ["dicke", "hp"])
    serial = sweep.records_to_csv(sweep.run_sweep(spec, jobs=1))
    parallel = sweep.records_to_csv(sweep.run_sweep(spec, jobs=2))
    assert serial == parallel


def test_isotropic_antiferro_unentangled_away_from_zero():
    spec = sweep.SweepSpec.from_range("antiferro", 1.0, [40], -1.0, 1.0, 0.1, ["iso"])
    for rec in sweep.run_sweep(spec):
        if rec.h == 0.0:
            assert "ghz" in rec.flags
            assert rec.e_g == pytest.approx(2 / 3, abs=1e-12)
        else:
            assert rec.q_global == 0 and rec.e_g == pytest.approx(0, abs=1e-15)


def test_isotropic_record_energy_matches_dicke():
    params = ModelParams(Coupling.FERRO, 1.0, 0.35, 30)
    iso = sweep.evaluate(params, Method.ISOTROPIC_EXACT)
    ed = sweep.evaluate(params, Method.DICKE)
    assert iso.ground_energy == pytest.approx(ed.ground_energy, abs=1e-12)
    assert iso.e_g == pytest.approx(ed.e_g, abs=1e-12)
    assert iso.gap == pytest.approx(ed.gap, abs=1e-12)


def test_csv_format():
    spec = sweep.SweepSpec.from_range("ferro", 0.5, [10], 1.0, 1.0, 0.1, ["dicke", "hp"])
    text = sweep.records_to_csv(sweep.run_sweep(spec))
    lines = text.split("\n")
    assert lines[0] == ",".join(sweep.CSV_HEADER)
    assert "\r" not in text and text.endswith("\n")
    hp_row = lines[2].split(",")
    assert hp_row[4] == "hp" and hp_row[-1] == "hp_domain"
    assert all(v == "" for v in hp_row[5:13])
    ed_row = lines[1].split(",")
    assert len(ed_row[10].replace("0.", "").lstrip("0")) <= 15


def test_csv_roundtrip(tmp_path):
    spec = sweep.SweepSpec.from_range("ferro", 0.5, [10], 0.0, 0.2, 0.1, ["dicke"])
    records = sweep.run_sweep(spec)
    path = tmp_path / "out.csv"
    sweep.write_csv(records, path)
    rows = sweep.read_csv(path)
    assert [float(r["h"]) for r in rows] == [0.0, 0.1, 0.2]
    assert float(rows[1]["e_g"]) == pytest.approx(records[1].e_g, rel=1e-14)


def test_scaling_study():
    recs = sweep.scaling_study("ferro", 0.5, 1.0, [10, 20, 30])
    assert [r.n_particles for r in recs] == [10, 20, 30]
    with pytest.raises(ConfigError):
        sweep.scaling_study("ferro", 0.5, 1.0, [20, 10])
    with pytest.raises(ConfigError):
        sweep.scaling_study("ferro", 0.5, 1.0, [])


def test_derivative_examples():
    h = np.linspace(0, 1, 11)
    assert np.allclose(sweep.finite_difference_derivative(h, np.ones(11)).slope, 0)
    assert np.allclose(sweep.finite_difference_derivative(h, 2 * h).slope, 2)
    cusp = sweep.finite_difference_derivative(h, np.abs(h - 0.5), h_star=0.5)
    assert cusp.left_slope == pytest.approx(-1) and cusp.right_slope == pytest.approx(1)


def test_derivative_errors():
    with pytest.raises(GridError):
        sweep.finite_difference_derivative([0, 0.1, 0.3], [0, 0, 0])
    with pytest.raises(GridError):
        sweep.finite_difference_derivative([0, 0.1], [0, 0])
    with pytest.raises(GridError):
        sweep.finite_difference_derivative([0, 0.1, 0.2], [0, 0, 0], h_star=0.15)


def test_recipes_are_valid_specs():
    for name, recipe in sweep.RECIPES.items():
        if recipe["kind"] == "sweep":
            spec = sweep.SweepSpec.from_range(recipe["coupling"], recipe["gamma"], recipe["n"],
                                              *recipe["h"], recipe["methods"])
            assert spec.h_values
    with pytest.raises(ConfigError):
        sweep.run_recipe("fig9")
