import json

import numpy as np
import pytest

from uavrelay.config import Config
from uavrelay.exceptions import ConfigError, InvalidParameterError
from uavrelay.experiments import ExperimentSpec, ResultTable, reproduce_figure, run_sweep

SEEDS = (0, 1, 2)


def test_spec_validation():
    with pytest.raises(InvalidParameterError):
        ExperimentSpec("x", "mission.p_t_users", ())
    with pytest.raises(ConfigError):
        ExperimentSpec("x", "mission.nothing", (1.0,))
    with pytest.raises(InvalidParameterError):
        ExperimentSpec("x", "mission.p_t_users", (1.0,), columns=("speed",))


def test_table_is_rectangular():
    with pytest.raises(InvalidParameterError):
        ResultTable(("a", "b"), ((1.0,),))


def test_csv_format_and_sidecar(tmp_path):
    t = ResultTable(("a", "b"), ((1, 0.1), (2, True)), {"seeds": [0]})
    assert t.to_csv() == "a,b\n1,0.1\n2,1\n"
    out = t.write(tmp_path / "t.csv")
    assert json.loads((tmp_path / "t.csv.json").read_text()) == {"seeds": [0]}
    assert out.read_text() == t.to_csv()


def test_sweep_reproducible_and_annotated():
    spec = ExperimentSpec("p", "mission.p_t_users", (1.0, 5.0), SEEDS, ("A", "B"), ("t_total",))
    a, b = run_sweep(spec), run_sweep(spec)
    assert a.to_csv() == b.to_csv()
    assert a.headers == ("mission.p_t_users", "t_total_A", "t_total_B")
    assert a.metadata["config_hash"] == Config().config_hash()
    assert a.metadata["seeds"] == list(SEEDS)
    t = a.column("t_total_A")
    assert t[0] > t[1]


def test_invalid_figure():
    with pytest.raises(InvalidParameterError):
        reproduce_figure(9)


def test_figure2_theory_tracks_simulation():
    t = reproduce_figure(2, seeds=range(10))
    for s in "AB":
        theory, sim = t.column(f"t_total_theory_{s}"), t.column(f"t_total_sim_{s}")
        assert np.all(np.diff(theory) < 0)
        assert np.allclose(theory, sim, rtol=0.15)


def test_figure3_small():
    t = reproduce_figure(3, seeds=SEEDS)
    rates = np.array([row[1:] for row in t.rows])
    assert np.all(np.diff(rates, axis=0) > 0)
    assert np.all(np.diff(rates, axis=1) > 0)


def test_figure_written(tmp_path):
    out = tmp_path / "fig5.csv"
    t = reproduce_figure(5, out_path=out, seeds=(0,))
    assert out.read_text() == t.to_csv()
    meta = json.loads((tmp_path / "fig5.csv.json").read_text())
    assert meta["experiment"] == "figure5" and meta["seeds"] == [0]
