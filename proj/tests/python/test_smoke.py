import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import mdlgbg

DATA = Path(os.environ.get("MDLGBG_TEST_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))


def blobs(seed=0, n=50):
    rng = np.random.default_rng(seed)
    a = rng.normal([0.0, 0.0], 0.5, size=(n, 2))
    b = rng.normal([10.0, 0.0], 0.5, size=(n, 2))
    return np.vstack([a, b]), np.repeat([0, 1], n)


def test_small_formulas():
    assert mdlgbg.adaptive_n_min(150, 4) == 6
    assert mdlgbg.initial_ball_count(50) == 7
    assert mdlgbg.partition_cost(2, 2) == pytest.approx(4 * math.log(2))
    assert mdlgbg.l1_length(np.array([0.0, 1.0])) == pytest.approx(1 + math.log(math.pi / 2) + math.log(2))
    assert mdlgbg.log_shell_volume(1, 2.0, 1.0) == pytest.approx(math.log(2))


def test_select_model_examples():
    split = mdlgbg.select_model(np.array([0, 0.1, 0.2, 0.9, 1.0, 1.1]), 2)
    assert split["choice"] == "M2"
    assert split["left"] == [0, 1, 2]
    peel = mdlgbg.select_model(np.array([0, 0.05, 0.1, 0.15, 0.2, 1.0]), 3)
    assert peel["choice"] == "M3"
    assert peel["residual"] == [5]


def test_normalize():
    x, lo, hi = mdlgbg.normalize(np.array([[0.0, 7.0], [5.0, 7.0], [10.0, 7.0]]))
    assert x[:, 0].tolist() == [0.0, 0.5, 1.0]
    assert x[:, 1].tolist() == [0.0, 0.0, 0.0]
    assert lo == [0.0, 7.0] and hi == [10.0, 7.0]


def test_generate_blobs():
    x, y = blobs()
    g = mdlgbg.generate(x, normalize=False)
    assert len(g["members"]) >= 2
    assert g["centers"].shape == (len(g["members"]), 2)
    assert len(g["ownership"]) == len(x)
    for members in g["members"]:
        assert len(set(y[members])) == 1


def test_cluster_and_metrics():
    x, y = blobs(1)
    labels = mdlgbg.cluster(x, 2)
    assert mdlgbg.ari(list(y), labels) == 1.0
    assert mdlgbg.acc(list(y), labels) == 1.0
    assert mdlgbg.nmi(list(y), labels) == 1.0
    km = mdlgbg.cluster(x, 2, backend="kmeanspp", seed=3)
    assert mdlgbg.ari(list(y), km) == 1.0


def test_run_report():
    report = mdlgbg.run(str(DATA / "iris.csv"), timings=False)
    assert list(report) == ["config", "dataset", "generation", "runs", "summary"]
    assert report["dataset"] == {"n": 150, "d": 4, "classes": 3}
    assert report["generation"]["seconds"] is None
    assert json.loads(mdlgbg.run_json(str(DATA / "iris.csv"), timings=False)) == report


def test_errors():
    with pytest.raises(ValueError):
        mdlgbg.cluster(np.zeros((4, 2)), 2, backend="spectral")
    with pytest.raises(mdlgbg.ParseError):
        mdlgbg.run("/nonexistent.csv")
    with pytest.raises(mdlgbg.DataError):
        mdlgbg.generate(np.array([[0.0], [np.nan]]))
