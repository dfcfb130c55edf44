import json
import math
import pathlib

import numpy as np
import pytest

import knnreg

ROOT = pathlib.Path(__file__).resolve().parents[2]
SAMPLE = ROOT / "data" / "synthetic.csv"


def test_distances():
    assert knnreg.euclidean([0, 0], [3, 4]) == 5.0
    assert knnreg.manhattan([1, 2], [4, 6]) == 7.0
    assert knnreg.hamming([0, 1, 2], [0, 5, 2]) == 1.0
    assert knnreg.distance(knnreg.DistanceMetric.euclidean, [1, 2, 3], [4, 6, 3]) == 5.0
    with pytest.raises(knnreg.IncompatibleMetric):
        knnreg.distance(knnreg.DistanceMetric.hamming, [0.5], [1.0])
    with pytest.raises(knnreg.InvalidArgument):
        knnreg.euclidean([1, 2], [1])


def test_metrics():
    assert knnreg.sse([1, 2, 3], [3, 2, 1]) == 8.0
    assert knnreg.rmse([0], [3]) == 3.0
    assert knnreg.r_squared([1, 2, 3], [3, 2, 1]) == -3.0
    with pytest.raises(knnreg.UndefinedRSquared):
        knnreg.r_squared([5, 5], [5, 4])
    rep = knnreg.report([2, 2, 2], [1, 2, 3])
    assert rep.r_squared is None
    assert json.loads(rep.to_json())["r_squared"] is None


def test_fit_predict_density():
    x = np.array([[0.0], [2.0]])
    model = knnreg.fit(knnreg.Dataset.from_arrays(x, np.array([0.0, 3.0])), 2,
                       weighting=knnreg.WeightingMode.inverse_distance)
    assert model.predict_one([0.5]) == pytest.approx(0.75, abs=1e-15)

    rng = np.random.default_rng(3)
    sample = knnreg.Dataset.from_arrays(rng.uniform(0, 1, size=(1000, 1)))
    dens = knnreg.fit(sample, 10)
    mean = np.mean([dens.estimate_density([q]) for q in np.linspace(0.1, 0.9, 100)])
    assert 0.8 <= mean <= 1.2

    with pytest.raises(knnreg.InvalidArgument):
        knnreg.fit(sample, 1001)
    line = knnreg.Dataset.from_arrays(np.array([[0.0], [1.0]]))
    with pytest.raises(knnreg.ZeroRadiusDensity):
        knnreg.fit(line, 1).estimate_density([1.0])


def test_sweep_and_outputs(tmp_path):
    data = knnreg.load_csv(SAMPLE, "y")
    assert data.rows == 200 and data.cols == 3
    train, test = knnreg.split(data, knnreg.SplitSpec(0.8, 42))
    assert len(train) == 160 and len(test) == 40

    config = knnreg.SweepConfig()
    config.k_max = 20
    result = knnreg.run_sweep(data, config)
    assert [row.k for row in result.rows] == list(range(1, 21))
    assert all(math.isfinite(row.metrics.rmse) for row in result.rows)
    assert knnreg.select_best(result, knnreg.Criterion.rmse) == result.best_k_rmse

    config.backend = knnreg.SearchBackend.brute_force
    brute = knnreg.run_sweep(data, config)
    assert [r.metrics.rmse for r in brute.rows] == [r.metrics.rmse for r in result.rows]

    knnreg.emit_table(result, tmp_path / "t.csv")
    knnreg.emit_chart(result, knnreg.Criterion.r2, tmp_path / "c.svg", "R2")
    assert (tmp_path / "t.csv").read_text().startswith("k,rmse,r_squared,sse,mse,ssr,sst\n")
    assert "<polyline" in (tmp_path / "c.svg").read_text()


def test_csv_round_trip(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("color,x,y\nred,1.5,1\nblue,2.25,2\nred,3,3\n")
    first = knnreg.load_csv(src, "y", {"color"})
    assert first.features[:, 0].tolist() == [0.0, 1.0, 0.0]
    knnreg.write_csv(first, tmp_path / "out.csv")
    assert knnreg.load_csv(tmp_path / "out.csv", "y", {"color"}) == first
