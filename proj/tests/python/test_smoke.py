import math

import numpy as np
import pytest

import chaotic_ga as cga


def test_names():
    assert len(cga.map_names()) == 9
    assert "logistic" in cga.map_names()
    assert len(cga.function_names()) == 9


def test_series_shape_and_determinism():
    a = cga.generate_series("henon", 50, seed=1)
    b = cga.generate_series("henon", 50, seed=1)
    assert a.shape == (50, 2)
    assert np.array_equal(a, b)
    s = cga.generate_series("logistic", 1, initial_state=[0.3], burn_in=1)
    assert s[0, 0] == pytest.approx(0.84)


def test_degenerate_orbit_is_reported():
    with pytest.raises(cga.CgaError) as info:
        cga.generate_series("logistic", 10, initial_state=[0.5], burn_in=0)
    assert info.value.kind == "DegenerateOrbit"


def test_lyapunov():
    assert abs(cga.lyapunov("logistic") - math.log(2)) < 0.02
    assert cga.lyapunov("henon") > 0.3
    with pytest.raises(cga.CgaError):
        cga.lyapunov("random")


def test_benchmarks():
    fns = cga.benchmarks()
    assert len(fns) == 9
    for fn in fns:
        x, y = fn["optima"][0]
        assert abs(cga.evaluate(fn["name"], x, y)) < 1e-12
    assert cga.evaluate("beale", 0, 0) == 14.203125


def test_entropy():
    pts = np.array([[-2.5, -2.5], [-2.5, 2.5], [2.5, -2.5], [2.5, 2.5]])
    assert cga.population_entropy(pts, (-5, 5, -5, 5), bins=2) == pytest.approx(2.0)
    assert cga.population_entropy(np.zeros((10, 2)), (-5, 5, -5, 5)) == 0.0


def test_performance_and_spearman():
    assert cga.compute_performance([True] * 47 + [False] * 3) == 94.0
    assert cga.spearman([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0)


def test_single_trial():
    r = cga.run_trial("beale", "logistic", seed=3)
    assert 0 <= r["initial_entropy"] <= 8
    assert r["best_value"] >= 0
    assert r["success"] == (abs(r["best_value"]) < 1e-3)
    assert r == cga.run_trial("beale", "logistic", seed=3)


def test_small_experiment(tmp_path):
    cfg = {"functions": ["matyas", "leon"], "maps": ["logistic", "random"], "trials_per_pair": 2,
           "ga": {"generations": 10}}
    report = cga.run_experiment(cfg, output_dir=tmp_path)
    assert len(report["pairs"]) == 4
    assert len(report["trials"]) == 8
    assert report["config"]["trials_per_pair"] == 2
    for name in ("performance_table.csv", "density.csv", "contour.csv", "report.json"):
        assert (tmp_path / name).exists()
    again = cga.run_experiment(report["config"])
    assert again["pairs"] == report["pairs"]


def test_config_errors():
    with pytest.raises(cga.CgaError):
        cga.resolve_config({"unknown_key": 1})
    assert cga.resolve_config()["ga"]["population_size"] == 100
