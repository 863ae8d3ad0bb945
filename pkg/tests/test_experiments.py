import json
import math

import numpy as np
import pytest

from distmcor.experiments import EXPERIMENTS, run_example_tables


def test_example_4_2_structure(tmp_path):
    rep = run_example_tables("4.2", seed=1, out_dir=tmp_path, cases=2, n_samples=60)
    assert rep.name == "example-4.2"
    assert [r["pair"] for r in rep.rows][:3] == ["exp/chi", "norm/chi", "unif/chi"]
    assert rep.rows[5]["reference"] == 0.75
    data = json.loads((tmp_path / "example-4.2.json").read_text())
    assert data["config"]["cases"] == 2 and data["config"]["estimator"] == "bias_corrected"
    header = (tmp_path / "example-4.2.csv").read_text().splitlines()[0]
    assert header == "pair,mean,sd,cases,reference"


def test_example_5_4_uses_copula():
    rep = run_example_tables("example-5.4", seed=1, cases=2, n_samples=60)
    assert rep.config["copula"] is True
    assert len(rep.rows) == 5


def test_example_4_3_common_draws():
    rep = run_example_tables("4.3", seed=2, cases=3, n_samples=80)
    assert [r["s"] for r in rep.rows] == [0.0, 0.5, 1.0]
    assert all(math.isfinite(r["mean"]) for r in rep.rows)


def test_multivariate_curves_rows():
    rep = run_example_tables("multivariate-curves", seed=0, n_samples=30, s_grid=(0.0, 1.0))
    assert len(rep.rows) == 3 * 2 * 5
    scen = {r["scenario"] for r in rep.rows}
    assert scen == {"multivariate_normal", "interpolation", "perturbed_bernoulli"}
    for r in rep.rows:
        assert (r["note"] == "degenerate") == (not math.isfinite(r["value"]))


def test_multivariate_curves_identical_columns_at_one():
    rep = run_example_tables("multivariate-curves", seed=0, n_samples=40, s_grid=(1.0,),
                             variants=("pairwise",))
    row = [r for r in rep.rows if r["scenario"] == "interpolation"][0]
    assert row["value"] == pytest.approx(1.0, abs=1e-12)


def test_bias_comparison_rows():
    rep = run_example_tables("bias-comparison", seed=0, sample_sizes=(10, 40), cases=5, n_components=3)
    assert {r["setting"] for r in rep.rows} == {"independent", "gauss_copula_0.5", "bernoulli_triple"}
    assert len(rep.rows) == 3 * 2 * 2
    with pytest.raises(ValueError):
        run_example_tables("bias-comparison", n_components=4)


def test_bias_corrected_has_smaller_bias_under_independence():
    rep = run_example_tables("bias-comparison", seed=0, sample_sizes=(20,), cases=100)
    rows = {r["estimator"]: r for r in rep.rows if r["setting"] == "independent"}
    assert abs(rows["bias_corrected"]["mean"]) < rows["biased"]["mean"]


def test_dominance_report():
    rep = run_example_tables("dominance", seed=0, cases=10, n_samples=30)
    assert len(rep.rows) == 4 * 3
    assert rep.config["estimator"] == "biased"


def test_byte_stable(tmp_path):
    for d in ("a", "b"):
        run_example_tables("4.3", seed=5, out_dir=tmp_path / d, cases=2, n_samples=50)
    for f in ("example-4.3.csv", "example-4.3.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_unknown_example():
    with pytest.raises(ValueError, match="unknown experiment"):
        run_example_tables("9.9")


def test_registry():
    assert set(EXPERIMENTS) == {"example-4.2", "example-4.3", "example-5.4", "multivariate-curves",
                                "bias-comparison", "dominance"}
