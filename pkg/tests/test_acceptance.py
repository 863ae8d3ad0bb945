"""Acceptance gate: criteria 1-11, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (summary at the end) or
``python tests/test_acceptance.py``.  Every seed is fixed below.
"""

import math
import time

import numpy as np
import pytest

import oracles
from acceptance_log import record
from distmcor import (
    ComponentPartition,
    DegenerateStatisticError,
    cmcor,
    decreasing_transform_identity_check,
    distance_matrix,
    dominance_experiment,
    mcor,
    mcor_alpha_limit_check,
    mcor_unnormalized,
    pearson_cor,
    permutation_test,
    total_multivariance_normalized,
    transform_dataset,
)
from distmcor.centering import EstimatorKind, double_center, u_center
from distmcor.experiments import example_4_2, example_4_3, example_5_4
from distmcor.measures import MeasureVariant, prepare
from distmcor.scenarios import Scenario, ScenarioConfig, scenario_generate

SEED = 0
META_SEEDS = range(101, 111)
KINDS = list(EstimatorKind)
VARIANTS = list(MeasureVariant)


def _instance(seed, max_samples=12):
    rng = np.random.default_rng([SEED, seed])
    n = int(rng.integers(2, 4))
    dims = [int(rng.integers(1, 3)) for _ in range(n)]
    x = rng.standard_normal((int(rng.integers(4, max_samples + 1)), sum(dims)))
    if rng.random() < 0.5:
        x[:, -1] += x[:, 0] ** 2
    return x, dims, float(rng.uniform(0.3, 1.9))


def _value(x, dims, variant, kind, alpha):
    return mcor(x, ComponentPartition.from_dims(dims, alpha), variant, kind)


def test_criterion_01_oracle_equivalence():
    t0 = time.perf_counter()
    worst, mismatches, compared = 0.0, 0, 0
    for i in range(50):
        x, dims, alpha = _instance(i)
        for variant in VARIANTS:
            for kind in KINDS:
                try:
                    ref = oracles.measure(x, dims, variant.value, kind is EstimatorKind.BIASED, alpha)
                except oracles.Degenerate:
                    try:
                        _value(x, dims, variant, kind, alpha)
                        mismatches += 1
                    except DegenerateStatisticError:
                        pass
                    continue
                got = _value(x, dims, variant, kind, alpha).squared_value
                worst = max(worst, abs(got - ref))
                compared += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and mismatches == 0 and elapsed < 10
    record(1, ok, f"{compared} comparisons, max |diff| {worst:.2e}, "
                  f"degenerate mismatches {mismatches}, {elapsed:.1f} s")
    assert ok


def test_criterion_02_example_4_2():
    t0 = time.perf_counter()
    rep = example_4_2(rho=0.8, cases=20, n_samples=1000, estimator="bias_corrected", seed=SEED)
    m = {r["pair"]: r["mean"] for r in rep.rows}
    elapsed = time.perf_counter() - t0
    ok = (abs(m["norm/norm"] - 0.75) <= 0.03 and abs(m["bern/bern"] - 0.58) <= 0.03
          and m["exp/chi"] > m["norm/chi"] > m["unif/chi"] and elapsed < 120)
    record(2, ok, f"norm/norm {m['norm/norm']:.3f}, bern/bern {m['bern/bern']:.3f}, "
                  f"exp/chi {m['exp/chi']:.3f} > norm/chi {m['norm/chi']:.3f} > "
                  f"unif/chi {m['unif/chi']:.3f}, {elapsed:.0f} s")
    assert ok


def test_criterion_03_example_5_4():
    t0 = time.perf_counter()
    rep = example_5_4(rho=0.8, cases=20, n_samples=1000, estimator="bias_corrected", seed=SEED)
    m = {r["pair"]: r["mean"] for r in rep.rows}
    elapsed = time.perf_counter() - t0
    cont = [m["exp/chi"], m["norm/chi"], m["unif/chi"]]
    disc = [m["exp/bern"], m["chi/bern"]]
    ok = (all(abs(v - 0.74) <= 0.02 for v in cont) and max(cont) - min(cont) <= 0.01
          and all(abs(v - 0.57) <= 0.02 for v in disc) and elapsed < 120)
    record(3, ok, "continuous " + "/".join(f"{v:.3f}" for v in cont)
           + ", bernoulli " + "/".join(f"{v:.3f}" for v in disc) + f", {elapsed:.0f} s")
    assert ok


def test_criterion_04_example_4_3():
    t0 = time.perf_counter()
    rep = example_4_3(cases=40, n_samples=1000, estimator="bias_corrected", seed=SEED)
    means = [r["mean"] for r in rep.rows]
    elapsed = time.perf_counter() - t0
    ok = (all(abs(v - ref) <= 0.03 for v, ref in zip(means, (0.56, 0.52, 0.46)))
          and means[0] > means[1] > means[2] and elapsed < 120)
    record(4, ok, "means " + " / ".join(f"{v:.3f}" for v in means) + f", {elapsed:.0f} s")
    assert ok


def test_criterion_05_dominance():
    t0 = time.perf_counter()
    pairs = [("norm", "norm"), ("unif", "unif")]
    rep = dominance_experiment(pairs, 0.0, 1000, 100, "biased", False, SEED)
    count = int(rep.counts[0, 1])
    nonsig = 0
    for s in META_SEEDS:
        cop = dominance_experiment(pairs, 0.0, 1000, 100, "biased", True, s)
        nonsig += cop.adjusted_p[0, 1] > 0.05
    elapsed = time.perf_counter() - t0
    ok = abs(count - 976) <= 25 and nonsig >= 9 and elapsed < 300
    record(5, ok, f"normal-pair count {count}/1000, copula runs with Holm p > 0.05: "
                  f"{nonsig}/10, {elapsed:.0f} s")
    assert ok


def test_criterion_06_alpha_limit():
    rng = np.random.default_rng([SEED, 6])
    x = rng.standard_normal(1000)
    y = 3 * x + 0.1 * rng.standard_normal(1000)
    m, c = mcor_alpha_limit_check(x, y, alpha=1.99)
    ok = abs(m - c) < 0.02
    record(6, ok, f"Mcor_1.99 {m:.5f}, |cor| {c:.5f}, diff {abs(m - c):.2e}")
    assert ok


def test_criterion_07_unit_expectation():
    stats = [total_multivariance_normalized(np.random.default_rng([SEED, 7, r]).standard_normal((100, 3)),
                                            estimator="biased").statistic
             for r in range(500)]
    mean = float(np.mean(stats))
    ok = 0.9 <= mean <= 1.1
    record(7, ok, f"mean N*M^2 over 500 null samples {mean:.4f}")
    assert ok


def test_criterion_08_higher_order_dependence():
    total_hits = pairwise_hits = 0
    unnormalized = []
    for s in META_SEEDS:
        ds = scenario_generate(ScenarioConfig(Scenario.PERTURBED_BERNOULLI, n_samples=1000, seed=s))
        total_hits += permutation_test(ds, None, "total", n_permutations=199, seed=s).p_value < 0.01
        pairwise_hits += permutation_test(ds, None, "pairwise", n_permutations=199, seed=s).p_value > 0.05
        try:
            unnormalized.append(mcor_unnormalized(ds, estimator="biased").value)
        except DegenerateStatisticError:
            # a column with exactly N/2 ones has no odd-order constant
            pass
    ok = total_hits >= 8 and pairwise_hits >= 8 and unnormalized and min(unnormalized) > 1
    record(8, ok, f"total p < 0.01 in {total_hits}/10, pairwise p > 0.05 in {pairwise_hits}/10, "
                  f"unnormalized min {min(unnormalized, default=float('nan')):.2f} over "
                  f"{len(unnormalized)} non-degenerate samples")
    assert ok


def test_criterion_09_invariances():
    worst = 0.0
    rng = np.random.default_rng([SEED, 9])
    for i in range(20):
        x, dims, alpha = _instance(1000 + i, max_samples=30)
        n = len(dims)
        starts = np.cumsum([0] + dims)
        order = rng.permutation(n)
        cols = np.concatenate([np.arange(starts[k], starts[k + 1]) for k in order])
        lam = np.repeat(rng.uniform(0.1, 10, n), dims)
        shift = rng.uniform(-5, 5, x.shape[1])
        for variant in VARIANTS:
            for kind in KINDS:
                try:
                    ref = _value(x, dims, variant, kind, alpha).value
                except DegenerateStatisticError:
                    continue
                worst = max(
                    worst,
                    abs(_value(x[:, cols], [dims[k] for k in order], variant, kind, alpha).value - ref),
                    abs(_value(x + shift, dims, variant, kind, alpha).value - ref),
                    abs(_value(x * lam, dims, variant, kind, alpha).value - ref),
                )
    maps = [np.exp, lambda t: t**3 + t, np.arctan, lambda t: 2.5 * t - 1.0]
    bit_exact = True
    for i in range(10):
        x = rng.standard_normal((60, 3))
        x[:, 2] += x[:, 0]
        x = np.round(x, 2)
        g = maps[i % len(maps)]
        for variant in VARIANTS:
            try:
                a = cmcor(x, None, "bias_corrected", variant, i)
            except DegenerateStatisticError:
                continue
            b = cmcor(g(x), None, "bias_corrected", variant, i)
            bit_exact &= a.value == b.value and a.squared_value == b.squared_value
    identity = True
    for i in range(20):
        tied = rng.integers(0, 4, 50).astype(float)
        untied = rng.standard_normal(50)
        u = rng.random(50)
        identity &= decreasing_transform_identity_check(tied, u, lambda t: 1 - t, atol=1e-12)
        identity &= decreasing_transform_identity_check(untied, u, lambda t: -t**3, atol=1e-12)
    ok = worst <= 1e-9 and bit_exact and identity
    record(9, ok, f"max invariance deviation {worst:.2e}, copula bit-exact {bit_exact}, "
                  f"decreasing-map identity {identity}")
    assert ok


def test_criterion_10_centering_identities():
    worst = 0.0
    rng = np.random.default_rng([SEED, 10])
    for i in range(100):
        n = int(rng.integers(4, 60))
        d = distance_matrix(rng.standard_normal((n, int(rng.integers(1, 4)))))
        a = double_center(d).entries
        u = u_center(d).entries
        worst = max(worst, np.abs(a.sum(0)).max(), np.abs(a.sum(1)).max(), np.abs(u.sum(1)).max())
    rejects = True
    for n in (1, 2, 3):
        try:
            u_center(np.zeros((n, n)))
            rejects = False
        except ValueError as exc:
            rejects &= "more than 3 samples" in str(exc)
    ok = worst <= 1e-9 and rejects
    record(10, ok, f"max |margin sum| {worst:.2e}, rejects N <= 3: {rejects}")
    assert ok


def test_criterion_11_unbiasedness():
    num = {k: [] for k in KINDS}
    for r in range(2000):
        x = np.random.default_rng([SEED, 11, r]).standard_normal((10, 2))
        for k in KINDS:
            p = prepare(x, None, k)
            num[k].append(p.pref * float(np.vdot(p.neg[0], p.neg[1])))
    bc = np.array(num[EstimatorKind.BIAS_CORRECTED])
    bi = np.array(num[EstimatorKind.BIASED])
    se = bc.std(ddof=1) / math.sqrt(bc.size)
    ok = abs(bc.mean()) <= 4 * se and bc.var(ddof=1) > bi.var(ddof=1)
    record(11, ok, f"mean {bc.mean():.2e} (4 se = {4 * se:.2e}), "
                   f"var bias-corrected {bc.var(ddof=1):.3e} > biased {bi.var(ddof=1):.3e}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
