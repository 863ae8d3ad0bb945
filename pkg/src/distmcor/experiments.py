"""Experiment drivers producing plot-ready tables.

Each driver returns an :class:`ExperimentReport`; ``report.write(out_dir)``
emits ``<name>.csv`` (the table) and ``<name>.json`` (config echo plus
rows).  All randomness is derived from the master ``seed``: case ``c``
uses the stream ``(seed, REPLICATE, c)`` for data and
``(seed, TRANSFORM, c, i)`` for the transform draws of configuration ``i``.
Both files are byte-stable for a fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _rng
from .centering import EstimatorKind
from .copula import cmcor
from .inference import dominance_experiment
from .io import write_json, write_table
from .measures import DegenerateStatisticError, MeasureVariant, mcor
from .samplers import MarginalSpec, marginal_quantile, sample_gaussian_copula
from .scenarios import Scenario, ScenarioConfig, scenario_generate

MARGINAL_PAIRS = [
    ("exp", "chi"), ("norm", "chi"), ("unif", "chi"), ("exp", "bern"), ("chi", "bern"),
    ("norm", "norm"), ("unif", "unif"), ("chi", "chi"), ("bern", "bern"),
]
# reference means at rho = 0.8, N = 1000
REFERENCE_MCOR = {
    "exp/chi": 0.73, "norm/chi": 0.70, "unif/chi": 0.69, "exp/bern": 0.61, "chi/bern": 0.58,
    "norm/norm": 0.75, "unif/unif": 0.74, "chi/chi": 0.73, "bern/bern": 0.58,
}
COPULA_PAIRS = [("exp", "chi"), ("norm", "chi"), ("unif", "chi"), ("exp", "bern"), ("chi", "bern")]
REFERENCE_CMCOR = {"exp/chi": 0.74, "norm/chi": 0.74, "unif/chi": 0.74, "exp/bern": 0.57, "chi/bern": 0.57}
REFERENCE_WITHIN_MARGIN = {0.0: 0.56, 0.5: 0.52, 1.0: 0.46}
DOMINANCE_PAIRS = [("norm", "norm"), ("unif", "unif"), ("exp", "exp"), ("chi", "chi")]

CURVE_VARIANTS = (MeasureVariant.TOTAL, MeasureVariant.LOWER, MeasureVariant.UPPER,
                  MeasureVariant.UNNORMALIZED, MeasureVariant.PAIRWISE)


@dataclass
class ExperimentReport:
    name: str
    config: dict
    rows: list
    columns: list = field(default_factory=list)

    def column(self, key):
        return [r[key] for r in self.rows]

    def write(self, out_dir):
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_table(out / f"{self.name}.csv", self.rows, self.columns or None)
        write_json(out / f"{self.name}.json", {"experiment": self.name, "config": self.config,
                                               "rows": self.rows})
        return out / f"{self.name}.csv", out / f"{self.name}.json"


def _label(pair):
    return "/".join(MarginalSpec.parse(m).value for m in pair)


def _measure(data, partition, variant, estimator, copula, tseed):
    if copula:
        return cmcor(data, partition, estimator, variant, tseed).value
    return mcor(data, partition, variant, estimator).value


def marginal_pair_means(pairs=MARGINAL_PAIRS, rho=0.8, cases=100, n_samples=1000,
                        estimator=EstimatorKind.BIAS_CORRECTED, copula=False, seed=0,
                        name=None):
    """Mean (and sd) of Mcor or CMcor for several marginal pairs over shared copula samples."""
    estimator = EstimatorKind.parse(estimator)
    labels = [_label(p) for p in pairs]
    vals = np.empty((cases, len(pairs)))
    for c in range(cases):
        u = sample_gaussian_copula(rho, n_samples, _rng.derive_seed(seed, _rng.REPLICATE, c))
        for i, (a, b) in enumerate(pairs):
            data = np.column_stack([marginal_quantile(a, u[:, 0]), marginal_quantile(b, u[:, 1])])
            vals[c, i] = _measure(data, None, MeasureVariant.TOTAL, estimator, copula,
                                  _rng.derive_seed(seed, _rng.TRANSFORM, c, i))
    ref = REFERENCE_CMCOR if copula else REFERENCE_MCOR
    rows = [{
        "pair": lab,
        "mean": float(vals[:, i].mean()),
        "sd": float(vals[:, i].std(ddof=1)) if cases > 1 else float("nan"),
        "cases": cases,
        "reference": ref.get(lab, float("nan")) if rho == 0.8 else float("nan"),
    } for i, lab in enumerate(labels)]
    config = {"rho": rho, "cases": cases, "n_samples": n_samples, "estimator": estimator.value,
              "copula": copula, "seed": seed, "pairs": labels}
    name = name or ("example-5.4" if copula else "example-4.2")
    return ExperimentReport(name, config, rows, ["pair", "mean", "sd", "cases", "reference"])


def example_4_2(rho=0.8, cases=100, n_samples=1000, estimator=EstimatorKind.BIAS_CORRECTED, seed=0):
    """Systematic influence of marginal distributions on Mcor."""
    return marginal_pair_means(MARGINAL_PAIRS, rho, cases, n_samples, estimator, False, seed)


def example_5_4(rho=0.8, cases=100, n_samples=1000, estimator=EstimatorKind.BIAS_CORRECTED, seed=0):
    """Same setting for the copula version, including Bernoulli margins."""
    return marginal_pair_means(COPULA_PAIRS, rho, cases, n_samples, estimator, True, seed)


def example_4_3(s_values=(0.0, 0.5, 1.0), cases=100, n_samples=1000,
                estimator=EstimatorKind.BIAS_CORRECTED, seed=0):
    """Mcor((X1, X2), Y) for varying dependence ``s`` inside the first component.

    Replicate ``r`` uses the same normal draws for every ``s``.
    """
    estimator = EstimatorKind.parse(estimator)
    rows = []
    for s in s_values:
        cfg = ScenarioConfig(Scenario.WITHIN_MARGIN, n_samples=n_samples, replications=cases,
                             seed=seed, param=float(s))
        v = np.array([mcor(scenario_generate(cfg, r), None, MeasureVariant.TOTAL, estimator).value
                      for r in range(cases)])
        rows.append({"s": float(s), "mean": float(v.mean()),
                     "sd": float(v.std(ddof=1)) if cases > 1 else float("nan"), "cases": cases,
                     "reference": REFERENCE_WITHIN_MARGIN.get(float(s), float("nan"))})
    config = {"s_values": [float(s) for s in s_values], "cases": cases, "n_samples": n_samples,
              "estimator": estimator.value, "seed": seed}
    return ExperimentReport("example-4.3", config, rows, ["s", "mean", "sd", "cases", "reference"])


def multivariate_curves(s_grid=tuple(np.round(np.linspace(0, 1, 11), 2)), n_samples=100,
                        estimator=EstimatorKind.BIAS_CORRECTED, copula=False, seed=0,
                        variants=CURVE_VARIANTS):
    """Values of every variant along ``s`` for the three trivariate scenarios.

    One sample per setting.  A degenerate norming constant (possible for
    the unnormalized variant on Bernoulli data) is reported as NaN.
    """
    estimator = EstimatorKind.parse(estimator)
    rows = []
    scenarios = (Scenario.MULTIVARIATE_NORMAL, Scenario.INTERPOLATION, Scenario.PERTURBED_BERNOULLI)
    for si, sc in enumerate(scenarios):
        for gi, s in enumerate(s_grid):
            cfg = ScenarioConfig(sc, n_samples=n_samples, seed=_rng.derive_seed(seed, _rng.REPLICATE, si, gi),
                                 param=float(s))
            ds = scenario_generate(cfg)
            tseed = _rng.derive_seed(seed, _rng.TRANSFORM, si, gi)
            for v in variants:
                v = MeasureVariant.parse(v)
                try:
                    val = _measure(ds, None, v, estimator, copula, tseed)
                    note = ""
                except DegenerateStatisticError:
                    val, note = float("nan"), "degenerate"
                rows.append({"scenario": sc.value, "s": float(s), "variant": v.value,
                             "value": float(val), "note": note})
    config = {"s_grid": [float(s) for s in s_grid], "n_samples": n_samples,
              "estimator": estimator.value, "copula": copula, "seed": seed,
              "variants": [MeasureVariant.parse(v).value for v in variants]}
    return ExperimentReport("multivariate-curves", config, rows,
                            ["scenario", "s", "variant", "value", "note"])


def bias_comparison(sample_sizes=(10, 20, 50, 100, 200, 500), cases=200, n_components=2, seed=0):
    """Mean and sd of biased vs bias-corrected Mcor over growing ``N``.

    Settings: independent uniforms, uniforms coupled by a Gaussian copula
    with correlation 0.5, and (for three components) the pairwise
    independent Bernoulli triple.
    """
    if n_components not in (2, 3):
        raise ValueError("n_components must be 2 or 3")
    settings = ["independent", "gauss_copula_0.5"] + (["bernoulli_triple"] if n_components == 3 else [])
    rows = []
    for si, setting in enumerate(settings):
        for n in sample_sizes:
            vals = {k: [] for k in EstimatorKind}
            for c in range(cases):
                dseed = _rng.derive_seed(seed, _rng.REPLICATE, si, n, c)
                if setting == "bernoulli_triple":
                    data = scenario_generate(ScenarioConfig(Scenario.PERTURBED_BERNOULLI, n_samples=n,
                                                            seed=dseed)).values
                else:
                    rho = 0.0 if setting == "independent" else 0.5
                    corr = np.full((n_components, n_components), rho)
                    np.fill_diagonal(corr, 1.0)
                    data = sample_gaussian_copula(corr, n, dseed)
                for kind in EstimatorKind:
                    try:
                        vals[kind].append(mcor(data, None, MeasureVariant.TOTAL, kind).value)
                    except DegenerateStatisticError:
                        vals[kind].append(float("nan"))
            for kind in EstimatorKind:
                v = np.asarray(vals[kind])
                rows.append({"setting": setting, "n_samples": n, "estimator": kind.value,
                             "mean": float(np.nanmean(v)), "sd": float(np.nanstd(v, ddof=1)),
                             "cases": int(np.sum(~np.isnan(v)))})
    config = {"sample_sizes": list(sample_sizes), "cases": cases, "n_components": n_components,
              "seed": seed}
    return ExperimentReport("bias-comparison", config, rows,
                            ["setting", "n_samples", "estimator", "mean", "sd", "cases"])


def dominance(pairs=DOMINANCE_PAIRS, rho=0.0, cases=1000, n_samples=100,
              estimator=EstimatorKind.BIASED, copula=False, seed=0):
    """Dominance matrix in long format (row_pair, col_pair, count, p, p_holm, stars)."""
    rep = dominance_experiment(pairs, rho, cases, n_samples, estimator, copula, seed)
    return ExperimentReport("dominance", rep.config, rep.rows(),
                            ["row_pair", "col_pair", "count", "ties", "p", "p_holm", "stars"])


EXPERIMENTS = {
    "example-4.2": example_4_2,
    "example-4.3": example_4_3,
    "example-5.4": example_5_4,
    "multivariate-curves": multivariate_curves,
    "bias-comparison": bias_comparison,
    "dominance": dominance,
}


def run_example_tables(example, seed=0, out_dir=None, **kwargs):
    """Run a named experiment and optionally write its CSV and JSON files.

    Parameters
    ----------
    example : str
        One of ``example-4.2``, ``example-4.3``, ``example-5.4``,
        ``multivariate-curves``, ``bias-comparison`` or ``dominance``
        (``4.2`` etc. are accepted as shorthands).
    seed : int
    out_dir : path, optional
    **kwargs
        Passed to the driver (``cases``, ``n_samples``, ``rho``, ...).
    """
    key = str(example)
    if key not in EXPERIMENTS and f"example-{key}" in EXPERIMENTS:
        key = f"example-{key}"
    if key not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {example!r}; choose from {sorted(EXPERIMENTS)}")
    report = EXPERIMENTS[key](seed=seed, **kwargs)
    if out_dir is not None:
        report.write(out_dir)
    return report
