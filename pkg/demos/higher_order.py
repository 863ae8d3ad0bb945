"""
Dependence that pairwise measures miss
======================================

``Y3 = 1{Y1 = Y2}`` for two fair coins: every pair is independent, the
triple is not.  Total multicorrelation sees it, the pairwise variant
does not.
"""

from distmcor import mcor, permutation_test
from distmcor.measures import DegenerateStatisticError
from distmcor.scenarios import Scenario, ScenarioConfig, scenario_generate

ds = scenario_generate(ScenarioConfig(Scenario.PERTURBED_BERNOULLI, n_samples=500, seed=4))

for variant in ("total", "lower", "upper", "pairwise"):
    res = mcor(ds, variant=variant, estimator="biased")
    test = permutation_test(ds, variant=variant, estimator="biased", n_permutations=199, seed=1)
    print(f"{variant:<10} value {res.value:6.3f}   permutation p {test.p_value:.3f}")

# normed by the self multivariance the value is no longer bounded by 1;
# a coin column with exactly N/2 ones has no odd-order norming constant
for seed in (4, 5):
    d = scenario_generate(ScenarioConfig(Scenario.PERTURBED_BERNOULLI, n_samples=500, seed=seed))
    try:
        print("unnormalized:", round(mcor(d, variant="unnormalized", estimator="biased").value, 2))
    except DegenerateStatisticError as exc:
        print("unnormalized: degenerate,", exc)

# noise added to every column slowly washes the structure out
for s in (0.0, 0.25, 0.5, 1.0):
    d = scenario_generate(ScenarioConfig(Scenario.PERTURBED_BERNOULLI, n_samples=300, seed=4, param=s))
    print(f"s={s:<5} total {mcor(d).value:6.3f}  pairwise {mcor(d, variant='pairwise').value:6.3f}")
