"""Independence tests, dominance experiments and multiple testing."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binomtest

from . import _rng
from .centering import EstimatorKind
from .copula import cmcor, transform_dataset
from .kernels import Dataset
from .measures import (
    MAX_TOTAL_COMPONENTS,
    MeasureVariant,
    _check_cap,
    aggregate,
    mcor,
    prepare,
)
from .samplers import MarginalSpec, marginal_quantile, sample_gaussian_copula

# relative tolerance when comparing permuted statistics with the observed one
_TIE_RTOL = 1e-12


class TestMethod(str, enum.Enum):
    __test__ = False

    PERMUTATION = "permutation"
    CONSERVATIVE_BOUND = "conservative_bound"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower().replace("-", "_")
        return cls.CONSERVATIVE_BOUND if value == "bound" else cls(value)


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    statistic: float
    p_value: float
    method: TestMethod
    permutations: int = 0
    seed: int | None = None


def permutation_test(x, partition=None, variant=MeasureVariant.TOTAL,
                     estimator=EstimatorKind.BIAS_CORRECTED, n_permutations=999,
                     seed=0, *, copula_seed=None, max_components=MAX_TOTAL_COMPONENTS):
    """Permutation test of mutual independence of the components.

    Components ``2..n`` are row-permuted independently in every replicate;
    the p-value is ``(1 + #{T_b >= T}) / (B + 1)``.  Replicate ``b`` draws its
    permutations from the stream ``(seed, PERMUTATION, b)``.

    Parameters
    ----------
    x : array_like or Dataset
    partition : ComponentPartition, optional
    variant, estimator
        Measure whose squared value is the test statistic.
    n_permutations : int
        Number of replicates ``B`` (at least 99).
    seed : int
    copula_seed : int, optional
        If given, the test is run on the Monte Carlo distributional
        transform of the data drawn with this seed (test of the copula
        version).
    """
    variant = MeasureVariant.parse(variant)
    if n_permutations < 99:
        raise ValueError("use at least 99 permutations")
    if isinstance(x, Dataset) and partition is None:
        partition = x.partition
    if copula_seed is not None:
        x = transform_dataset(x, copula_seed).values
    prep = prepare(x, partition, estimator)
    if variant in (MeasureVariant.TOTAL, MeasureVariant.UNNORMALIZED):
        _check_cap(prep.n_components, max_components)
    consts = prep.constants(variant)
    pref = prep.pref
    neg = prep.neg
    if None in consts:
        # product forms: scale once, permutations commute with scaling
        neg = [b / c for b, c in zip(neg, consts[None])]
        consts = {None: np.ones(len(neg))}
    observed = aggregate(neg, consts, variant, pref)
    threshold = observed - _TIE_RTOL * abs(observed)

    n = prep.n_samples
    exceed = 0
    for b in range(n_permutations):
        rng = _rng.stream(seed, _rng.PERMUTATION, b)
        perm = [neg[0]]
        for mat in neg[1:]:
            p = rng.permutation(n)
            perm.append(np.take(np.take(mat, p, axis=0), p, axis=1))
        if aggregate(perm, consts, variant, pref) >= threshold:
            exceed += 1
    p_value = (1 + exceed) / (n_permutations + 1)
    stat = n * observed if variant is MeasureVariant.MULTIVARIANCE else observed
    return TestResult(float(stat), p_value, TestMethod.PERMUTATION, int(n_permutations), int(seed))


def conservative_pvalue(statistic):
    """Markov bound ``min(1, 1/statistic)`` for ``N`` times the normalized multivariance.

    Valid because the statistic is non-negative with unit expectation
    under independence.
    """
    if statistic < 0:
        raise ValueError("conservative bound requires the biased statistic (got a negative value)")
    if statistic <= 1.0:
        return 1.0
    return 1.0 / statistic


def independence_test(x, partition=None, method=TestMethod.PERMUTATION, *,
                      variant=MeasureVariant.TOTAL, estimator=EstimatorKind.BIAS_CORRECTED,
                      n_permutations=999, seed=0, copula_seed=None):
    """Dispatch to :func:`permutation_test` or the conservative bound.

    The bound always uses the biased normalized total multivariance.
    """
    method = TestMethod.parse(method)
    if method is TestMethod.PERMUTATION:
        return permutation_test(x, partition, variant, estimator, n_permutations, seed,
                                copula_seed=copula_seed)
    if copula_seed is not None:
        if isinstance(x, Dataset) and partition is None:
            partition = x.partition
        x = transform_dataset(x, copula_seed).values
    res = mcor(x, partition, MeasureVariant.MULTIVARIANCE, EstimatorKind.BIASED)
    return TestResult(res.statistic, conservative_pvalue(res.statistic),
                      TestMethod.CONSERVATIVE_BOUND, 0, None)


# ----------------------------------------------------------------------------
# multiple testing
# ----------------------------------------------------------------------------

def binomial_two_sided_p(k, c):
    """Exact two-sided binomial p-value of ``k`` successes in ``c`` trials against 1/2."""
    k, c = int(k), int(c)
    if not 0 <= k <= c:
        raise ValueError(f"need 0 <= k <= c, got k={k}, c={c}")
    if c == 0:
        return 1.0
    return float(min(1.0, binomtest(k, c, 0.5).pvalue))


def holm_adjust(pvalues):
    """Holm step-down adjusted p-values (in the input order)."""
    p = np.asarray(pvalues, dtype=float)
    if p.ndim != 1:
        raise ValueError("expected a 1-d sequence of p-values")
    if np.any((p < 0) | (p > 1)) or np.isnan(p).any():
        raise ValueError("p-values must lie in [0, 1]")
    m = p.size
    order = np.argsort(p, kind="stable")
    adj = np.minimum(1.0, (m - np.arange(m)) * p[order])
    adj = np.maximum.accumulate(adj)
    out = np.empty(m)
    out[order] = adj
    return out.tolist()


def star_notation(p):
    if p <= 1e-4:
        return "****"
    if p <= 1e-3:
        return "***"
    if p <= 0.01:
        return "**"
    if p <= 0.05:
        return "*"
    return ""


# ----------------------------------------------------------------------------
# dominance experiments
# ----------------------------------------------------------------------------

def _pair_label(pair):
    return "/".join(m.value for m in pair)


@dataclass
class DominanceReport:
    """Pairwise dominance counts between marginal configurations.

    ``counts[a, b]`` is the number of cases in which the measure for
    configuration ``a`` was strictly larger than for ``b``.  Exact ties
    are counted in ``ties[a, b]`` and excluded from the binomial test.
    """

    labels: list
    counts: np.ndarray
    ties: np.ndarray
    p_values: np.ndarray
    adjusted_p: np.ndarray
    stars: list
    cases: int
    values: np.ndarray = field(repr=False, default=None)
    config: dict = field(default_factory=dict)

    def rows(self):
        """Long format: one dict per ordered off-diagonal cell."""
        out = []
        k = len(self.labels)
        for a in range(k):
            for b in range(k):
                if a == b:
                    continue
                out.append({
                    "row_pair": self.labels[a],
                    "col_pair": self.labels[b],
                    "count": int(self.counts[a, b]),
                    "ties": int(self.ties[a, b]),
                    "p": float(self.p_values[a, b]),
                    "p_holm": float(self.adjusted_p[a, b]),
                    "stars": self.stars[a][b],
                })
        return out


def dominance_experiment(pair_specs, rho=0.0, cases=1000, n_samples=100,
                         estimator=EstimatorKind.BIASED, use_copula_version=False,
                         seed=0, variant=MeasureVariant.TOTAL):
    """Count how often one marginal configuration yields the larger measure.

    In every case one Gaussian copula sample (correlation ``rho``) is drawn
    and mapped through the marginal quantile functions of each pair spec,
    so all configurations share the same underlying copula sample.

    Parameters
    ----------
    pair_specs : sequence of (str, str)
        At least two marginal pairs, e.g. ``[("norm", "norm"), ("unif", "unif")]``.
    rho : float
    cases : int
    n_samples : int
    estimator : EstimatorKind or str
    use_copula_version : bool
        Evaluate the copula version (fresh transform draws per pair and case).
    seed : int

    Returns
    -------
    DominanceReport
    """
    specs = [tuple(MarginalSpec.parse(m) for m in pair) for pair in pair_specs]
    if len(specs) < 2:
        raise ValueError("need at least two marginal pair specs")
    if any(len(s) != 2 for s in specs):
        raise ValueError("each spec must name exactly two marginals")
    if cases < 1:
        raise ValueError("cases must be positive")
    estimator = EstimatorKind.parse(estimator)
    k = len(specs)
    values = np.empty((cases, k))
    for c in range(cases):
        u = sample_gaussian_copula(rho, n_samples, _rng.derive_seed(seed, _rng.REPLICATE, c))
        for i, (ma, mb) in enumerate(specs):
            data = np.column_stack([marginal_quantile(ma, u[:, 0]), marginal_quantile(mb, u[:, 1])])
            if use_copula_version:
                tseed = _rng.derive_seed(seed, _rng.TRANSFORM, c, i)
                values[c, i] = cmcor(data, None, estimator, variant, tseed).value
            else:
                values[c, i] = mcor(data, None, variant, estimator).value
    return dominance_from_values(values, [_pair_label(s) for s in specs], config={
        "pairs": [_pair_label(s) for s in specs], "rho": rho, "cases": cases,
        "n_samples": n_samples, "estimator": estimator.value,
        "copula": bool(use_copula_version), "seed": seed,
        "variant": MeasureVariant.parse(variant).value,
    })


def dominance_from_values(values, labels, config=None):
    """Build a :class:`DominanceReport` from a ``cases x k`` value matrix.

    Holm's adjustment runs jointly over the upper-triangle cells.
    """
    values = np.asarray(values, dtype=float)
    cases, k = values.shape
    counts = np.zeros((k, k), dtype=int)
    ties = np.zeros((k, k), dtype=int)
    for a in range(k):
        for b in range(k):
            if a != b:
                counts[a, b] = int(np.sum(values[:, a] > values[:, b]))
                ties[a, b] = int(np.sum(values[:, a] == values[:, b]))
    pvals = np.ones((k, k))
    upper = [(a, b) for a in range(k) for b in range(a + 1, k)]
    raw = [binomial_two_sided_p(counts[a, b], counts[a, b] + counts[b, a]) for a, b in upper]
    adj = holm_adjust(raw) if raw else []
    adjusted = np.ones((k, k))
    for (a, b), p, q in zip(upper, raw, adj):
        pvals[a, b] = pvals[b, a] = p
        adjusted[a, b] = adjusted[b, a] = q
    stars = [["" if a == b else star_notation(adjusted[a, b]) for b in range(k)] for a in range(k)]
    return DominanceReport(list(labels), counts, ties, pvals, adjusted, stars, cases,
                           values=values, config=dict(config or {}))
