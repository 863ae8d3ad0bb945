"""Pearson correlation and the distance multicorrelation family.

All distance based estimators work on the negated centered matrices
``B_i = -A_i`` where ``A_i`` is the double centered (biased) or U-centered
(bias corrected) distance matrix of component ``i``.  For a subset
``S`` of components of size ``m`` the squared multicorrelation is

    pref * sum_{j,k} prod_{i in S} B_i[j, k] / c_{i,m}

with ``pref = 1/N**2`` (biased) or ``1/(N(N-3))`` (bias corrected).  The
variants differ only in the norming constants ``c_{i,m}`` and in how the
subset terms are aggregated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .centering import CenteredMatrix, EstimatorKind, center, prefactor
from .kernels import ComponentPartition, Dataset, DistanceMatrix, distance_matrix

MAX_TOTAL_COMPONENTS = 14

# relative threshold below which an estimated norming constant counts as zero
_DEGENERATE_RTOL = 1e-12


class DegenerateStatisticError(ValueError):
    """A norming constant (or other statistic ingredient) is zero."""


class MeasureVariant(str, enum.Enum):
    TOTAL = "total"
    LOWER = "lower"
    UPPER = "upper"
    UNNORMALIZED = "unnormalized"
    PAIRWISE = "pairwise"
    MULTIVARIANCE = "multivariance"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower().replace("-", "_")
        aliases = {
            "mcor_total": "total",
            "mcor_lower": "lower",
            "mcor_upper": "upper",
            "mcor_unnormalized": "unnormalized",
            "mcor_pairwise": "pairwise",
            "multivariance_normalized": "multivariance",
        }
        return cls(aliases.get(value, value))


@dataclass(frozen=True)
class MeasureResult:
    """Value of one dependence measure on one sample.

    ``value`` is the sign preserving square root of ``squared_value``.
    ``statistic`` is ``N * squared_value`` for the normalized total
    multivariance and ``None`` otherwise; ``seed`` records the transform
    seed of copula versions.
    """

    variant: MeasureVariant
    estimator: EstimatorKind
    value: float
    squared_value: float
    n_components: int
    sample_size: int
    statistic: float | None = None
    seed: int | None = None


def sign_root(x):
    """``sign(x) * sqrt(|x|)``."""
    return math.copysign(math.sqrt(abs(x)), x)


def pearson_cor(x, y):
    """Empirical Pearson correlation, clamped to ``[-1, 1]``."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError("x and y must have the same length")
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = np.dot(xc, xc)
    syy = np.dot(yc, yc)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("zero variance: correlation is undefined for constant input")
    r = np.dot(xc, yc) / math.sqrt(sxx * syy)
    return float(min(1.0, max(-1.0, r)))


# ----------------------------------------------------------------------------
# norming constants
# ----------------------------------------------------------------------------

def _order_for(variant, m, n_components):
    # order n keeps every term within [-1, 1] (Hoelder), so it gives the lower bound
    if variant in (MeasureVariant.UPPER, MeasureVariant.PAIRWISE):
        return 2
    if variant is MeasureVariant.LOWER:
        return int(m if n_components is None else n_components)
    return int(m)


def _moment_constant(neg, order, pref, signed):
    """``(pref * sum(|B|**order))**(1/order)`` or the signed analogue."""
    abs_moment = pref * np.sum(np.abs(neg) ** order)
    moment = pref * np.sum(neg ** order) if signed else abs_moment
    if not np.isfinite(moment) or moment <= _DEGENERATE_RTOL * abs_moment or abs_moment == 0.0:
        raise DegenerateStatisticError(
            f"degenerate norming constant (order {order} moment {moment:.3g})"
        )
    return float(moment ** (1.0 / order))


def norming_constant(centered, m, variant, *, n_components=None, distance=None):
    """Estimated norming constant of one component.

    Parameters
    ----------
    centered : CenteredMatrix
    m : int
        Order of the multicorrelation term (size of the subset), ``m >= 2``.
    variant : MeasureVariant or str
    n_components : int, optional
        Number of components ``n``, the order of the lower variant's constant
        (defaults to ``m``).
    distance : DistanceMatrix or ndarray, optional
        Raw distance matrix; required by the normalized multivariance,
        whose constant is the grand mean of the distances.

    Raises
    ------
    DegenerateStatisticError
        If the estimate is zero (or, for the unnormalized variant, not positive).
    """
    variant = MeasureVariant.parse(variant)
    if m < 2:
        raise ValueError("order m must be at least 2")
    if variant is MeasureVariant.MULTIVARIANCE:
        if distance is None:
            raise ValueError("the multivariance constant needs the distance matrix")
        d = distance.entries if isinstance(distance, DistanceMatrix) else np.asarray(distance)
        c = float(d.mean())
        if not c > 0.0:
            raise DegenerateStatisticError("degenerate norming constant (constant component)")
        return c
    a = centered.entries
    pref = prefactor(a.shape[0], centered.kind)
    order = _order_for(variant, m, n_components)
    return _moment_constant(-a, order, pref, signed=variant is MeasureVariant.UNNORMALIZED)


def mcor_squared_m(centered, constants):
    """Squared multicorrelation of one subset of ``m`` components.

    Parameters
    ----------
    centered : sequence of CenteredMatrix
        Centered matrices of the components in the subset.
    constants : sequence of float
        Matching order-``m`` norming constants.
    """
    centered = list(centered)
    if len(centered) < 2:
        raise ValueError("a multicorrelation term needs at least 2 components")
    if len(constants) != len(centered):
        raise ValueError("one constant per component is required")
    kinds = {c.kind for c in centered}
    if len(kinds) != 1:
        raise ValueError("cannot mix biased and bias corrected matrices")
    sizes = {c.n_samples for c in centered}
    if len(sizes) != 1:
        raise ValueError("matrices have different sample sizes")
    for c in constants:
        if not c > 0.0:
            raise DegenerateStatisticError("norming constants must be positive")
    prod = None
    for a, c in zip(centered, constants):
        term = -a.entries / c
        prod = term if prod is None else prod * term
    return float(prefactor(sizes.pop(), kinds.pop()) * prod.sum())


# ----------------------------------------------------------------------------
# prepared samples and aggregation
# ----------------------------------------------------------------------------

@dataclass
class PreparedSample:
    """Centered matrices of a sample, ready for (repeated) aggregation.

    ``neg`` holds ``-A_i`` for each component.  Row permutations of a
    component leave its norming constants unchanged, which the permutation
    test exploits by computing constants once.
    """

    neg: list
    distance_means: list
    kind: EstimatorKind
    n_samples: int

    @property
    def n_components(self):
        return len(self.neg)

    @property
    def pref(self):
        return prefactor(self.n_samples, self.kind)

    def constants(self, variant):
        """Norming constants keyed by subset order (``None`` for product forms)."""
        n = self.n_components
        pref = self.pref
        if variant is MeasureVariant.MULTIVARIANCE:
            for c in self.distance_means:
                if not c > 0.0:
                    raise DegenerateStatisticError("degenerate norming constant (constant component)")
            return {None: np.array(self.distance_means)}
        if variant in (MeasureVariant.LOWER, MeasureVariant.UPPER):
            order = n if variant is MeasureVariant.LOWER else 2
            return {None: np.array([_moment_constant(b, order, pref, False) for b in self.neg])}
        orders = [2] if variant is MeasureVariant.PAIRWISE else range(2, n + 1)
        signed = variant is MeasureVariant.UNNORMALIZED
        return {
            m: np.array([_moment_constant(b, m, pref, signed) for b in self.neg])
            for m in orders
        }


def prepare(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED):
    """Distance and centered matrices of every component of a sample."""
    if isinstance(x, Dataset):
        partition = x.partition if partition is None else partition
        x = x.values
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if partition is None:
        partition = ComponentPartition.univariate(x.shape[1])
    kind = EstimatorKind.parse(estimator)
    parts = partition.split(x)
    if len(parts) < 2:
        raise ValueError("multicorrelation needs at least 2 components")
    neg, means = [], []
    for comp, kernel in zip(parts, partition.kernels):
        d = distance_matrix(comp, kernel)
        neg.append(-center(d, kind).entries)
        means.append(float(d.entries.mean()))
    return PreparedSample(neg, means, kind, x.shape[0])


def subset_sums(neg, max_order=None):
    """``sum_{j,k} prod_{i in S} B_i[j, k]`` for every subset ``S`` with ``|S| >= 2``.

    Returns a dict keyed by sorted index tuples.  Subsets are enumerated
    depth first, so at most ``n`` product matrices are alive at a time.
    """
    n = len(neg)
    max_order = n if max_order is None else max_order
    out = {}

    def extend(subset, prod):
        for j in range(subset[-1] + 1, n):
            key = subset + (j,)
            out[key] = float(np.vdot(prod, neg[j]))
            if len(key) < max_order and j < n - 1:
                extend(key, prod * neg[j])

    for i in range(n - 1):
        extend((i,), neg[i])
    return out


def aggregate(neg, constants, variant, pref):
    """Squared value of a variant from negated centered matrices.

    ``constants`` is the mapping returned by :meth:`PreparedSample.constants`.
    """
    n = len(neg)
    if variant in (MeasureVariant.TOTAL, MeasureVariant.UNNORMALIZED, MeasureVariant.PAIRWISE):
        pairwise = variant is MeasureVariant.PAIRWISE
        sums = subset_sums(neg, 2 if pairwise else n)
        total = 0.0
        for key, t in sums.items():
            c = constants[len(key)]
            total += t / math.prod(c[i] for i in key)
        weight = n * (n - 1) / 2 if pairwise else 2**n - n - 1
        return pref * total / weight
    prod = None
    for b, c in zip(neg, constants[None]):
        term = 1.0 + b / c
        prod = term if prod is None else prod * term
    return pref * float((prod - 1.0).sum()) / (2**n - n - 1)


def _result(variant, prep, squared, seed=None):
    statistic = prep.n_samples * squared if variant is MeasureVariant.MULTIVARIANCE else None
    return MeasureResult(
        variant=variant,
        estimator=prep.kind,
        value=sign_root(squared),
        squared_value=float(squared),
        n_components=prep.n_components,
        sample_size=prep.n_samples,
        statistic=statistic,
        seed=seed,
    )


def _check_cap(n, max_components):
    if max_components is not None and n > max_components:
        raise ValueError(
            f"{n} components exceed the subset-enumeration cap of {max_components}; "
            "use lower/upper variant for large n"
        )


def mcor(x, partition=None, variant=MeasureVariant.TOTAL,
         estimator=EstimatorKind.BIAS_CORRECTED, *, max_components=MAX_TOTAL_COMPONENTS):
    """Evaluate any member of the distance multicorrelation family.

    Parameters
    ----------
    x : (N, D) array_like or Dataset
        Sample matrix.
    partition : ComponentPartition, optional
        Column grouping; defaults to one component per column (or the
        dataset's own partition).
    variant : MeasureVariant or str
        ``total``, ``lower``, ``upper``, ``unnormalized``, ``pairwise`` or
        ``multivariance`` (normalized total multivariance).
    estimator : EstimatorKind or str
        ``biased`` or ``bias_corrected``.
    max_components : int or None
        Cap on ``n`` for the total and unnormalized variants.

    Returns
    -------
    MeasureResult
    """
    variant = MeasureVariant.parse(variant)
    prep = prepare(x, partition, estimator)
    if variant in (MeasureVariant.TOTAL, MeasureVariant.UNNORMALIZED):
        _check_cap(prep.n_components, max_components)
    squared = aggregate(prep.neg, prep.constants(variant), variant, prep.pref)
    return _result(variant, prep, squared)


def total_mcor(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED, *,
               max_components=MAX_TOTAL_COMPONENTS):
    """Total distance multicorrelation (average over all subsets of size >= 2)."""
    return mcor(x, partition, MeasureVariant.TOTAL, estimator, max_components=max_components)


def total_mcor_bound(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED, which="lower"):
    """Lower or upper bound of total multicorrelation (product form, O(n N^2))."""
    if which not in ("lower", "upper"):
        raise ValueError(f"which must be 'lower' or 'upper', got {which!r}")
    return mcor(x, partition, MeasureVariant.parse(which), estimator)


def mcor_pairwise(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED):
    """Average squared multicorrelation over all pairs of components."""
    return mcor(x, partition, MeasureVariant.PAIRWISE, estimator)


def mcor_unnormalized(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED, *,
                      max_components=MAX_TOTAL_COMPONENTS):
    """Total multicorrelation normed by the m-fold self multivariance."""
    return mcor(x, partition, MeasureVariant.UNNORMALIZED, estimator,
                max_components=max_components)


def total_multivariance_normalized(x, partition=None, estimator=EstimatorKind.BIASED):
    """Normalized total multivariance; ``result.statistic`` is ``N`` times the square.

    Under independence the biased statistic has (approximately) unit
    expectation and diverges with ``N`` under dependence.
    """
    return mcor(x, partition, MeasureVariant.MULTIVARIANCE, estimator)


def mcor_alpha_limit_check(x, y, alpha=1.99, estimator=EstimatorKind.BIAS_CORRECTED):
    """Return ``(Mcor_alpha(x, y), |cor(x, y)|)`` for univariate samples."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    res = mcor(np.column_stack([x, y]), ComponentPartition.univariate(2, alpha=alpha),
               MeasureVariant.TOTAL, estimator)
    return res.value, abs(pearson_cor(x, y))
