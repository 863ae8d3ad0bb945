"""Data generators for the simulation experiments.

=====================  ==========================================  =========
scenario               data                                        partition
=====================  ==========================================  =========
gauss_copula_pair      (q_a(U1), q_b(U2)), Gaussian copula rho     (1, 1)
within_margin          uniforms of (X1, X2, Y), cov(X1,X2)=s,      (2, 1)
                       cov(Xi,Y)=0.5
multivariate_normal    3 normals with pairwise covariance s        (1, 1, 1)
interpolation          s(X,X,X) + (1-s)(X1,X2,X3)                  (1, 1, 1)
perturbed_bernoulli    (Y1, Y2, 1{Y1=Y2}) + s(X1,X2,X3)            (1, 1, 1)
perturbed_line         (X, X + rZ), X uniform or exponential       (1, 1)
=====================  ==========================================  =========
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from . import _rng
from .kernels import ComponentPartition, Dataset
from .samplers import MarginalSpec, marginal_quantile, sample_gaussian


class Scenario(str, enum.Enum):
    GAUSS_COPULA_PAIR = "gauss_copula_pair"
    WITHIN_MARGIN = "within_margin"
    MULTIVARIATE_NORMAL = "multivariate_normal"
    INTERPOLATION = "interpolation"
    PERTURBED_BERNOULLI = "perturbed_bernoulli"
    PERTURBED_LINE = "perturbed_line"


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one simulation setting.

    ``param`` is ``s`` (in [0, 1]) for the within-margin, multivariate normal,
    interpolation and perturbed Bernoulli scenarios and ``r >= 0`` for the
    perturbed line.  ``rho`` and ``marginals`` are used by the Gaussian
    copula pair, ``base`` (``"unif"`` or ``"exp"``) by the perturbed line.
    """

    scenario: Scenario
    n_samples: int = 1000
    replications: int = 1
    seed: int = 0
    param: float = 0.0
    rho: float = 0.0
    marginals: tuple = ("norm", "norm")
    base: str = "unif"

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        if self.n_samples < 2:
            raise ValueError("n_samples must be at least 2")
        if self.replications < 1:
            raise ValueError("replications must be positive")
        if self.scenario is Scenario.PERTURBED_LINE:
            if self.param < 0:
                raise ValueError(f"r must be non-negative, got {self.param}")
            if self.base not in ("unif", "exp"):
                raise ValueError(f"base must be 'unif' or 'exp', got {self.base!r}")
        elif self.scenario is not Scenario.GAUSS_COPULA_PAIR and not 0.0 <= self.param <= 1.0:
            raise ValueError(f"s must lie in [0, 1], got {self.param}")
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [-1, 1], got {self.rho}")
        object.__setattr__(self, "marginals", tuple(MarginalSpec.parse(m) for m in self.marginals))
        if self.scenario is Scenario.GAUSS_COPULA_PAIR and len(self.marginals) != 2:
            raise ValueError("gauss_copula_pair needs exactly two marginals")


def scenario_generate(config, replicate=0):
    """Draw the dataset of replicate ``replicate`` of a scenario.

    The draws of replicate ``r`` come from the seed derived from
    ``(config.seed, REPLICATE, r)``, independently of other replicates.
    """
    seed = _rng.derive_seed(config.seed, _rng.REPLICATE, replicate)
    n, s = config.n_samples, config.param
    sc = config.scenario

    if sc is Scenario.GAUSS_COPULA_PAIR:
        u = ndtr(sample_gaussian(config.rho, n, seed))
        values = np.column_stack([marginal_quantile(m, u[:, i]) for i, m in enumerate(config.marginals)])
        labels = tuple(m.value for m in config.marginals)
        return Dataset(values, ComponentPartition.univariate(2), labels)

    if sc is Scenario.WITHIN_MARGIN:
        corr = np.array([[1.0, s, 0.5], [s, 1.0, 0.5], [0.5, 0.5, 1.0]])
        values = ndtr(sample_gaussian(corr, n, seed))
        return Dataset(values, ComponentPartition.from_dims([2, 1]), ("x1", "x2", "y"))

    if sc is Scenario.MULTIVARIATE_NORMAL:
        corr = np.full((3, 3), s)
        np.fill_diagonal(corr, 1.0)
        values = sample_gaussian(corr, n, seed)
        return Dataset(values, ComponentPartition.univariate(3), ("x1", "x2", "x3"))

    rng = _rng.stream(seed, _rng.COPULA_SAMPLE)
    if sc is Scenario.INTERPOLATION:
        common = rng.standard_normal((n, 1))
        indep = rng.standard_normal((n, 3))
        values = s * np.repeat(common, 3, axis=1) + (1.0 - s) * indep
        return Dataset(values, ComponentPartition.univariate(3), ("x1", "x2", "x3"))

    if sc is Scenario.PERTURBED_BERNOULLI:
        y12 = rng.integers(0, 2, size=(n, 2))
        y3 = (y12[:, 0] == y12[:, 1]).astype(int)
        y = np.column_stack([y12, y3]).astype(float)
        values = y + s * rng.standard_normal((n, 3)) if s > 0 else y
        return Dataset(values, ComponentPartition.univariate(3), ("y1", "y2", "y3"))

    # perturbed line
    x = rng.random(n) if config.base == "unif" else rng.exponential(1.0, n)
    z = rng.standard_normal(n)
    values = np.column_stack([x, x + config.param * z])
    return Dataset(values, ComponentPartition.univariate(2), ("x", "y"))


def replicates(config):
    """Iterate over all replicate datasets of a configuration."""
    for r in range(config.replications):
        yield scenario_generate(config, r)
