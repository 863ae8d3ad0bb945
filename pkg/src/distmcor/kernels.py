"""Negative definite kernels and per-component distance matrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist


class KernelFamily(str, enum.Enum):
    EUCLIDEAN_POWER = "euclidean_power"


@dataclass(frozen=True)
class KernelSpec:
    """Continuous negative definite function ``psi(t) = |t|**alpha``.

    Parameters
    ----------
    alpha : float
        Exponent in the open interval (0, 2).  ``alpha = 2`` is rejected:
        the resulting measures no longer characterize independence.
    family : KernelFamily
        Only the Euclidean power family is available.
    """

    alpha: float = 1.0
    family: KernelFamily = KernelFamily.EUCLIDEAN_POWER

    def __post_init__(self):
        alpha = float(self.alpha)
        if not np.isfinite(alpha) or not 0.0 < alpha < 2.0:
            raise ValueError(
                f"alpha must lie in the open interval (0, 2), got {self.alpha}"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "family", KernelFamily(self.family))


@dataclass(frozen=True)
class ComponentPartition:
    """Grouping of data columns into the components ``X_1, ..., X_n``.

    Parameters
    ----------
    components : sequence of sequences of int
        Zero-based column indices of each component, in order.
    kernels : sequence of KernelSpec, optional
        One kernel per component.  Defaults to ``KernelSpec()`` (alpha=1).
    """

    components: tuple
    kernels: tuple = field(default=())

    def __post_init__(self):
        comps = tuple(tuple(int(c) for c in comp) for comp in self.components)
        if not comps:
            raise ValueError("a partition needs at least one component")
        seen = set()
        for i, comp in enumerate(comps):
            if not comp:
                raise ValueError(f"component {i} is empty")
            for c in comp:
                if c < 0:
                    raise ValueError(f"negative column index {c}")
                if c in seen:
                    raise ValueError(f"column {c} appears in more than one component")
                seen.add(c)
        kernels = tuple(self.kernels) or tuple(KernelSpec() for _ in comps)
        if len(kernels) != len(comps):
            raise ValueError(
                f"{len(kernels)} kernels given for {len(comps)} components"
            )
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "kernels", kernels)

    @classmethod
    def from_dims(cls, dims, alpha=1.0):
        """Consecutive components with the given dimensions."""
        comps, start = [], 0
        for d in dims:
            comps.append(tuple(range(start, start + int(d))))
            start += int(d)
        return cls(comps, tuple(KernelSpec(alpha) for _ in comps))

    @classmethod
    def univariate(cls, n_columns, alpha=1.0):
        """Every column is its own one-dimensional component."""
        return cls.from_dims([1] * int(n_columns), alpha=alpha)

    @property
    def n(self):
        return len(self.components)

    @property
    def dims(self):
        return tuple(len(c) for c in self.components)

    @property
    def n_columns(self):
        return sum(self.dims)

    def with_alpha(self, alpha):
        return ComponentPartition(self.components, tuple(KernelSpec(alpha) for _ in self.components))

    def validate(self, n_columns):
        """Check that the components cover exactly ``range(n_columns)``."""
        cols = sorted(c for comp in self.components for c in comp)
        if cols != list(range(n_columns)):
            raise ValueError(
                f"partition columns {cols} do not cover the {n_columns} data columns exactly"
            )

    def split(self, x):
        """Return the list of ``(N, d_i)`` component arrays of ``x``."""
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        self.validate(x.shape[1])
        return [x[:, list(comp)] for comp in self.components]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric, zero-diagonal, non-negative ``N x N`` matrix."""

    entries: np.ndarray
    kernel: KernelSpec

    @property
    def n_samples(self):
        return self.entries.shape[0]


def psi_eval(kernel, x, y):
    """Evaluate ``|x - y|**alpha`` for two points of equal dimension.

    >>> psi_eval(KernelSpec(1.0), (3, 4), (0, 0))
    5.0
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(x - y) ** kernel.alpha)


def distance_matrix(samples, kernel=None):
    """Pairwise kernel evaluations ``psi(x_j - x_k)`` of a sample.

    Parameters
    ----------
    samples : (N,) or (N, d) array_like
        One row per observation.
    kernel : KernelSpec, optional
        Defaults to the Euclidean distance (alpha = 1).

    Returns
    -------
    DistanceMatrix
    """
    kernel = KernelSpec() if kernel is None else kernel
    x = np.asarray(samples, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError("samples must be a vector or a 2-d array")
    if x.shape[0] < 2:
        raise ValueError(f"need at least 2 samples, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples contain non-finite values")

    if x.shape[1] == 1:
        d = np.abs(x - x.T)
    else:
        d = cdist(x, x)
    if kernel.alpha != 1.0:
        d = d ** kernel.alpha
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, kernel)


@dataclass(frozen=True)
class Dataset:
    """``N x D`` sample matrix together with its component partition."""

    values: np.ndarray
    partition: ComponentPartition
    labels: tuple = ()

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2:
            raise ValueError("dataset values must be 2-d")
        self.partition.validate(values.shape[1])
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_samples(self):
        return self.values.shape[0]


def stack_components(*arrays, alpha=1.0):
    """Build a :class:`Dataset` whose components are the given arrays.

    >>> ds = stack_components([1., 2., 3.], [[0., 1.], [1., 1.], [2., 0.]])
    >>> ds.partition.dims
    (1, 2)
    """
    cols = []
    for a in arrays:
        a = np.asarray(a, dtype=float)
        cols.append(a[:, None] if a.ndim == 1 else a)
    lengths = {c.shape[0] for c in cols}
    if len(lengths) != 1:
        raise ValueError(f"components have different sample sizes: {sorted(lengths)}")
    return Dataset(np.hstack(cols), ComponentPartition.from_dims([c.shape[1] for c in cols], alpha))
