"""Distributional transform and copula versions of the measures.

The Monte Carlo distributional transform maps each column ``x`` with its
own uniform draws ``u`` to

    T[j] = (#{k: x_k < x_j} + u_j * #{k: x_k == x_j}) / N

which is exactly uniform for continuous data and spreads ties of discrete
data uniformly over their probability mass.  Ties use exact floating point
equality.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import _rng
from .centering import EstimatorKind
from .kernels import Dataset
from .measures import MeasureVariant, aggregate, prepare, _check_cap, _result, MAX_TOTAL_COMPONENTS


@dataclass(frozen=True)
class TransformDraws:
    """Uniform draws of one transform invocation, fully determined by the seed."""

    seed: int
    u: np.ndarray


@dataclass(frozen=True)
class TransformedDataset:
    values: np.ndarray
    seed: int | None
    source_id: str
    partition: object = None

    def as_dataset(self):
        return Dataset(self.values, self.partition)


def transform_draws(seed, n_samples, n_columns, shared_draws=False):
    """Draw one uniform per sample element.

    Column ``k`` uses its own Philox stream ``(seed, TRANSFORM, k)``, so
    draws do not depend on how many columns are transformed together.
    With ``shared_draws`` every column reuses the draws of column 0.
    """
    cols = []
    for k in range(n_columns):
        key = 0 if shared_draws else k
        cols.append(_rng.stream(seed, _rng.TRANSFORM, key).random(n_samples))
    return TransformDraws(int(seed), np.column_stack(cols) if cols else np.empty((n_samples, 0)))


def population_transform(px_lt, px_eq, u):
    """``P(X < x) + u * P(X = x)``."""
    if px_lt < 0 or px_eq < 0 or px_lt + px_eq > 1 + 1e-15:
        raise ValueError("probabilities must be non-negative and sum to at most 1")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    return px_lt + u * px_eq


def mc_transform_column(x, u):
    """Sample distributional transform of one column.

    Parameters
    ----------
    x : (N,) array_like
    u : (N,) array_like
        Uniform draws, one per element.

    Returns
    -------
    (N,) ndarray with values in ``[0, 1]``
    """
    x = np.asarray(x, dtype=float).ravel()
    u = np.asarray(u, dtype=float).ravel()
    if x.shape != u.shape:
        raise ValueError("x and u must have the same length")
    if np.isnan(x).any():
        raise ValueError("x contains NaN")
    s = np.sort(x)
    less = np.searchsorted(s, x, side="left")
    equal = np.searchsorted(s, x, side="right") - less
    return (less + u * equal) / x.size


def _source_id(values):
    return hashlib.sha1(np.ascontiguousarray(values).tobytes()).hexdigest()[:16]


def transform_dataset(x, seed=None, *, draws=None, shared_draws=False):
    """Column-wise Monte Carlo distributional transform.

    Parameters
    ----------
    x : (N, D) array_like or Dataset
    seed : int
        Master seed of the draws.  Required unless ``draws`` is given.
    draws : TransformDraws or (N, D) ndarray, optional
        Explicit draws, e.g. ``1 - u`` for reflected columns.
    shared_draws : bool
        Reuse one draw vector for all columns.  This gives an upper bound
        style value for discrete data but does not characterize independence.
    """
    partition = None
    if isinstance(x, Dataset):
        partition = x.partition
        x = x.values
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.size == 0:
        raise ValueError("empty dataset")
    if draws is None:
        if seed is None:
            raise ValueError("a seed is required for the Monte Carlo transform")
        draws = transform_draws(seed, x.shape[0], x.shape[1], shared_draws)
    if isinstance(draws, TransformDraws):
        seed = draws.seed
        u = draws.u
    else:
        u = np.asarray(draws, dtype=float)
    if u.shape != x.shape:
        raise ValueError(f"draws have shape {u.shape}, data {x.shape}")
    out = np.column_stack([mc_transform_column(x[:, k], u[:, k]) for k in range(x.shape[1])])
    return TransformedDataset(out, None if seed is None else int(seed), _source_id(x), partition)


def cmcor(x, partition=None, estimator=EstimatorKind.BIAS_CORRECTED,
          variant=MeasureVariant.TOTAL, seed=None, *, shared_draws=False,
          max_components=MAX_TOTAL_COMPONENTS):
    """Copula version of a multicorrelation variant.

    The measure is evaluated on :func:`transform_dataset` output; the
    transform seed is recorded in ``result.seed``.
    """
    variant = MeasureVariant.parse(variant)
    if isinstance(x, Dataset) and partition is None:
        partition = x.partition
    t = transform_dataset(x, seed, shared_draws=shared_draws)
    prep = prepare(t.values, partition, estimator)
    if variant in (MeasureVariant.TOTAL, MeasureVariant.UNNORMALIZED):
        _check_cap(prep.n_components, max_components)
    squared = aggregate(prep.neg, prep.constants(variant), variant, prep.pref)
    return _result(variant, prep, squared, seed=t.seed)


def decreasing_transform_identity_check(x, u, g, atol=1e-12):
    """Check ``T(g(x), u) == 1 - T(x, 1 - u)`` elementwise for a map ``g``.

    Holds whenever ``g`` is strictly decreasing on the sample.
    """
    x = np.asarray(x, dtype=float).ravel()
    u = np.asarray(u, dtype=float).ravel()
    gx = np.asarray(g(x), dtype=float)
    lhs = mc_transform_column(gx, u)
    rhs = 1.0 - mc_transform_column(x, 1.0 - u)
    return bool(np.all(np.abs(lhs - rhs) <= atol))
