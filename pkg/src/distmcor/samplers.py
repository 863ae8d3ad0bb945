"""Marginal quantile functions and Gaussian copula sampling."""

from __future__ import annotations

import enum

import numpy as np
from scipy.special import ndtr, ndtri

from . import _rng


class MarginalSpec(str, enum.Enum):
    NORM = "norm"
    UNIF = "unif"
    EXP = "exp"
    CHI = "chi"
    BERN = "bern"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower()
        aliases = {"chi_sq": "chi", "chisq": "chi", "normal": "norm", "uniform": "unif",
                   "bernoulli": "bern", "exponential": "exp"}
        try:
            return cls(aliases.get(value, value))
        except ValueError:
            raise ValueError(
                f"unsupported marginal {value!r}; choose from "
                + ", ".join(m.value for m in cls)
            ) from None


def normal_quantile(u):
    """Standard normal quantile function.

    Uses the Cephes rational approximation behind ``scipy.special.ndtri``
    (accurate to double precision).  Raises ``ValueError`` outside (0, 1).
    """
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise ValueError("normal quantile needs u in the open interval (0, 1)")
    out = ndtri(arr)
    return float(out) if out.ndim == 0 else out


def normal_cdf(x):
    out = ndtr(np.asarray(x, dtype=float))
    return float(out) if out.ndim == 0 else out


def marginal_quantile(spec, u):
    """Generalized inverse distribution function of a supported marginal.

    ``exp`` has rate 1, ``chi`` is chi-squared with 1 degree of freedom and
    ``bern`` is Bernoulli(0.5).  Uniforms on the closed boundary are only
    accepted where the quantile is finite.
    """
    spec = MarginalSpec.parse(spec)
    arr = np.asarray(u, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.isnan(arr).any():
        raise ValueError("u must lie in [0, 1]")
    if spec is MarginalSpec.UNIF:
        out = arr.copy()
    elif spec is MarginalSpec.BERN:
        out = (arr > 0.5).astype(float)
    elif spec is MarginalSpec.NORM:
        return normal_quantile(arr)
    elif spec is MarginalSpec.EXP:
        if np.any(arr >= 1.0):
            raise ValueError("exponential quantile needs u < 1")
        out = -np.log1p(-arr)
    else:
        if np.any(arr >= 1.0):
            raise ValueError("chi-squared quantile needs u < 1")
        out = ndtri((1.0 + arr) / 2.0) ** 2
    return float(out) if out.ndim == 0 else out


def correlation_matrix(rho, k=2):
    """Equicorrelation matrix of size ``k``."""
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [-1, 1], got {rho}")
    r = np.full((k, k), float(rho))
    np.fill_diagonal(r, 1.0)
    return r


def psd_cholesky(corr, tol=1e-10):
    """Lower triangular ``L`` with ``L @ L.T == corr`` for a PSD matrix.

    Zero pivots (singular matrices such as ``rho = 1``) are allowed and
    give zero columns.
    """
    r = np.asarray(corr, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("correlation matrix must be square")
    if not np.allclose(r, r.T, atol=1e-12):
        raise ValueError("correlation matrix must be symmetric")
    if not np.allclose(np.diag(r), 1.0, atol=1e-12):
        raise ValueError("correlation matrix must have unit diagonal")
    try:
        return np.linalg.cholesky(r)
    except np.linalg.LinAlgError:
        pass
    k = r.shape[0]
    low = np.zeros_like(r)
    for j in range(k):
        piv = r[j, j] - low[j, :j] @ low[j, :j]
        if piv < -tol:
            raise ValueError("correlation matrix is not positive semidefinite")
        if piv <= tol:
            resid = r[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]
            if np.any(np.abs(resid) > 1e-8):
                raise ValueError("correlation matrix is not positive semidefinite")
            continue
        low[j, j] = np.sqrt(piv)
        low[j + 1:, j] = (r[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / low[j, j]
    return low


def sample_gaussian(corr, n_samples, seed):
    """``N x k`` standard normal sample with the given correlation matrix."""
    corr = correlation_matrix(corr) if np.ndim(corr) == 0 else np.asarray(corr, dtype=float)
    low = psd_cholesky(corr)
    z = _rng.stream(seed, _rng.COPULA_SAMPLE).standard_normal((int(n_samples), corr.shape[0]))
    return z @ low.T


def sample_gaussian_copula(corr, n_samples, seed):
    """``N x k`` uniform sample from the Gaussian copula.

    Parameters
    ----------
    corr : float or (k, k) array_like
        A scalar ``rho`` gives the bivariate copula with correlation ``rho``.
    n_samples : int
    seed : int
    """
    return ndtr(sample_gaussian(corr, n_samples, seed))
