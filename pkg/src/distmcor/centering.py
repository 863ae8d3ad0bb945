"""Double centering (biased) and U-centering (bias corrected)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .kernels import DistanceMatrix, KernelSpec


class EstimatorKind(str, enum.Enum):
    BIASED = "biased"
    BIAS_CORRECTED = "bias_corrected"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_").lower())


@dataclass(frozen=True)
class CenteredMatrix:
    """An ``N x N`` centered distance matrix tagged with its estimator kind."""

    entries: np.ndarray
    kind: EstimatorKind
    source_kernel: KernelSpec

    @property
    def n_samples(self):
        return self.entries.shape[0]


def _entries(d):
    if isinstance(d, DistanceMatrix):
        return d.entries, d.kernel
    a = np.asarray(d, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a, KernelSpec()


def double_center(d):
    """Return ``C D C`` with ``C = I - 11^T/N``.

    Computed from row, column and grand means.  Every row and column of
    the result sums to zero; the diagonal is kept.

    Parameters
    ----------
    d : DistanceMatrix or (N, N) array_like

    Returns
    -------
    CenteredMatrix
    """
    a, kernel = _entries(d)
    if a.shape[0] < 2:
        raise ValueError("double centering needs N >= 2")
    row = a.mean(axis=1, keepdims=True)
    col = a.mean(axis=0, keepdims=True)
    out = a - row - col + a.mean()
    return CenteredMatrix(out, EstimatorKind.BIASED, kernel)


def u_center(d):
    """U-centered matrix used by the bias-corrected estimators.

    Off-diagonal entries are ``D_jk - r_k/(N-2) - r_j/(N-2) + t/((N-1)(N-2))``
    with ``r`` the row sums and ``t`` the total sum of ``D``; the diagonal is 0.

    Raises
    ------
    ValueError
        If ``N <= 3``.
    """
    a, kernel = _entries(d)
    n = a.shape[0]
    if n <= 3:
        raise ValueError("bias correction requires more than 3 samples")
    row = a.sum(axis=1, keepdims=True)
    col = a.sum(axis=0, keepdims=True)
    out = a - row / (n - 2) - col / (n - 2) + a.sum() / ((n - 1) * (n - 2))
    np.fill_diagonal(out, 0.0)
    return CenteredMatrix(out, EstimatorKind.BIAS_CORRECTED, kernel)


def center(d, kind):
    """Dispatch to :func:`double_center` or :func:`u_center`."""
    kind = EstimatorKind.parse(kind)
    if kind is EstimatorKind.BIASED:
        return double_center(d)
    return u_center(d)


def prefactor(n, kind):
    """Normalization of the double sum: ``1/N**2`` or ``1/(N(N-3))``."""
    if EstimatorKind.parse(kind) is EstimatorKind.BIASED:
        return 1.0 / (n * n)
    return 1.0 / (n * (n - 3))
