"""Seeding scheme shared by every stochastic routine in the package.

All random streams are ``numpy.random.Generator`` objects backed by the
counter-based ``Philox`` bit generator.  A stream is identified by the
caller's master seed plus a spawn key ``(domain, *indices)``, so replicate
``r`` or column ``k`` always gets the same draws no matter in which order
(or on which worker) it is evaluated.
"""

import numpy as np

# Stream domains.  Values are part of the reproducibility contract.
TRANSFORM = 1
PERMUTATION = 2
REPLICATE = 3
COPULA_SAMPLE = 4


def stream(seed, domain, *indices):
    """Return the generator for ``(seed, domain, *indices)``."""
    if seed is None:
        raise ValueError("an explicit integer seed is required")
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    key = (int(domain),) + tuple(int(i) for i in indices)
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed, domain, *indices):
    """Derive a child integer seed (64 bit) from a master seed."""
    return int(stream(seed, domain, *indices).integers(0, 2**63, dtype=np.int64))
