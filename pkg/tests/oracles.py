"""Naive loop implementations used as independent references in tests.

Everything here is written with plain Python loops over samples and
subsets; nothing is shared with the package beyond the input format.
"""

import itertools
import math


def rows(x):
    return [[float(v) for v in r] for r in x]


def dist(a, b, alpha):
    return math.sqrt(sum((p - q) ** 2 for p, q in zip(a, b))) ** alpha


def distance_matrix(x, alpha):
    x = rows(x)
    n = len(x)
    return [[dist(x[j], x[k], alpha) for k in range(n)] for j in range(n)]


def double_center(d):
    n = len(d)
    row = [sum(d[j]) / n for j in range(n)]
    col = [sum(d[j][k] for j in range(n)) / n for k in range(n)]
    grand = sum(row) / n
    return [[d[j][k] - row[j] - col[k] + grand for k in range(n)] for j in range(n)]


def u_center(d):
    n = len(d)
    total = sum(sum(r) for r in d)
    out = [[0.0] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            rj = sum(d[j][l] for l in range(n))
            ck = sum(d[l][k] for l in range(n))
            out[j][k] = d[j][k] - rj / (n - 2) - ck / (n - 2) + total / ((n - 1) * (n - 2))
    return out


def prefactor(n, biased):
    return 1.0 / n**2 if biased else 1.0 / (n * (n - 3))


def moment(a, m, biased, signed):
    """``pref * sum (-a)^m`` (signed) or ``pref * sum |a|^m``."""
    n = len(a)
    s = 0.0
    for j in range(n):
        for k in range(n):
            s += (-a[j][k]) ** m if signed else abs(a[j][k]) ** m
    return prefactor(n, biased) * s


def subset_term(mats, consts, biased):
    n = len(mats[0])
    s = 0.0
    for j in range(n):
        for k in range(n):
            p = 1.0
            for a, c in zip(mats, consts):
                p *= -a[j][k] / c
            s += p
    return prefactor(n, biased) * s


class Degenerate(Exception):
    pass


def measure(x, dims, variant, biased, alpha=1.0):
    """Squared value of ``variant`` for a sample split into components of ``dims``."""
    x = rows(x)
    cols, start = [], 0
    for d in dims:
        cols.append([r[start:start + d] for r in x])
        start += d
    dmats = [distance_matrix(c, alpha) for c in cols]
    amats = [double_center(d) if biased else u_center(d) for d in dmats]
    n = len(dims)

    def const(i, m):
        if variant == "multivariance":
            c = sum(sum(r) for r in dmats[i]) / len(x) ** 2
        elif variant == "unnormalized":
            mom = moment(amats[i], m, biased, signed=True)
            if mom <= 1e-12 * moment(amats[i], m, biased, signed=False):
                raise Degenerate
            c = mom ** (1.0 / m)
        else:
            order = {"total": m, "lower": n, "pairwise": 2, "upper": 2}[variant]
            c = moment(amats[i], order, biased, signed=False) ** (1.0 / order)
        if c <= 0:
            raise Degenerate
        return c

    orders = [2] if variant == "pairwise" else range(2, n + 1)
    total = 0.0
    for m in orders:
        for subset in itertools.combinations(range(n), m):
            total += subset_term([amats[i] for i in subset], [const(i, m) for i in subset], biased)
    if variant == "pairwise":
        return total / math.comb(n, 2)
    return total / (2**n - n - 1)


def transform_column(x, u):
    n = len(x)
    return [sum((x[k] < x[j]) + u[j] * (x[k] == x[j]) for k in range(n)) / n for j in range(n)]


def binomial_two_sided(k, c):
    probs = [math.comb(c, i) for i in range(c + 1)]
    ref = probs[k]
    num = sum(p for p in probs if p <= ref)
    return min(1.0, num / 2**c)


def holm(p):
    m = len(p)
    order = sorted(range(m), key=lambda i: p[i])
    out = [0.0] * m
    running = 0.0
    for rank, i in enumerate(order):
        running = max(running, min(1.0, (m - rank) * p[i]))
        out[i] = running
    return out
