"""Independent reference computations used to freeze expected values.

Nothing here imports hetseq: each oracle recomputes its quantity by a
different (slow, obvious) route.
"""

import math

import mpmath

_DPS = 60


def erf_series(x, dps=_DPS):
    """erf(x) from its Maclaurin series, summed until terms fall below 10**-(dps+5).

    At |x| <= 8 the largest term is about e**64 ~ 1e28, so 60 digits leave
    more than 30 correct digits after cancellation.
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        x2 = x * x
        term = x  # x^(2n+1) / n!  with sign
        total = mpmath.mpf(0)
        eps = mpmath.mpf(10) ** (-(dps + 5))
        n = 0
        while True:
            contrib = term / (2 * n + 1)
            total += contrib
            if n > 10 and abs(contrib) < eps:
                break
            n += 1
            term = -term * x2 / n
        return 2 / mpmath.sqrt(mpmath.pi) * total


def normal_cdf_oracle(x) -> float:
    with mpmath.workdps(_DPS):
        return float((1 + erf_series(mpmath.mpf(x) / mpmath.sqrt(2))) / 2)


def two_sided_p_oracle(t) -> float:
    with mpmath.workdps(_DPS):
        return float(1 - erf_series(abs(mpmath.mpf(t)) / mpmath.sqrt(2)))


def contrast_from_scratch(y, d, g):
    """Four-cell contrast recomputed with plain Python arithmetic."""
    def mean(vals):
        return math.fsum(vals) / len(vals)

    cell = {(a, b): [yi for yi, di, gi in zip(y, d, g) if gi == a and di == b]
            for a in (0, 1) for b in (0, 1)}
    return (mean(cell[1, 1]) - mean(cell[1, 0])) - (mean(cell[0, 1]) - mean(cell[0, 0]))


def jackknife_brute(y, d, g):
    """Delete-one jackknife SE, recomputing the contrast m times from scratch."""
    m = len(y)
    loo = []
    for i in range(m):
        keep = [j for j in range(m) if j != i]
        loo.append(contrast_from_scratch([y[j] for j in keep], [d[j] for j in keep], [g[j] for j in keep]))
    bar = math.fsum(loo) / m
    return math.sqrt((m - 1) / m * math.fsum((v - bar) ** 2 for v in loo))


def knn_mean_brute(query, points, values, k):
    """kNN mean via a full sort on (squared distance, index)."""
    out = []
    for q in query:
        dist = [(sum((qj - pj) ** 2 for qj, pj in zip(q, p)), i) for i, p in enumerate(points)]
        dist.sort()
        out.append(math.fsum(values[i] for _, i in dist[:k]) / k)
    return out


def binomial_upper_tail(n, p, k):
    """P(X >= k) for X ~ Binomial(n, p), exact in high precision."""
    with mpmath.workdps(50):
        return float(mpmath.fsum(mpmath.binomial(n, j) * mpmath.mpf(p) ** j * (1 - mpmath.mpf(p)) ** (n - j)
                                 for j in range(k, n + 1)))


def median_of(values):
    s = sorted(values)
    mid = len(s) // 2
    return s[mid] if len(s) % 2 else (s[mid - 1] + s[mid]) / 2
