"""Independent brute-force implementations used as test oracles.

Everything here is deliberately written with plain Python loops and
``math`` scalar functions: no shared code paths with the package beyond
numpy array access.
"""

import math


def oracle_threshold(n, N, alpha):
    log_zeta = (
        math.log(4.0 * math.sqrt(math.pi))
        + math.lgamma((n + 1) / 2)
        - math.lgamma(n / 2)
        + math.log(math.log(1.0 / (1.0 - alpha / 2.0)))
        - 2.0 * math.log(N)
    ) / (n - 1)
    return math.exp(log_zeta)


def oracle_normalize(m):
    n, N = m.shape
    cols = []
    for j in range(N):
        col = [float(m[i, j]) for i in range(n)]
        norm = math.sqrt(math.fsum(v * v for v in col))
        cols.append([v / norm for v in col])
    return cols


def oracle_min_acute_scores(m):
    """Per-column minimum acute angle by exhaustive double loop."""
    cols = oracle_normalize(m)
    N = len(cols)
    scores = []
    for i in range(N):
        best = math.inf
        for j in range(N):
            if j == i:
                continue
            dot = math.fsum(a * b for a, b in zip(cols[i], cols[j]))
            best = min(best, math.acos(min(abs(dot), 1.0)))
        scores.append(best)
    return scores


def oracle_detect(m, alpha=0.05):
    """Full detection oracle: returns (scores, order, outliers, inliers)."""
    scores = oracle_min_acute_scores(m)
    N = len(scores)
    zeta = oracle_threshold(m.shape[0], N, alpha)
    order = sorted(range(N), key=lambda i: (-scores[i], i))
    cut = sum(1 for s in scores if s > zeta)
    return scores, order, sorted(order[:cut]), sorted(order[cut:])


def oracle_cop_scores(m, norm):
    cols = oracle_normalize(m)
    N = len(cols)
    scores = []
    for i in range(N):
        coherences = []
        for j in range(N):
            if j == i:
                continue
            coherences.append(math.fsum(a * b for a, b in zip(cols[i], cols[j])))
        if norm == "l1":
            scores.append(math.fsum(abs(c) for c in coherences))
        else:
            scores.append(math.sqrt(math.fsum(c * c for c in coherences)))
    return scores
