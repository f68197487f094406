"""Pure-Python log-domain recurrences for the Zassenhaus norm bounds.

With x = ||X||, y = ||Y|| and ||[A, B]|| <= 2 ||A|| ||B||:

    d_{1,k} = sum_{j=1..k} 2^k / (j! (k-j)!) x^j y^(k-j+1)
    d_{m,k} = sum_{j=0..k//m-1} (2 delta_m)^j / j! d_{m-1,k-mj}
    delta_2 = d_{1,1} / 2,   delta_n = d_{(n-1)//2, n-1} / n

Everything is carried as logarithms (``-inf`` for exact zeros) so large
norms and high orders cannot overflow.
"""
import math

import numpy as np

NEG_INF = float("-inf")


def _logaddexp(a, b):
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a > b:
        return a + math.log1p(math.exp(b - a))
    return b + math.log1p(math.exp(a - b))


def _safe_log(v):
    return math.log(v) if v > 0.0 else NEG_INF


def log_bound_table(x, y, n_max):
    """Return ``(log_d, log_delta)``.

    ``log_d[m, k]`` is log d_{m,k} for 1 <= m <= (n_max-1)//2 and
    m <= k < n_max; ``log_delta[n]`` is log delta_n for 2 <= n <= n_max.
    Unused slots hold ``-inf``.
    """
    if x < 0.0 or y < 0.0:
        raise ValueError("norm arguments must be non-negative")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = max(1, (n_max - 1) // 2)
    log_d = [[NEG_INF] * n_max for _ in range(rows + 1)]
    log_delta = [NEG_INF] * (n_max + 1)
    lx, ly, log2 = _safe_log(x), _safe_log(y), math.log(2.0)

    for k in range(1, n_max):
        acc = NEG_INF
        if lx != NEG_INF:
            for j in range(1, k + 1):
                term = (k * log2 - math.lgamma(j + 1.0) - math.lgamma(k - j + 1.0)
                        + j * lx + (k - j + 1) * ly)
                acc = _logaddexp(acc, term)
        log_d[1][k] = acc
    log_delta[2] = log_d[1][1] - log2
    for n in range(3, min(4, n_max) + 1):
        log_delta[n] = log_d[1][n - 1] - math.log(n)

    for m in range(2, rows + 1):
        step = log2 + log_delta[m]
        prev, row = log_d[m - 1], log_d[m]
        for k in range(m, n_max):
            acc = prev[k]
            if step != NEG_INF:
                for j in range(1, k // m):
                    acc = _logaddexp(acc, j * step - math.lgamma(j + 1.0) + prev[k - m * j])
            row[k] = acc
        for n in range(2 * m + 1, min(2 * m + 2, n_max) + 1):
            log_delta[n] = row[n - 1] - math.log(n)

    return np.array(log_d), np.array(log_delta)
