# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled log-domain recurrences for the Zassenhaus norm bounds.

Mirrors ``_kernels_py`` line for line; see that module for the maths.
"""
import numpy as np

from libc.math cimport INFINITY, exp, lgamma, log, log1p


cdef inline double _logaddexp(double a, double b) nogil:
    if a == -INFINITY:
        return b
    if b == -INFINITY:
        return a
    if a > b:
        return a + log1p(exp(b - a))
    return b + log1p(exp(a - b))


cdef inline double _safe_log(double v) nogil:
    return log(v) if v > 0.0 else -INFINITY


def log_bound_table(double x, double y, int n_max):
    if x < 0.0 or y < 0.0:
        raise ValueError("norm arguments must be non-negative")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    cdef int rows = max(1, (n_max - 1) // 2)
    log_d_arr = np.full((rows + 1, n_max), -np.inf)
    log_delta_arr = np.full(n_max + 1, -np.inf)
    cdef double[:, ::1] log_d = log_d_arr
    cdef double[::1] log_delta = log_delta_arr
    cdef double lx = _safe_log(x), ly = _safe_log(y), log2 = log(2.0)
    cdef double acc, term, step
    cdef int m, k, j, n

    with nogil:
        for k in range(1, n_max):
            acc = -INFINITY
            for j in range(1, k + 1):
                if lx == -INFINITY:
                    break
                term = (k * log2 - lgamma(j + 1.0) - lgamma(k - j + 1.0)
                        + j * lx + (k - j + 1) * ly)
                acc = _logaddexp(acc, term)
            log_d[1, k] = acc
        log_delta[2] = log_d[1, 1] - log2
        for n in range(3, min(4, n_max) + 1):
            log_delta[n] = log_d[1, n - 1] - log(<double>n)

        for m in range(2, rows + 1):
            step = log2 + log_delta[m]
            for k in range(m, n_max):
                acc = log_d[m - 1, k]
                if step != -INFINITY:
                    for j in range(1, k // m):
                        term = j * step - lgamma(j + 1.0) + log_d[m - 1, k - m * j]
                        acc = _logaddexp(acc, term)
                log_d[m, k] = acc
            for n in range(2 * m + 1, min(2 * m + 2, n_max) + 1):
                log_delta[n] = log_d[m, n - 1] - log(<double>n)

    return log_d_arr, log_delta_arr
