"""Dense complex matrix functions used by every numeric path.

Matrices are plain ``numpy`` arrays of ``complex128``; :func:`as_matrix`
validates and converts.  cos and sin go through complex exponentials,
``cos a = (e^{ia} + e^{-ia}) / 2``, never through a dedicated cosine
algorithm.
"""
from __future__ import annotations

import math

import numpy as np

from .lie import LieExpr

_TAYLOR_DEGREE = 18
_SCALED_NORM = 0.5


class DimensionError(ValueError):
    pass


def as_matrix(a) -> np.ndarray:
    """Validated square complex128 copy of ``a``."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix has non-finite entries")
    return m


def check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x, y


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def mat_exp(a) -> np.ndarray:
    """exp(a) by scaling and squaring around a degree-18 Taylor polynomial.

    ``a`` is scaled by 2^-s until its 1-norm is at most 0.5; the Taylor
    remainder there is below 1e-22 relative, and s squarings undo the
    scaling.
    """
    a = as_matrix(a)
    norm = np.linalg.norm(a, 1)
    s = max(0, math.ceil(math.log2(norm / _SCALED_NORM))) if norm > 0 else 0
    scaled = a / 2.0 ** s
    eye = np.eye(a.shape[0], dtype=np.complex128)
    result = eye.copy()
    for k in range(_TAYLOR_DEGREE, 0, -1):
        result = eye + (scaled @ result) / k
    for _ in range(s):
        result = result @ result
    return result


def mat_cos_sin(a) -> tuple[np.ndarray, np.ndarray]:
    """(cos a, sin a) from e^{ia} and e^{-ia}."""
    a = as_matrix(a)
    ep = mat_exp(1j * a)
    em = mat_exp(-1j * a)
    return (ep + em) / 2, (ep - em) / 2j


def taylor_cos_sin(a, degree: int = 30) -> tuple[np.ndarray, np.ndarray]:
    """Truncated power series for cos and sin with Kahan-compensated sums.

    Independent of :func:`mat_exp`; used as a reference for moderate norms.
    """
    a = as_matrix(a)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    sums = [np.zeros_like(a), np.zeros_like(a)]
    comps = [np.zeros_like(a), np.zeros_like(a)]
    term = eye
    for k in range(degree + 1):
        if k:
            term = term @ a / k
        target = k % 2
        sign = -1.0 if (k // 2) % 2 else 1.0
        yk = sign * term - comps[target]
        t = sums[target] + yk
        comps[target] = (t - sums[target]) - yk
        sums[target] = t
    return sums[0], sums[1]


def eval_lie_expr(e: LieExpr, x, y) -> np.ndarray:
    """Substitute matrices for X and Y and evaluate the commutator trees."""
    x, y = check_pair(x, y)
    cache: dict = {"X": x, "Y": y}

    def value(t):
        if t not in cache:
            left, right = value(t[0]), value(t[1])
            cache[t] = left @ right - right @ left
        return cache[t]

    out = np.zeros_like(x)
    for t, c in e.items():
        out += float(c) * value(t)
    return out


def two_norm_est(a, rtol: float = 1e-10, max_iter: int = 1000) -> float:
    """Spectral norm by power iteration on a^H a.

    The start vector is built from the column sums of |a| so the estimate
    is reproducible for a given matrix.
    """
    a = as_matrix(a)
    if not a.any():
        return 0.0
    gram = a.conj().T @ a
    v = np.abs(a).sum(axis=0).astype(np.complex128) + 1.0
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = gram @ v
        new = float(np.real(np.vdot(v, w)))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(new - lam) <= rtol * abs(new):
            lam = new
            break
        lam = new
    return math.sqrt(max(lam, 0.0))


def spectral_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a), 2))

