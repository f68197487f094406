"""Zassenhaus-based approximations to cos(X+Y) and sin(X+Y).

Two independent constructions are provided.  :func:`psi_recursive` runs
the real recursion that alternates multiplication by exp(+-C_{2k}) with
rotations by cos/sin(C_{2k+1}); :func:`psi_via_factored_z` builds the two
complex chains

    z1 = e^{iX} e^{iY} e^{i^2 C_2} ... e^{i^n C_n}
    z2 = e^{-iX} e^{-iY} e^{(-i)^2 C_2} ... e^{(-i)^n C_n}

and takes (z1 + z2)/2 and (z1 - z2)/2i.  For real inputs the two agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .matrix import check_pair, commutator, mat_cos_sin, mat_exp


@dataclass(frozen=True)
class TrigApproximation:
    order: int
    psi_c: np.ndarray
    psi_s: np.ndarray
    c_terms_used: tuple


@dataclass(frozen=True)
class FactorChain:
    z1: np.ndarray
    z2: np.ndarray
    order: int


def _ad(a, b, power):
    for _ in range(power):
        b = commutator(a, b)
    return b


def numeric_c_terms(x, y, n_max: int) -> list[np.ndarray]:
    """[C_2(x,y), ..., C_{n_max}(x,y)] via the f_{n,k} recursion on matrices."""
    x, y = check_pair(x, y)
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    f: dict[tuple[int, int], np.ndarray] = {}

    # ad_x^j y for j = 1..n_max-1, shared by every f_{1,k}
    ad_x = [y]
    for _ in range(1, n_max):
        ad_x.append(commutator(x, ad_x[-1]))

    def f1(k):
        if (1, k) not in f:
            total = np.zeros_like(x)
            for j in range(1, k + 1):
                total += ((-1) ** k / (factorial(j) * factorial(k - j))) * _ad(y, ad_x[j], k - j)
            f[(1, k)] = total
        return f[(1, k)]

    c = {2: 0.5 * f1(1)}

    def fn(n, k):
        if n == 1:
            return f1(k)
        if (n, k) not in f:
            total = np.zeros_like(x)
            for j in range(k // n):
                total += ((-1) ** j / factorial(j)) * _ad(c[n], fn(n - 1, k - n * j), j)
            f[(n, k)] = total
        return f[(n, k)]

    for n in range(3, n_max + 1):
        c[n] = fn((n - 1) // 2, n - 1) / n
    return [c[n] for n in range(2, n_max + 1)]


def _c_terms(x, y, n, c_terms):
    if n < 2:
        return []
    if c_terms is None:
        return numeric_c_terms(x, y, n)
    if len(c_terms) < n - 1:
        raise ValueError(f"need {n - 1} C-terms, got {len(c_terms)}")
    return list(c_terms[:n - 1])


def zassenhaus_truncated_product(x, y, n: int, c_terms=None) -> np.ndarray:
    """e^x e^y e^{C_2} ... e^{C_n}; for n = 1 just e^x e^y."""
    x, y = check_pair(x, y)
    if n < 1:
        raise ValueError("n must be >= 1")
    out = mat_exp(x) @ mat_exp(y)
    for cm in _c_terms(x, y, n, c_terms):
        out = out @ mat_exp(cm)
    return out


def psi_sequence(x, y, n_max: int, c_terms=None) -> list[TrigApproximation]:
    """Every iterate Psi_1, ..., Psi_{n_max} of the real recursion."""
    x, y = check_pair(x, y)
    if n_max < 1:
        raise ValueError("n must be >= 1")
    cs = _c_terms(x, y, n_max, c_terms)
    cx, sx = mat_cos_sin(x)
    cy, sy = mat_cos_sin(y)
    pc = cx @ cy - sx @ sy
    ps = cx @ sy + sx @ cy
    out = [TrigApproximation(1, pc, ps, ())]
    for m in range(2, n_max + 1):
        cm = cs[m - 2]
        k = m // 2
        sign = -1.0 if k % 2 else 1.0
        if m % 2 == 0:
            e = mat_exp(sign * cm)
            pc, ps = pc @ e, ps @ e
        else:
            ccos, csin = mat_cos_sin(cm)
            pc, ps = pc @ ccos - sign * (ps @ csin), ps @ ccos + sign * (pc @ csin)
        out.append(TrigApproximation(m, pc, ps, tuple(cs[:m - 1])))
    return out


def psi_recursive(x, y, n: int, c_terms=None) -> TrigApproximation:
    """Psi_n^[C] ~ cos(x+y) and Psi_n^[S] ~ sin(x+y) by the real recursion.

    Psi_1 uses the product formulas cos x cos y - sin x sin y and
    cos x sin y + sin x cos y directly, so complex inputs are accepted too.
    """
    return psi_sequence(x, y, n, c_terms)[-1]


def factor_chain(x, y, n: int, c_terms=None) -> FactorChain:
    x, y = check_pair(x, y)
    if n < 1:
        raise ValueError("n must be >= 1")
    z1 = mat_exp(1j * x) @ mat_exp(1j * y)
    z2 = mat_exp(-1j * x) @ mat_exp(-1j * y)
    for m, cm in enumerate(_c_terms(x, y, n, c_terms), start=2):
        z1 = z1 @ mat_exp((1j) ** m * cm)
        z2 = z2 @ mat_exp((-1j) ** m * cm)
    return FactorChain(z1, z2, n)


def psi_via_factored_z(x, y, n: int, c_terms=None) -> TrigApproximation:
    x, y = check_pair(x, y)
    cs = tuple(_c_terms(x, y, n, c_terms))
    ch = factor_chain(x, y, n, cs)
    return TrigApproximation(n, (ch.z1 + ch.z2) / 2, (ch.z1 - ch.z2) / 2j, cs)


def left_oriented_psi(x, y, n: int, c_terms=None) -> TrigApproximation:
    """Same as :func:`psi_via_factored_z` but from the mirrored product
    ... e^{Cbar_3} e^{Cbar_2} e^{Y} e^{X}, Cbar_m = (-1)^(m+1) C_m."""
    x, y = check_pair(x, y)
    if n < 1:
        raise ValueError("n must be >= 1")
    cs = tuple(_c_terms(x, y, n, c_terms))
    z1 = mat_exp(1j * y) @ mat_exp(1j * x)
    z2 = mat_exp(-1j * y) @ mat_exp(-1j * x)
    for m, cm in enumerate(cs, start=2):
        cbar = cm if m % 2 else -cm
        z1 = mat_exp((1j) ** m * cbar) @ z1
        z2 = mat_exp((-1j) ** m * cbar) @ z2
    return TrigApproximation(n, (z1 + z2) / 2, (z1 - z2) / 2j, cs)


IDENTITIES = ("cos_diff", "sin_sum")


def generalized_identity_eval(x, y, n: int, which: str) -> np.ndarray:
    """Order-n expansion of cos(x-y) - cos(x+y) or sin(x-y) + sin(x+y)."""
    x, y = check_pair(x, y)
    if which not in IDENTITIES:
        raise ValueError(f"which must be one of {IDENTITIES}, got {which!r}")
    minus = psi_recursive(x, -y, n)
    plus = psi_recursive(x, y, n)
    if which == "cos_diff":
        return minus.psi_c - plus.psi_c
    return minus.psi_s + plus.psi_s


def _order2_cos(x, y):
    cx, sx = mat_cos_sin(x)
    cy, sy = mat_cos_sin(y)
    return (cx @ cy - sx @ sy) @ mat_exp(0.5 * (x @ y - y @ x))


def symmetrized_cos(x, y) -> np.ndarray:
    """Average of the order-2 cosine expansion over both argument orders."""
    x, y = check_pair(x, y)
    return 0.5 * (_order2_cos(x, y) + _order2_cos(y, x))
