"""Norm bounds on the Zassenhaus exponents and a convergence heuristic.

The recurrences themselves run in a compiled kernel when the Cython
extension is built, and in :mod:`zastrig._kernels_py` otherwise.  The
choice is made once, at import; ``BACKEND`` names the one in use.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_kernel = _compiled if _compiled is not None else _kernels_py
BACKEND = "cython" if _compiled is not None else "python"


class Verdict(str, Enum):
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BoundTable:
    """Bounds ||f_{n,k}|| <= d_{n,k} and ||C_n|| <= delta_n at norms (x, y).

    Stored as logarithms; ``-inf`` marks an exact zero.
    """

    x: float
    y: float
    n_max: int
    log_d: np.ndarray = field(repr=False)
    log_delta: np.ndarray = field(repr=False)

    @property
    def delta(self) -> np.ndarray:
        """delta_2 ... delta_{n_max} (index 0 is delta_2)."""
        return np.exp(self.log_delta[2:])

    def d(self, n: int, k: int) -> float:
        if not (1 <= n < self.log_d.shape[0] and n <= k < self.n_max):
            raise KeyError((n, k))
        return math.exp(self.log_d[n, k])

    def delta_n(self, n: int) -> float:
        if not 2 <= n <= self.n_max:
            raise KeyError(n)
        return math.exp(self.log_delta[n])


def bound_tables(x: float, y: float, n_max: int, kernel=None) -> BoundTable:
    """Compute d_{n,k} and delta_n for ``||X|| = x``, ``||Y|| = y``."""
    if x < 0 or y < 0:
        raise ValueError("norms must be non-negative")
    kern = _kernel if kernel is None else kernel
    log_d, log_delta = kern.log_bound_table(float(x), float(y), int(n_max))
    return BoundTable(float(x), float(y), int(n_max), log_d, log_delta)


def tail_rate(t: BoundTable, window: int = 10) -> float:
    """Extrapolated growth factor lim delta_{n+1}/delta_n of the bound sequence.

    The geometric-mean ratio over a window ending at order m drifts like
    rho + a/m, so two windows (ending at n_max and about n_max/2) are
    combined by Richardson extrapolation.  Returns 0.0 when the tail is
    identically zero.
    """
    ld = t.log_delta
    m1 = t.n_max
    m2 = m1 // 2
    if (m1 - m2) % 2:
        m2 -= 1
    if m2 - window < 2:
        raise ValueError(f"n_max={t.n_max} too small for a window of {window}")
    if np.isneginf(ld[m1 - window:m1 + 1]).any():
        return 0.0
    r1 = math.exp((ld[m1] - ld[m1 - window]) / window)
    r2 = math.exp((ld[m2] - ld[m2 - window]) / window)
    return (m1 * r1 - m2 * r2) / (m1 - m2)


def series_convergence_verdict(t: BoundTable, window: int = 10,
                               tol: float = 0.005) -> Verdict:
    """Root-test style verdict on sum_n delta_n.

    Convergent when the extrapolated ratio is below ``1 - tol``, divergent
    above ``1 + tol``, inconclusive in between.
    """
    if t.n_max < 30:
        raise ValueError("series_convergence_verdict needs n_max >= 30")
    rate = tail_rate(t, window)
    if rate < 1.0 - tol:
        return Verdict.CONVERGENT
    if rate > 1.0 + tol:
        return Verdict.DIVERGENT
    return Verdict.INCONCLUSIVE


def _cell(args):
    x, y, n_max = args
    return series_convergence_verdict(bound_tables(x, y, n_max))


@dataclass(frozen=True)
class RegionScan:
    xs: np.ndarray
    ys: np.ndarray
    n_max: int
    verdicts: tuple  # row-major: verdicts[i * len(ys) + j] is (xs[i], ys[j])

    def rows(self):
        ny = len(self.ys)
        for i, x in enumerate(self.xs):
            for j, y in enumerate(self.ys):
                yield float(x), float(y), self.verdicts[i * ny + j]

    def verdict_at(self, i: int, j: int) -> Verdict:
        return self.verdicts[i * len(self.ys) + j]

    def to_csv(self) -> str:
        lines = ["x,y,verdict"]
        lines += [f"{x!r},{y!r},{v.value}" for x, y, v in self.rows()]
        return "\n".join(lines) + "\n"

    def diagonal_threshold(self) -> float | None:
        """Largest x + y among convergent cells with i == j."""
        best = None
        for i in range(min(len(self.xs), len(self.ys))):
            if self.verdict_at(i, i) is Verdict.CONVERGENT:
                best = float(self.xs[i] + self.ys[i])
        return best


def region_scan(x_max: float, y_max: float, grid: int, n_max: int = 50,
                workers: int = 1) -> RegionScan:
    """Verdicts on the uniform ``grid x grid`` mesh over [0, x_max] x [0, y_max].

    Cells are independent, so ``workers > 1`` spreads them over processes;
    the result does not depend on scheduling.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    if x_max <= 0 or y_max <= 0:
        raise ValueError("x_max and y_max must be positive")
    xs = np.linspace(0.0, x_max, grid)
    ys = np.linspace(0.0, y_max, grid)
    cells = [(float(x), float(y), n_max) for x in xs for y in ys]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = tuple(pool.map(_cell, cells, chunksize=max(1, len(cells) // (4 * workers))))
    else:
        verdicts = tuple(_cell(c) for c in cells)
    return RegionScan(xs, ys, n_max, verdicts)
