"""Matrix file I/O and the three worked experiments (Pauli, random, Frechet)."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .matrix import (DimensionError, as_matrix, commutator, mat_cos_sin,
                     mat_exp, spectral_norm, taylor_cos_sin, two_norm_est)
from .trig import (left_oriented_psi, psi_recursive, psi_sequence,
                   psi_via_factored_z)

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
I_SIGMA2 = 1j * SIGMA2

PAULI_CHECK_ORDER = 8
FRECHET_TOL = 1e-10


class MatrixFileError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    epsilon: float = 0.1
    beta: float = 1.0
    alpha: float = 1.0
    t: float = 1.0
    dim: int = 10
    seed: int = 42
    max_order: int = 12

    @property
    def lam(self) -> float:
        return math.sqrt(1.0 + self.beta ** 2)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = self.lam
        return d


# -- matrix files -----------------------------------------------------------

def _grid(obj, name, rows, cols, path):
    if not isinstance(obj, list) or len(obj) != rows or any(
            not isinstance(r, list) or len(r) != cols for r in obj):
        raise MatrixFileError(f"{path}: field {name!r} must be a {rows}x{cols} array")
    try:
        arr = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"{path}: field {name!r} has non-numeric entries") from exc
    if not np.isfinite(arr).all():
        raise MatrixFileError(f"{path}: field {name!r} has non-finite entries")
    return arr


def parse_matrix_text(text: str, source: str = "<string>", square: bool = True) -> np.ndarray:
    """Parse ``{"rows", "cols", "real", ["imag"]}`` JSON into a complex array."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(
            f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise MatrixFileError(f"{source}: top level must be a JSON object")
    for key in ("rows", "cols", "real"):
        if key not in doc:
            raise MatrixFileError(f"{source}: missing required field {key!r}")
    rows, cols = doc["rows"], doc["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise MatrixFileError(f"{source}: 'rows' and 'cols' must be positive integers")
    m = _grid(doc["real"], "real", rows, cols, source).astype(np.complex128)
    if doc.get("imag") is not None:
        m = m + 1j * _grid(doc["imag"], "imag", rows, cols, source)
    if square and rows != cols:
        raise DimensionError(f"{source}: matrix is {rows}x{cols}, a square matrix is required")
    return m


def parse_matrix_file(path, square: bool = True) -> np.ndarray:
    path = Path(path)
    return parse_matrix_text(path.read_text(encoding="utf-8"), str(path), square)


def matrix_to_json(a) -> str:
    a = np.asarray(a, dtype=np.complex128)
    doc = {"rows": a.shape[0], "cols": a.shape[1], "real": a.real.tolist()}
    if np.any(a.imag):
        doc["imag"] = a.imag.tolist()
    return json.dumps(doc)


def write_matrix_file(path, a) -> None:
    Path(path).write_text(matrix_to_json(a) + "\n", encoding="utf-8")


# -- Example 1: Pauli matrices ----------------------------------------------

def pauli_decomposition(psi_c, psi_s):
    """Coefficients of psi_c = fc I + gc (i sigma_2), psi_s = fs sigma_1 + gs sigma_3."""
    fc = np.trace(psi_c).real / 2
    gc = np.trace(I_SIGMA2.conj().T @ psi_c).real / 2
    fs = np.trace(SIGMA1 @ psi_s).real / 2
    gs = np.trace(SIGMA3 @ psi_s).real / 2
    res_c = spectral_norm(psi_c - (fc * np.eye(2) + gc * I_SIGMA2))
    res_s = spectral_norm(psi_s - (fs * SIGMA1 + gs * SIGMA3))
    return fc, gc, fs, gs, res_c, res_s


def pauli_exact(epsilon: float, beta: float):
    """cos(eps(s1 + beta s3)) = cos(eps lam) I, sin(...) = sin(eps lam)/lam (s1 + beta s3)."""
    lam = math.sqrt(1 + beta ** 2)
    return (math.cos(epsilon * lam) * np.eye(2, dtype=np.complex128),
            math.sin(epsilon * lam) / lam * (SIGMA1 + beta * SIGMA3))


def pauli_rows(epsilon: float, beta: float, max_order: int) -> list[dict]:
    x, y = epsilon * SIGMA1, epsilon * beta * SIGMA3
    ref_c, ref_s = pauli_exact(epsilon, beta)
    rows = []
    for ap in psi_sequence(x, y, max_order):
        fc, gc, fs, gs, res_c, res_s = pauli_decomposition(ap.psi_c, ap.psi_s)
        rows.append({
            "n": ap.order, "fc": fc, "gc": gc, "fs": fs, "gs": gs,
            "err_cos": spectral_norm(ap.psi_c - ref_c),
            "err_sin": spectral_norm(ap.psi_s - ref_s),
            "residual_c": res_c, "residual_s": res_s,
        })
    return rows


def run_pauli(cfg: ExperimentConfig) -> dict:
    """X = eps sigma_1, Y = eps beta sigma_3, orders 1..max_order."""
    if cfg.max_order < 2:
        raise ValueError("max_order must be >= 2")
    if cfg.epsilon <= 0:
        raise ValueError("epsilon must be positive")
    rows = pauli_rows(cfg.epsilon, cfg.beta, cfg.max_order)
    n_check = min(PAULI_CHECK_ORDER, cfg.max_order)
    err = rows[n_check - 1]["err_cos"]
    err_half = pauli_rows(cfg.epsilon / 2, cfg.beta, n_check)[-1]["err_cos"]
    ratio = err / err_half if err_half > 0 else math.inf
    return {
        "experiment": "pauli",
        "config": cfg.as_dict(),
        "rows": rows,
        "order_check": {
            "n": n_check, "epsilon": cfg.epsilon, "epsilon_half": cfg.epsilon / 2,
            "err_cos": err, "err_cos_half": err_half, "ratio": ratio,
            "log2_ratio": math.log2(ratio) if 0 < ratio < math.inf else None,
        },
    }


# -- Example 2: random matrices ---------------------------------------------

def random_pair(dim: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Two dim x dim uniform(0,1) matrices scaled to unit spectral norm.

    Uses numpy's PCG64 stream, which is fixed across platforms for a seed.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.random((dim, dim))
    b = rng.random((dim, dim))
    return a / two_norm_est(a), b / two_norm_est(b)


def loglinear_fit(ns, values) -> dict:
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    slope, intercept = np.polyfit(ns, values, 1)
    fitted = slope * ns + intercept
    ss_res = float(np.sum((values - fitted) ** 2))
    ss_tot = float(np.sum((values - values.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2}


def run_random_error_decay(cfg: ExperimentConfig) -> dict:
    if cfg.dim < 2:
        raise ValueError("dim must be >= 2")
    if cfg.max_order < 2:
        raise ValueError("max_order must be >= 2")
    a, b = random_pair(cfg.dim, cfg.seed)
    ref_c, ref_s = mat_cos_sin(a + b)
    tay_c, tay_s = taylor_cos_sin(a + b)
    rows = []
    for ap in psi_sequence(a, b, cfg.max_order):
        rows.append({
            "n": ap.order,
            "log10_err_cos": math.log10(spectral_norm(ap.psi_c - ref_c)),
            "log10_err_sin": math.log10(spectral_norm(ap.psi_s - ref_s)),
        })
    ns = [r["n"] for r in rows]
    return {
        "experiment": "random",
        "config": cfg.as_dict(),
        "norms": {"a": spectral_norm(a), "b": spectral_norm(b)},
        "reference_taylor_residual": max(spectral_norm(ref_c - tay_c),
                                         spectral_norm(ref_s - tay_s)),
        "rows": rows,
        "fit_cos": loglinear_fit(ns, [r["log10_err_cos"] for r in rows]),
        "fit_sin": loglinear_fit(ns, [r["log10_err_sin"] for r in rows]),
    }


# -- Frechet pair -----------------------------------------------------------

def frechet_pair(alpha: float) -> tuple[np.ndarray, np.ndarray]:
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    r6 = math.sqrt(6.0)
    a = math.pi * np.array([[0.0, alpha], [-1.0 / alpha, 0.0]])
    b = math.pi * np.array([[0.0, (10 + 4 * r6) * alpha], [(-10 + 4 * r6) / alpha, 0.0]])
    return a.astype(np.complex128), b.astype(np.complex128)


def addition_residuals(a, b, t: float) -> tuple[float, float]:
    """Residuals of cos((a+b)t) = cos(at)cos(bt) - sin(at)sin(bt) and the sine twin."""
    ca, sa = mat_cos_sin(a * t)
    cb, sb = mat_cos_sin(b * t)
    cab, sab = mat_cos_sin((a + b) * t)
    return (spectral_norm(cab - (ca @ cb - sa @ sb)),
            spectral_norm(sab - (sa @ cb + ca @ sb)))


def run_frechet(cfg: ExperimentConfig) -> dict:
    a, b = frechet_pair(cfg.alpha)
    res_cos, res_sin = addition_residuals(a, b, cfg.t)
    exp_res = spectral_norm(mat_exp((a + b) * cfg.t) - mat_exp(a * cfg.t) @ mat_exp(b * cfg.t))
    holds = res_cos <= FRECHET_TOL and res_sin <= FRECHET_TOL
    return {
        "experiment": "frechet",
        "config": cfg.as_dict(),
        "commutator_norm": spectral_norm(commutator(a, b)),
        "residual_cos": res_cos,
        "residual_sin": res_sin,
        "residual_exp": exp_res,
        "tolerance": FRECHET_TOL,
        "verdict": "addition formulae hold" if holds else "addition formulae fail",
    }


# -- serialisation ----------------------------------------------------------

def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def report_to_csv(report: dict) -> str:
    """Config as leading ``# key=value`` lines, then a header and one row per order."""
    buf = io.StringIO()
    for k, v in report["config"].items():
        buf.write(f"# {k}={_fmt(v)}\n")
    for k, v in report.items():
        if k not in ("config", "rows", "experiment") and not isinstance(v, (dict, list)):
            buf.write(f"# {k}={_fmt(v)}\n")
        elif isinstance(v, dict) and k != "config":
            for kk, vv in v.items():
                buf.write(f"# {k}.{kk}={_fmt(vv)}\n")
    rows = report.get("rows", [])
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for r in rows:
            writer.writerow(_fmt(v) for v in r.values())
    return buf.getvalue()


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=True) + "\n"


def approx_report(x, y, order: int, mode: str = "recursive") -> dict:
    """Psi matrices from one of the three constructions plus errors vs direct cos/sin."""
    x, y = as_matrix(x), as_matrix(y)
    builders = {"recursive": psi_recursive, "factored": psi_via_factored_z,
                "left": left_oriented_psi}
    if mode not in builders:
        raise ValueError(f"unknown mode {mode!r}")
    ap = builders[mode](x, y, order)
    ref_c, ref_s = mat_cos_sin(x + y)
    return {
        "order": order, "mode": mode,
        "psi_c": ap.psi_c, "psi_s": ap.psi_s,
        "err_cos": spectral_norm(ap.psi_c - ref_c),
        "err_sin": spectral_norm(ap.psi_s - ref_s),
    }
