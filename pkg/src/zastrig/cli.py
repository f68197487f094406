"""Command-line entry point: ``zastrig terms|approx|region|experiment``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from .bounds import region_scan
from .lie import left_zassenhaus_terms, render_term, zassenhaus_terms
from .matrix import mat_cos_sin, spectral_norm
from .trig import generalized_identity_eval, symmetrized_cos


def _matrix_doc(a) -> dict:
    return json.loads(ex.matrix_to_json(a))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_terms(args) -> int:
    terms = left_zassenhaus_terms(args.order) if args.left else zassenhaus_terms(args.order)
    name = "Cbar" if args.left else "C"
    if args.format == "json":
        doc = {"left": args.left,
               "terms": [{"n": n, "expr": str(c),
                          "coefficients": [[render_term(t), str(k)] for t, k in c.items()]}
                         for n, c in enumerate(terms, start=2)]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = [f"{name}_{n} = {c}" for n, c in enumerate(terms, start=2)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_approx(args) -> int:
    x = ex.parse_matrix_file(args.x)
    y = ex.parse_matrix_file(args.y)
    if x.shape != y.shape:
        raise ex.DimensionError(f"--x is {x.shape[0]}x{x.shape[1]} but --y is {y.shape[0]}x{y.shape[1]}")
    if args.identity:
        if args.identity == "sym_cos":
            value = symmetrized_cos(x, y)
            direct = mat_cos_sin(x + y)[0]
        else:
            value = generalized_identity_eval(x, y, args.order, args.identity)
            cm, sm = mat_cos_sin(x - y)
            cp, sp = mat_cos_sin(x + y)
            direct = cm - cp if args.identity == "cos_diff" else sm + sp
        matrices = {args.identity: value}
        errors = {args.identity: spectral_norm(value - direct)}
    else:
        rep = ex.approx_report(x, y, args.order, args.mode)
        matrices = {"psi_c": rep["psi_c"], "psi_s": rep["psi_s"]}
        errors = {"err_cos": rep["err_cos"], "err_sin": rep["err_sin"]}

    meta = {"order": args.order, "mode": args.mode, "identity": args.identity}
    if args.format == "csv":
        buf = io.StringIO()
        for k, v in {**meta, **errors}.items():
            buf.write(f"# {k}={v!r}\n" if isinstance(v, float) else f"# {k}={v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "row", "col", "real", "imag"])
        for name, m in matrices.items():
            for (i, j), v in np.ndenumerate(m):
                w.writerow([name, i, j, repr(float(v.real)), repr(float(v.imag))])
        _emit(buf.getvalue(), args.out)
    else:
        doc = {**meta, "errors": errors,
               "matrices": {k: _matrix_doc(v) for k, v in matrices.items()}}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_region(args) -> int:
    scan = region_scan(args.xmax, args.ymax, args.grid, args.nmax, workers=args.workers)
    if args.format == "json":
        doc = {"config": {"xmax": args.xmax, "ymax": args.ymax, "grid": args.grid, "nmax": args.nmax},
               "diagonal_threshold": scan.diagonal_threshold(),
               "cells": [{"x": x, "y": y, "verdict": v.value} for x, y, v in scan.rows()]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(scan.to_csv(), args.out)
    return 0


_RUNNERS = {"pauli": ex.run_pauli, "random": ex.run_random_error_decay,
            "frechet": ex.run_frechet}


def cmd_experiment(args) -> int:
    cfg = ex.ExperimentConfig(epsilon=args.epsilon, beta=args.beta, alpha=args.alpha,
                              t=args.t, dim=args.dim, seed=args.seed,
                              max_order=args.max_order)
    report = _RUNNERS[args.name](cfg)
    fmt = args.format or ("json" if args.name == "frechet" else "csv")
    text = ex.report_to_json(report) if fmt == "json" else ex.report_to_csv(report)
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zastrig",
                                description="Zassenhaus expansions of cos(X+Y) and sin(X+Y).")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("terms", help="print the exponents C_2..C_N")
    t.add_argument("--order", type=int, required=True)
    t.add_argument("--left", action="store_true", help="left-oriented exponents Cbar_n")
    t.add_argument("--format", choices=["text", "json"], default="text")
    t.add_argument("--out")
    t.set_defaults(func=cmd_terms)

    a = sub.add_parser("approx", help="evaluate Psi_n for matrices read from JSON files")
    a.add_argument("--x", required=True)
    a.add_argument("--y", required=True)
    a.add_argument("--order", type=int, required=True)
    a.add_argument("--mode", choices=["recursive", "factored", "left"], default="recursive")
    a.add_argument("--identity", choices=["cos_diff", "sin_sum", "sym_cos"])
    a.add_argument("--format", choices=["json", "csv"], default="json")
    a.add_argument("--out")
    a.set_defaults(func=cmd_approx)

    r = sub.add_parser("region", help="scan convergence verdicts of the norm-bound series")
    r.add_argument("--xmax", type=float, default=1.5)
    r.add_argument("--ymax", type=float, default=1.5)
    r.add_argument("--grid", type=int, default=50)
    r.add_argument("--nmax", type=int, default=50)
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--out")
    r.set_defaults(func=cmd_region)

    e = sub.add_parser("experiment", help="run one of the worked examples")
    e.add_argument("name", choices=sorted(_RUNNERS))
    d = ex.ExperimentConfig()
    e.add_argument("--epsilon", type=float, default=d.epsilon)
    e.add_argument("--beta", type=float, default=d.beta)
    e.add_argument("--alpha", type=float, default=d.alpha)
    e.add_argument("--t", type=float, default=d.t)
    e.add_argument("--dim", type=int, default=d.dim)
    e.add_argument("--seed", type=int, default=d.seed)
    e.add_argument("--max-order", type=int, default=d.max_order)
    e.add_argument("--format", choices=["json", "csv"])
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", 1) < 1:
        parser.error("--order must be positive")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"zastrig: error: {exc}", file=sys.stderr)
        return 1


dispatch = main


if __name__ == "__main__":
    sys.exit(main())
