"""Command-line interface: spectra, eigenvectors, oracle comparisons and identity suites.

Reports go to stdout as JSON (default) or CSV; logs go to stderr.  Exit code 0
means every check passed, 1 a numeric failure, 2 a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from dataclasses import asdict, replace
from typing import Optional, Sequence

import numpy as np

from .errors import JacobiSpecError, ParameterError
from .identities import SUITES, run_suite
from .models import MODEL_BUILDERS, build_model
from .spectral import (
    Eigenvalue,
    SpectralResult,
    ToleranceConfig,
    eigen_residual,
    eigenvector,
    find_real_eigenvalues,
    match_spectra,
    oracle_result,
)

log = logging.getLogger("jacobispec")

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def parse_params(text: Optional[str]) -> dict:
    """``"a=1,b=2.5"`` -> ``{"a": 1.0, "b": 2.5}``."""
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"parameter {key.strip()!r} has non-numeric value {val!r}") from None
    return out


def parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"window {text!r} must be two numbers lo,hi") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise UsageError(f"window {text!r} must be finite with lo < hi")
    return lo, hi


def _clean(obj):
    """Make a report JSON-safe: non-finite floats become null, complex becomes [re, im]."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def dumps_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        # float repr is the shortest round-trip form and locale independent
        return json.dumps(_clean(report), indent=2, sort_keys=False, allow_nan=False) + "\n"
    rows = _clean(report)["results"]
    buf = io.StringIO()
    if rows:
        keys: list = []
        for r in rows:
            keys += [k for k in r if k not in keys]
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else
                             ("" if v is None else v) for k, v in r.items()})
    return buf.getvalue()


def result_from_report(report: dict) -> SpectralResult:
    """Rebuild the SpectralResult carried by a ``spectrum`` report."""
    eigs, poles = [], []
    for r in report["results"]:
        if r.get("kind") == "pole":
            poles.append(r["z"])
        else:
            eigs.append(Eigenvalue.from_dict(r))
    return SpectralResult(eigs, report.get("method", "char_zero"), dict(report["params"]),
                          list(report["errors"]), poles)


def _tolerances(args) -> ToleranceConfig:
    cfg = ToleranceConfig()
    env = os.environ.get("JS_TOL")
    updates: dict = {}
    if env:
        try:
            updates["work_tol"] = float(env)
        except ValueError:
            raise UsageError(f"JS_TOL={env!r} is not a number") from None
    for name in ("work_tol", "root_tol", "scan_points", "truncation_N", "accumulation_margin"):
        val = getattr(args, name, None)
        if val is not None:
            updates[name] = val
    try:
        return replace(cfg, **updates)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _model(args):
    if args.model is None:
        raise UsageError("--model is required for this command")
    params = parse_params(args.params)
    try:
        return build_model(args.model, params), params
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _cmd_spectrum(args, cfg: ToleranceConfig) -> tuple[dict, int]:
    model, params = _model(args)
    lo, hi = parse_window(args.window)
    res = find_real_eigenvalues(model, lo, hi, cfg, residual_count=args.count)
    results = [dict(kind="eigenvalue", **e.to_dict()) for e in res.eigenvalues]
    results += [{"kind": "pole", "z": p, "bracket": None, "residual": None} for p in res.poles]
    errors = list(res.errors)
    for e in res.eigenvalues:
        if e.residual is not None and not e.residual <= args.residual_tol:
            errors.append({"z": e.z, "error": f"residual {e.residual!r} exceeds {args.residual_tol!r}"})
    report = {"params": res.params, "results": results, "errors": errors,
              "method": res.method}
    return report, EXIT_NUMERIC if errors else EXIT_OK


def _cmd_eigvec(args, cfg: ToleranceConfig) -> tuple[dict, int]:
    model, params = _model(args)
    if args.z is None:
        raise UsageError("eigvec requires --z")
    count = cfg.truncation_N if args.count is None else args.count
    v = eigenvector(model, args.z, count, cfg)
    first = model.first_index(count)
    res = eigen_residual(model, args.z, v)
    results = [{"k": first + i, "re": float(c.real), "im": float(c.imag)} for i, c in enumerate(v)]
    errors = []
    if not res <= args.residual_tol:
        errors.append({"z": args.z, "error": f"residual {res!r} exceeds {args.residual_tol!r}"})
    report = {"params": dict(params, z=args.z), "results": results, "errors": errors,
              "residual": res}
    return report, EXIT_NUMERIC if errors else EXIT_OK


def _cmd_verify(args, cfg: ToleranceConfig) -> tuple[dict, int]:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))} or all")
    records = run_suite(args.suite, seed=args.seed)
    results = [r.to_dict() for r in records]
    errors = [{"check": r.name, "error": f"max error {r.max_error!r} exceeds {r.tol!r}"}
              for r in records if not r.passed]
    report = {"params": {"suite": args.suite, "seed": args.seed}, "results": results,
              "errors": errors}
    return report, EXIT_NUMERIC if errors else EXIT_OK


def _cmd_oracle(args, cfg: ToleranceConfig) -> tuple[dict, int]:
    model, params = _model(args)
    lo, hi = parse_window(args.window)
    N = args.N if args.N is not None else cfg.truncation_N
    chars = find_real_eigenvalues(model, lo, hi, cfg, with_residuals=False)
    orc = oracle_result(model, N, lo, hi, cfg)
    pairs, only_char, only_oracle = match_spectra(chars.values(), orc.values())
    rows = [{"char_zero": a, "oracle": b, "delta": abs(a - b)} for a, b in pairs]
    rows += [{"char_zero": a, "oracle": None, "delta": None} for a in only_char]
    rows += [{"char_zero": None, "oracle": b, "delta": None} for b in only_oracle]
    rows.sort(key=lambda r: r["char_zero"] if r["char_zero"] is not None else r["oracle"])
    errors = list(chars.errors)
    worst = max((r["delta"] for r in rows if r["delta"] is not None), default=0.0)
    if worst > args.compare_tol:
        errors.append({"error": f"max delta {worst!r} exceeds {args.compare_tol!r}"})
    for r in rows:
        if r["delta"] is None:
            side = "oracle" if r["char_zero"] is None else "char_zero"
            errors.append({"z": r[side], "error": f"unmatched {side} eigenvalue"})
    report = {"params": dict(params, N=N), "results": rows, "errors": errors,
              "max_delta": worst}
    return report, EXIT_NUMERIC if errors else EXIT_OK


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "eigvec": _cmd_eigvec,
    "verify": _cmd_verify,
    "oracle-compare": _cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", choices=sorted(MODEL_BUILDERS))
    common.add_argument("--params", default="", help="comma separated key=value list")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--timing", action="store_true", help="record wall time in the report")
    common.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    common.add_argument("--work-tol", dest="work_tol", type=float)
    common.add_argument("--root-tol", dest="root_tol", type=float)
    common.add_argument("--scan-points", dest="scan_points", type=int)
    common.add_argument("--truncation-n", dest="truncation_N", type=int)
    common.add_argument("--accumulation-margin", dest="accumulation_margin", type=float)
    common.add_argument("--residual-tol", dest="residual_tol", type=float, default=1e-8)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="jacobispec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="real eigenvalues in a window")
    p.add_argument("--window", required=True)
    p.add_argument("--count", type=int, help="eigenvector window used for residuals")

    p = sub.add_parser("eigvec", parents=[common], help="eigenvector components at z")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--count", type=int)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("oracle-compare", parents=[common],
                       help="characteristic zeros against truncated-matrix eigenvalues")
    p.add_argument("--window", required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--compare-tol", dest="compare_tol", type=float, default=1e-8)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list:
    # argparse reads "--window -0.7,1.1" as two options; glue such values on
    out: list = []
    it = iter(argv)
    for tok in it:
        if tok in _NUMERIC_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and nxt[1:2].isdigit() or nxt[:2] == "-.":
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


_NUMERIC_FLAGS = {"--window", "--z"}


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    report: dict = {"command": args.command, "model": args.model, "params": {},
                    "tolerances": {}, "results": [], "errors": [], "wall_time_ms": None}
    try:
        cfg = _tolerances(args)
        report["tolerances"] = asdict(cfg)
        body, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JacobiSpecError, ArithmeticError, ValueError) as exc:
        log.error("%s failed: %s", args.command, exc)
        body = {"errors": [{"error": f"{type(exc).__name__}: {exc}"}]}
        code = EXIT_NUMERIC
    params = body.pop("params", None)
    if params is not None:
        report["params"] = params
    report.update(body)
    if args.timing:
        report["wall_time_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
    text = dumps_report(report, args.fmt)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    for err in report["errors"]:
        log.warning("%s", err.get("error"))
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
