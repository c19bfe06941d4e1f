"""Command-line front end.

Subcommands: eval, verify, zeros, scan, norm.  Every run emits one
self-describing record (human table by default, ``--format json`` for the
machine-readable form) and optional CSV for the tabular commands.  Output
is deterministic: identical invocations produce byte-identical payloads
apart from the timing field.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 convergence failure in strict mode.  Global flags mirror the config
types and fall back to FRACSUM_* environment variables before built-in
defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import replace

from .core import SummationConfig, frac_power, power_fn, sum_log, fractional_sum_limit
from .errors import ConvergenceError, DomainError, FracsumError
from .operators import OperatorConfig
from .specfun import SpecFunConfig, hurwitz_zeta_with_error
from .spectrum import (
    eigen_residual,
    find_critical_zeros,
    half_shift_norm,
    scan_s_plane,
)
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

ZEROS_CSV_COLUMNS = (
    "index", "t", "residual", "bracket_lo", "bracket_hi",
    "lambda_re", "lambda_im", "lambda_is_real", "abs_zeta",
    "analytic_residual", "numeric_residual", "boundary_f0_abs", "boundary_fhalf_abs",
)
SCAN_CSV_COLUMNS = (
    "s_re", "s_im", "abs_zeta", "analytic_residual",
    "lambda_re", "lambda_im", "lambda_is_real", "flags",
)


def parse_complex(text: str) -> complex:
    """Parse the CLI complex format: ``a``, ``a+bi``, ``a-bi`` (no spaces)."""
    t = text.strip()
    if not t:
        raise DomainError("empty complex literal")
    if not t.endswith("i"):
        try:
            return complex(float(t), 0.0)
        except ValueError as exc:
            raise DomainError(f"cannot parse {text!r} as a number") from exc
    body = t[:-1]
    # split at the last sign that is not an exponent sign and not leading
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            re_part, im_part = body[:k], body[k:]
            break
    else:
        re_part, im_part = "0", body or "1"
    if im_part in ("+", "-"):
        im_part += "1"
    try:
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise DomainError(f"cannot parse {text!r} as a complex number") from exc


def format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _num(x: float) -> str:
    # repr round-trips doubles exactly, which beats any fixed digit count
    return repr(float(x))


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _env(name: str, cast, fallback):
    raw = os.environ.get(f"FRACSUM_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise DomainError(f"bad value {raw!r} for FRACSUM_{name}")


def _env_bool(name: str, fallback: bool) -> bool:
    raw = os.environ.get(f"FRACSUM_{name}")
    if raw is None:
        return fallback
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise DomainError(f"bad value {raw!r} for FRACSUM_{name}")


def build_parser() -> argparse.ArgumentParser:
    # global flags are declared on a parent with SUPPRESS defaults so they
    # may appear before or after the subcommand without the subparser's
    # defaults clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"),
                        default=argparse.SUPPRESS,
                        help="output representation (default: table)")
    common.add_argument("--strict", action=argparse.BooleanOptionalAction,
                        default=argparse.SUPPRESS,
                        help="raise on non-converged limits (default: on)")
    common.add_argument("--abs-tol", type=float, default=argparse.SUPPRESS,
                        help="summation-limit tolerance (default: 1e-8)")
    common.add_argument("--n0", type=int, default=argparse.SUPPRESS,
                        help="base index of the summation schedule (default: 64)")
    common.add_argument("--diff-step", type=float, default=argparse.SUPPRESS,
                        help="finite-difference step for p (default: 1e-4)")
    common.add_argument("--em-terms", type=int, default=argparse.SUPPRESS,
                        help="explicit terms before the Euler-Maclaurin tail "
                             "(default: 50)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker cap for scans and zero searches (default: 1)")

    p = argparse.ArgumentParser(
        prog="fracsum",
        description="fractional sums, the operator R = Xp + pX, and "
                    "eigenvalue reality at critical-line zeta zeros",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a fractional sum", parents=[common])
    pe.add_argument("expr", choices=("fracpow", "sumlog", "sigma"),
                    help="fracpow: closed form x^[-s]; sumlog: log Gamma(x+1); "
                         "sigma: the raw summation limit for v^(-s)")
    pe.add_argument("--x", type=float, required=True)
    pe.add_argument("--s", type=str, default=None, help="complex, e.g. 0.5+3i")

    pv = sub.add_parser("verify", help="run a property suite", parents=[common])
    pv.add_argument("suite", choices=("lemmas", "operators", "all"))
    pv.add_argument("--seed", type=int, default=0)

    pz = sub.add_parser("zeros", help="critical-line zeros with eigen reports",
                        parents=[common])
    pz.add_argument("t_min", type=float)
    pz.add_argument("t_max", type=float)
    pz.add_argument("--csv", type=str, default=None, help="write one row per zero")
    pz.add_argument("--numeric-residual", action="store_true",
                    help="also run the nested numeric R defect per zero (slow)")

    ps = sub.add_parser("scan", help="sweep the strip and tabulate residuals",
                        parents=[common])
    ps.add_argument("re0", type=float)
    ps.add_argument("re1", type=float)
    ps.add_argument("im0", type=float)
    ps.add_argument("im1", type=float)
    ps.add_argument("n_re", type=int)
    ps.add_argument("n_im", type=int)
    ps.add_argument("--csv", type=str, default=None)

    pn = sub.add_parser("norm", help="truncated half-shift norm diagnostics",
                        parents=[common])
    pn.add_argument("--s", type=str, required=True)
    pn.add_argument("--T", type=float, required=True)
    pn.add_argument("--quad-points", type=int, default=4000)
    return p


def _opt(args, name, env_name, cast, fallback):
    # precedence: explicit flag > FRACSUM_* environment > built-in default
    value = getattr(args, name, None)
    if value is not None:
        return value
    if cast is bool:
        return _env_bool(env_name, fallback)
    return _env(env_name, cast, fallback)


def _configs(args):
    strict = _opt(args, "strict", "STRICT", bool, True)
    abs_tol = _opt(args, "abs_tol", "ABS_TOL", float, 1e-8)
    n0 = _opt(args, "n0", "N0", int, 64)
    diff_step = _opt(args, "diff_step", "DIFF_STEP", float, 1e-4)
    em_terms = _opt(args, "em_terms", "EM_TERMS", int, 50)
    base = SummationConfig()
    sum_cfg = SummationConfig(
        n0=n0, abs_tol=abs_tol, strict=strict,
        max_n=max(base.max_n, n0 * 2 ** (base.schedule_len - 1)),
    )
    op_cfg = OperatorConfig(diff_step=diff_step, sum_cfg=sum_cfg)
    spec_cfg = SpecFunConfig(em_terms=em_terms)
    return sum_cfg, op_cfg, spec_cfg


def _write_csv(path: str, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_field(row[c]) for c in columns) + "\n")


def _field(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int,)):
        return str(v)
    if isinstance(v, float):
        return _num(v)
    return str(v)


def read_records_csv(path: str) -> list[dict]:
    """Read back a CSV written by this tool, restoring numeric fields."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    header = lines[0].split(",")
    out = []
    for ln in lines[1:]:
        row = {}
        for key, raw in zip(header, ln.split(",")):
            try:
                row[key] = float(raw)
            except ValueError:
                row[key] = raw
        out.append(row)
    return out


def _cmd_eval(args, cfgs, diagnostics):
    sum_cfg, _, spec_cfg = cfgs
    x = float(args.x)
    inputs = {"expr": args.expr, "x": x}
    if args.expr == "sumlog":
        value = complex(sum_log(x, spec_cfg))
        results = {"value": value, "err_estimate": spec_cfg.target_abs_tol,
                   "method": "log_gamma"}
        return inputs, results, EXIT_OK
    if args.s is None:
        raise DomainError(f"eval {args.expr} requires --s")
    s = parse_complex(args.s)
    inputs["s"] = s
    if args.expr == "fracpow":
        value = complex(frac_power(x, s, spec_cfg))
        if abs(s - 1.0) < 1e-8:
            err = spec_cfg.target_abs_tol
        else:
            err = (hurwitz_zeta_with_error(s, 1.0, spec_cfg)[1]
                   + hurwitz_zeta_with_error(s, x + 1.0, spec_cfg)[1])
        results = {"value": value, "err_estimate": err, "method": "closed_form"}
        return inputs, results, EXIT_OK
    # sigma: the raw limit, for direct comparison against fracpow
    res = fractional_sum_limit(power_fn(s), x, sum_cfg)
    results = {
        "value": res.value,
        "err_estimate": res.err_estimate,
        "n_used": res.n_used,
        "converged": res.converged,
        "decay_exponent_estimate": res.decay_exponent_estimate,
        "method": "summation_limit",
    }
    if not res.converged:
        diagnostics.append({"level": "warning", "message": "limit did not converge"})
    return inputs, results, EXIT_OK


def _cmd_verify(args, cfgs, diagnostics):
    sum_cfg, op_cfg, spec_cfg = cfgs
    # the suite reports pass/fail per property; a strict ConvergenceError
    # would abort the whole run, so verification always measures leniently
    sum_cfg = replace(sum_cfg, strict=False)
    op_cfg = replace(op_cfg, sum_cfg=sum_cfg)
    checks = run_suite(args.suite, args.seed, sum_cfg, op_cfg, spec_cfg)
    rows = [{
        "name": c.name, "passed": c.passed, "measure": c.measure,
        "tolerance": c.tolerance, "detail": c.detail,
    } for c in checks]
    failed = [c.name for c in checks if not c.passed]
    for name in failed:
        diagnostics.append({"level": "error", "message": f"property failed: {name}"})
    inputs = {"suite": args.suite, "seed": args.seed}
    results = {"checks": rows, "n_failed": len(failed)}
    return inputs, results, EXIT_VERIFY if failed else EXIT_OK


def _cmd_zeros(args, cfgs, diagnostics):
    _, op_cfg, spec_cfg = cfgs
    jobs = max(1, getattr(args, "jobs", 1))
    zeros = find_critical_zeros(args.t_min, args.t_max, spec_cfg, jobs=jobs)
    rows = []
    for z in zeros:
        rep = eigen_residual(0.5 + 1j * z.t, op_cfg, spec_cfg,
                             include_numeric=args.numeric_residual)
        rows.append({
            "index": z.index,
            "t": z.t,
            "residual": z.residual,
            "bracket_lo": z.bracket[0],
            "bracket_hi": z.bracket[1],
            "lambda_re": rep.lam.real,
            "lambda_im": rep.lam.imag,
            "lambda_is_real": rep.lambda_is_real,
            "abs_zeta": abs(rep.zeta_s) if rep.zeta_s is not None else math.nan,
            "analytic_residual": rep.analytic_residual,
            "numeric_residual": rep.numeric_residual,
            "boundary_f0_abs": abs(rep.boundary_f0),
            "boundary_fhalf_abs": abs(rep.boundary_fhalf),
        })
    if args.csv:
        _write_csv(args.csv, ZEROS_CSV_COLUMNS, rows)
    inputs = {"t_min": args.t_min, "t_max": args.t_max,
              "numeric_residual": bool(args.numeric_residual)}
    results = {"n_zeros": len(zeros), "zeros": rows}
    if args.csv:
        results["csv"] = args.csv
    return inputs, results, EXIT_OK


def _cmd_scan(args, cfgs, diagnostics):
    _, _, spec_cfg = cfgs
    jobs = max(1, getattr(args, "jobs", 1))
    cells = scan_s_plane((args.re0, args.re1), (args.im0, args.im1),
                         args.n_re, args.n_im, spec_cfg, jobs=jobs)
    rows = [{
        "s_re": c.s.real, "s_im": c.s.imag, "abs_zeta": c.abs_zeta,
        "analytic_residual": c.analytic_residual,
        "lambda_re": c.lam.real, "lambda_im": c.lam.imag,
        "lambda_is_real": c.lambda_is_real, "flags": c.flag,
    } for c in cells]
    if args.csv:
        _write_csv(args.csv, SCAN_CSV_COLUMNS, rows)
    n_error = sum(1 for c in cells if c.flag.startswith("error"))
    inputs = {"re0": args.re0, "re1": args.re1, "im0": args.im0, "im1": args.im1,
              "n_re": args.n_re, "n_im": args.n_im}
    results = {"n_cells": len(cells), "n_error": n_error, "cells": rows}
    if args.csv:
        results["csv"] = args.csv
    if n_error > 0.1 * len(cells):
        diagnostics.append({"level": "error",
                            "message": f"{n_error}/{len(cells)} cells failed"})
        return inputs, results, EXIT_CONVERGENCE
    return inputs, results, EXIT_OK


def _cmd_norm(args, cfgs, diagnostics):
    _, _, spec_cfg = cfgs
    s = parse_complex(args.s)
    res = half_shift_norm(s, args.T, args.quad_points, spec_cfg)
    verdict = "finite-trend" if res.decay_exponent < -1.0 else "divergent-trend"
    inputs = {"s": s, "T": args.T, "quad_points": args.quad_points}
    results = {
        "truncated_norm_sq": res.truncated_norm_sq,
        "decay_exponent": res.decay_exponent,
        "expected_exponent": -2.0 * s.real,
        "verdict": verdict,
    }
    return inputs, results, EXIT_OK


_HANDLERS = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "zeros": _cmd_zeros,
    "scan": _cmd_scan,
    "norm": _cmd_norm,
}


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(record), indent=2))
        return
    print(f"fracsum {record['command']}  (schema {record['schema_version']})")
    for key, val in record["inputs"].items():
        print(f"  input   {key} = {_render(val)}")
    _render_results(record["results"], indent="  ")
    for d in record["diagnostics"]:
        tag = d["level"] if "error_class" not in d else f"{d['level']}:{d['error_class']}"
        print(f"  [{tag}] {d['message']}")
    print(f"  timing_ms = {record['timing_ms']:.3f}")


def _render(val) -> str:
    if isinstance(val, complex):
        return format_complex(val)
    if isinstance(val, float):
        return _num(val)
    return str(val)


def _render_results(results: dict, indent: str) -> None:
    for key, val in results.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{indent}{key}:")
            cols = list(val[0].keys())
            print(f"{indent}  " + " | ".join(cols))
            for row in val:
                print(f"{indent}  " + " | ".join(_render(row[c]) for c in cols))
        else:
            print(f"{indent}result  {key} = {_render(val)}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    diagnostics: list[dict] = []
    try:
        cfgs = _configs(args)
        inputs, results, code = _HANDLERS[args.command](args, cfgs, diagnostics)
    except ConvergenceError as exc:
        _emit_failure(args, "ConvergenceError", str(exc), t0)
        return EXIT_CONVERGENCE
    except (DomainError, FracsumError) as exc:
        _emit_failure(args, type(exc).__name__, str(exc), t0)
        return EXIT_USAGE
    record = {
        "schema_version": "1",
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
        "timing_ms": (time.perf_counter() - t0) * 1000.0,
    }
    _emit(record, getattr(args, "format", "table"))
    return code


def _emit_failure(args, error_class: str, message: str, t0: float) -> None:
    record = {
        "schema_version": "1",
        "command": getattr(args, "command", "?"),
        "inputs": {},
        "results": {},
        "diagnostics": [{"level": "error", "message": message,
                         "error_class": error_class}],
        "timing_ms": (time.perf_counter() - t0) * 1000.0,
    }
    _emit(record, getattr(args, "format", "table"))


if __name__ == "__main__":
    sys.exit(main())
