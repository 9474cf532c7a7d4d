"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 domain error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import certify, numverify, registry
from .errors import CertificateFormatError, DomainError, KernelParseError
from .kernels import combination_profile, eval_kernel, parse_kernel

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _die(code, msg):
    print(f"error: {msg}", file=sys.stderr)
    return code


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


# -- eval ---------------------------------------------------------------

def cmd_eval(args):
    try:
        kind = parse_kernel(args.kernel)
    except KernelParseError as exc:
        return _die(EXIT_USAGE, str(exc))
    try:
        value = eval_kernel(kind, args.a, args.b)
    except DomainError as exc:
        return _die(EXIT_DOMAIN, str(exc))
    print(f"{value:.15g}")
    return EXIT_OK


# -- verify-all -----------------------------------------------------------

def _num(v):
    return None if v is None or not math.isfinite(v) else float(v)


def run_verification(cfg, timing=False, workers=1):
    """Numeric reports for every statement plus exact checks of the certificates."""
    start = time.perf_counter()
    reports = numverify.verify_all(cfg, workers=workers)
    certs = certify.check_all()
    results = [{"id": r.statement_id, "verdict": r.verdict, "min_value": _num(r.min_value),
                "argmin_x": _num(r.argmin_x), "method": "numeric"} for r in reports]
    results += [{"id": c.statement_id, "verdict": c.verdict, "min_value": None,
                 "argmin_x": None, "method": "exact"} for c in certs]
    results.sort(key=lambda r: (r["id"], r["method"]))
    ok = {numverify.PASS, certify.PROVED}
    passed = sum(r["verdict"] in ok for r in results)
    summary = {
        "total": len(results),
        "passed": passed,
        "failed": len(results) - passed,
        "proved_exact": sum(c.proved for c in certs),
        "wall_time_seconds": round(time.perf_counter() - start, 3) if timing else None,
    }
    return {"summary": summary, "seed": cfg.seed, "results": results}


def format_text(report):
    s = report["summary"]
    lines = []
    failed = [r for r in report["results"] if r["verdict"] not in (numverify.PASS, certify.PROVED)]
    for r in failed:
        lines.append(f"FAIL {r['id']} [{r['method']}] min={r['min_value']} at x={r['argmin_x']}")
    for r in report["results"]:
        if r not in failed:
            extra = "" if r["method"] == "exact" else f" min={r['min_value']:.3e} at x={r['argmin_x']:.6g}"
            lines.append(f"{r['verdict'].lower():6s} {r['id']} [{r['method']}]{extra}")
    wall = "" if s["wall_time_seconds"] is None else f", {s['wall_time_seconds']} s"
    lines.append(f"total {s['total']}, passed {s['passed']}, failed {s['failed']}, "
                 f"proved exactly {s['proved_exact']}{wall}")
    return "\n".join(lines) + "\n"


def cmd_verify_all(args):
    try:
        cfg = numverify.VerifyConfig(grid_points=args.grid, tol_rel=args.tol, seed=args.seed)
    except ValueError as exc:
        return _die(EXIT_USAGE, str(exc))
    report = run_verification(cfg, timing=args.timing, workers=args.workers)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = format_text(report)
    try:
        _write(text, args.out)
    except OSError as exc:
        return _die(EXIT_IO, f"cannot write report to {args.out}: {exc}")
    s = report["summary"]
    if args.out is not None:
        print(f"total {s['total']}, passed {s['passed']}, failed {s['failed']}, "
              f"proved exactly {s['proved_exact']}", file=sys.stderr)
    return EXIT_OK if s["failed"] == 0 else EXIT_FAIL


# -- curve --------------------------------------------------------------

def cmd_curve(args):
    try:
        stmt = registry.get(args.statement_id)
    except KeyError:
        return _die(EXIT_USAGE, f"unknown statement id {args.statement_id!r}")
    if stmt.level != registry.KERNEL:
        return _die(EXIT_USAGE, f"{stmt.id} is a distribution-level statement; no gap curve")
    if args.points < 1 or not args.xmax > 1:
        return _die(EXIT_USAGE, "need --points >= 1 and --xmax > 1")
    if args.points == 1:
        xs = np.array([1.0])
    else:
        xs = np.exp(np.linspace(-math.log(args.xmax), math.log(args.xmax), args.points))
    gaps = combination_profile(stmt.combination, xs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "gap"])
    for x, g in zip(xs, gaps):
        w.writerow([repr(float(x)), repr(float(g))])
    try:
        _write(buf.getvalue(), args.out)
    except OSError as exc:
        return _die(EXIT_IO, f"cannot write {args.out}: {exc}")
    return EXIT_OK


# -- certify ------------------------------------------------------------

def cmd_certify(args):
    if args.all:
        paths = certify.builtin_paths()
    else:
        path = Path(args.cert)
        if not path.exists() and (certify.DATA_DIR / path.name).exists():
            path = certify.DATA_DIR / path.name  # bare name of a built-in certificate
        paths = [path]
    all_ok = True
    for path in paths:
        try:
            cert = certify.load_certificate(path)
        except CertificateFormatError as exc:
            return _die(EXIT_USAGE, f"{path}: {exc}")
        except OSError as exc:
            return _die(EXIT_IO, str(exc))
        try:
            stmt = registry.get(cert.statement_id)
        except KeyError:
            return _die(EXIT_USAGE, f"{path}: unknown statement id {cert.statement_id!r}")
        res = certify.check_certificate(cert, stmt)
        if res.proved:
            print(f"{cert.statement_id}: Proved")
        else:
            f = res.failure
            print(f"{cert.statement_id}: Failed at step {f.step_index}: {f.reason} {f.detail}".rstrip())
            all_ok = False
        if args.trace or not args.all:
            for entry in res.trace:
                print("  " + json.dumps(entry, sort_keys=True))
    return EXIT_OK if all_ok else EXIT_FAIL


# -- registry export ----------------------------------------------------

def cmd_registry_export(args):
    try:
        if args.out is None:
            sys.stdout.write(registry.dumps())
        else:
            registry.export_json(args.out)
    except OSError as exc:
        return _die(EXIT_IO, str(exc))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="meanineq", description="Mean and divergence inequality verifier.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a kernel at (a, b)")
    e.add_argument("kernel")
    e.add_argument("a", type=float)
    e.add_argument("b", type=float)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify-all", help="verify every registry statement and certificate")
    v.add_argument("--tol", type=float, default=numverify.VerifyConfig.tol_rel)
    v.add_argument("--grid", type=int, default=numverify.VerifyConfig.grid_points)
    v.add_argument("--seed", type=int, default=numverify.DEFAULT_SEED)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", default=None)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timing", action="store_true",
                   help="record wall time in the report (makes it non-reproducible)")
    v.set_defaults(func=cmd_verify_all)

    c = sub.add_parser("curve", help="write the gap curve of a statement as CSV")
    c.add_argument("statement_id")
    c.add_argument("--points", type=int, default=101)
    c.add_argument("--xmax", type=float, default=100.0)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_curve)

    k = sub.add_parser("certify", help="check proof certificates")
    g = k.add_mutually_exclusive_group(required=True)
    g.add_argument("--cert")
    g.add_argument("--all", action="store_true")
    k.add_argument("--trace", action="store_true", help="print step traces with --all")
    k.set_defaults(func=cmd_certify)

    r = sub.add_parser("registry", help="registry utilities")
    rs = r.add_subparsers(dest="registry_command", required=True, parser_class=_Parser)
    ex = rs.add_parser("export", help="write the statement catalogue as JSON")
    ex.add_argument("--out", default=None)
    ex.set_defaults(func=cmd_registry_export)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
