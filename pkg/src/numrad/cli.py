"""``numrad`` command line.

Exit codes: 0 success, 2 bad input (parse errors, invalid arguments),
3 numerical failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import replace

from numrad.cartesian import decompose
from numrad.errors import InvalidArgument, NumericalError, NumradError, ParseError
from numrad.example import repro_example
from numrad.inequalities.suite import SuiteConfig, load_config, render_json, render_text, run_suite
from numrad.matrix_io import format_matrix, read_matrix
from numrad.radius import DEFAULT_ANGLES, DEFAULT_TOL, fov_boundary, radius_certified, radius_via_circle

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY = 4
SEED_ENV = "NUMRAD_SEED"


def _num(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _digits(args) -> int:
    return 17 if getattr(args, "full_precision", False) else 12


def _json_default(o):
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def cmd_radius(args, out) -> int:
    t = read_matrix(args.matrix)
    fn = radius_certified if args.method == "theta" else radius_via_circle
    cert = fn(t, args.tol)
    if args.json:
        out.write(json.dumps(cert.as_dict(), indent=2) + "\n")
        return EXIT_OK
    d = _digits(args)
    out.write(f"lower = {_num(cert.lower, d)}\n")
    out.write(f"upper = {_num(cert.upper, d)}\n")
    out.write(f"midpoint = {_num(cert.midpoint, d)}\n")
    out.write(f"theta_star = {_num(cert.theta_star, d)}\n")
    out.write(f"method = {cert.method}\n")
    out.write(f"grid_evals = {cert.grid_evals}\n")
    out.write(f"refinement_rounds = {cert.refinement_rounds}\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    pair = decompose(read_matrix(args.matrix))
    # always 17 digits: the output must re-parse to the exact H and K
    out.write("# H = (T + T*)/2\n")
    out.write(format_matrix(pair.H.matrix))
    out.write("# K = (T - T*)/(2i)\n")
    out.write(format_matrix(pair.K.matrix))
    return EXIT_OK


def cmd_fov(args, out) -> int:
    if args.angles < 8:
        raise InvalidArgument(f"--angles must be at least 8, got {args.angles}")
    b = fov_boundary(read_matrix(args.matrix), args.angles)
    d = _digits(args)
    target = out if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        w = csv.writer(target, lineterminator="\n")
        w.writerow(["theta", "re", "im", "support_value"])
        for th, z, s in zip(b.angles, b.points, b.support_values):
            w.writerow([_num(th, d), _num(z.real, d), _num(z.imag, d), _num(s, d)])
    finally:
        if target is not out:
            target.close()
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    cfg = load_config(args.config) if args.config else SuiteConfig()
    seed = os.environ.get(SEED_ENV)
    if seed is not None and seed.strip():
        try:
            cfg = replace(cfg, master_seed=int(seed))
        except ValueError:
            raise ParseError(f"{SEED_ENV} must be an integer, got {seed!r}") from None
    if args.workers is not None:
        cfg = replace(cfg, workers=args.workers)
    return cfg


def cmd_verify(args, out) -> int:
    report = run_suite(_suite_config(args))
    out.write(render_json(report) + "\n" if args.json else render_text(report))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_repro_example(args, out) -> int:
    rep = repro_example()
    failures = rep.failures()
    if args.json:
        d = rep.as_dict()
        d["failures"] = failures
        out.write(json.dumps(d, indent=2, default=_json_default) + "\n")
    else:
        dg = _digits(args)
        for key, val in rep.as_dict().items():
            if isinstance(val, float):
                val = _num(val, dg)
            elif isinstance(val, list):
                val = "[" + ", ".join(_num(v, dg) for v in val) + "]"
            out.write(f"{key} = {val}\n")
    for name in failures:
        sys.stderr.write(f"example check failed: {name}\n")
    return EXIT_VERIFY if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="numrad", description="Certified numerical radius tools.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("radius", help="certified enclosure of w(T)")
    r.add_argument("matrix", help="matrix text file")
    r.add_argument("--tol", type=float, default=DEFAULT_TOL)
    r.add_argument("--method", choices=("theta", "circle"), default="theta")
    r.add_argument("--json", action="store_true")
    r.add_argument("--full-precision", action="store_true")
    r.set_defaults(func=cmd_radius)

    d = sub.add_parser("decompose", help="print H and K with T = H + iK")
    d.add_argument("matrix")
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("fov", help="boundary points of the field of values as CSV")
    f.add_argument("matrix")
    f.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    f.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    f.add_argument("--full-precision", action="store_true")
    f.set_defaults(func=cmd_fov)

    v = sub.add_parser("verify", help="run the inequality suite")
    v.add_argument("--config", help="key = value suite config (defaults apply when omitted)")
    v.add_argument("--json", action="store_true")
    v.add_argument("--workers", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("repro-example", help="recompute the strict triangle example")
    e.add_argument("--json", action="store_true")
    e.add_argument("--full-precision", action="store_true")
    e.set_defaults(func=cmd_repro_example)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except (NumradError, ValueError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
