"""Command line entry point: ``torsionlab <command> [options]``.

Exit codes: 0 success, 1 numeric or verification failure, 2 usage error,
3 surgery solver found nothing.
"""

import argparse
import csv
import io
import json
import logging
import math
import platform
import sys

import numpy as np

from . import __version__, checks, fox, sl2
from .riley import RileyError, riley_poly_in_u, riley_roots
from .surgery import (DegenerateFormulaError, Slope, rho_longitude, solve_surgery_reps,
                      torsion_surgery, torsion_surgery_dehn)
from .torsion import ParabolicError, torsion_complement

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EMPTY = 0, 1, 2, 3

COMMANDS = ("riley-roots", "torsion", "surgery", "verify", "table")


class UsageError(Exception):
    pass


def parse_complex(text):
    """'re,im' or a bare real."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def parse_sweep(text):
    try:
        lo, hi, k = text.split(":")
        lo, hi, k = float(lo), float(hi), int(k)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'start:stop:count', got {text!r}")
    if k < 1:
        raise argparse.ArgumentTypeError("sweep count must be positive")
    return lo, hi, k


def encode_complex(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _encode(value):
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _point_fields(pt):
    return {"s": pt.s, "u": pt.u, "x": pt.x, "z": pt.z}


# -- commands -----------------------------------------------------------------

def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    if getattr(args, "n", None) == 0:
        raise UsageError("n must be nonzero (J(2,2n) with n != 0)")


def cmd_riley_roots(args, report):
    _require(args, "n", "s")
    poly = riley_poly_in_u(args.n, args.s)
    status = EXIT_OK
    for pt in riley_roots(args.n, args.s, tol=min(args.tol, 1e-12)):
        row = _point_fields(pt)
        row.update(residual=pt.residual, converged=pt.converged, degree=poly.degree)
        report["results"].append(row)
        if not pt.converged:
            report["warnings"].append(f"root u={pt.u} did not converge")
            status = EXIT_FAIL
    return status


def _relator(args):
    macros = fox.default_macros()
    for item in args.define or ():
        name, sep, body = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--define expects name=word, got {item!r}")
        macros[name.strip()] = fox.parse_word(body.replace("{n}", str(args.n)), macros)
    if args.relator is None:
        return fox.twist_relator(args.n)
    return fox.parse_word(args.relator.replace("{n}", str(args.n)), macros)


def cmd_torsion(args, report):
    _require(args, "n", "s")
    relator = _relator(args) if args.verify else None
    status = EXIT_OK
    for pt in riley_roots(args.n, args.s):
        row = _point_fields(pt)
        try:
            tau = torsion_complement(args.n, pt)
        except ParabolicError as exc:
            report["warnings"].append(f"torsion hypothesis violated at u={pt.u}: {exc}")
            return EXIT_FAIL
        row["tau"] = tau
        if args.verify:
            rho = {"a": sl2.mat2(pt.s, 1, 0, 1 / pt.s), "b": sl2.mat2(pt.s, 0, -pt.u, 1 / pt.s)}
            oracle = fox.johnson_torsion(relator, rho, "b")
            diff = abs(tau - oracle)
            row.update(tau_oracle=oracle, difference=diff)
            if diff > args.tol * (1 + abs(tau)):
                report["warnings"].append(f"closed form and oracle differ by {diff:.3g} at u={pt.u}")
                status = EXIT_FAIL
        report["results"].append(row)
    return status


def cmd_surgery(args, report):
    _require(args, "n", "p", "q")
    try:
        slope = Slope(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    reps = solve_surgery_reps(args.n, slope, seed=args.seed)
    if not reps:
        report["warnings"].append("no representation found")
        return EXIT_EMPTY
    status = EXIT_OK
    for rep in reps:
        pt = rep.point
        row = _point_fields(pt)
        row["extension_residual"] = rep.extension_residual
        row["tr_lambda"] = sl2.trace(rho_longitude(args.n, pt))
        try:
            closed = torsion_surgery(args.n, rep)
            dehn = torsion_surgery_dehn(args.n, rep)
        except (ParabolicError, DegenerateFormulaError) as exc:
            report["warnings"].append(f"torsion undefined at s={pt.s}, u={pt.u}: {exc}")
            row.update(tau_E=None, tau_M=None, tau_M_dehn=None, difference=None)
            report["results"].append(row)
            continue
        diff = abs(closed - dehn)
        row.update(tau_E=torsion_complement(args.n, pt), tau_M=closed, tau_M_dehn=dehn, difference=diff)
        if diff > args.tol * (1 + abs(closed)):
            report["warnings"].append(f"surgery torsion routes differ by {diff:.3g}")
            status = EXIT_FAIL
        report["results"].append(row)
    return status


def cmd_verify(args, report):
    results = checks.run_all(seed=args.seed, trials=args.trials)
    for r in results:
        report["results"].append({"check": r.name, "passed": r.passed, "trials": r.trials,
                                  "worst": r.worst, "tol": r.tol})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def example_surgery_torsion(n, x):
    """Known closed forms of the surgery torsion for the trefoil and figure-eight."""
    if n == 1:
        return 2 / (x * x * (x * x - 3) ** 2)
    if n == -1:
        return (2 * x - 2) / (x * x * (x * x - 5))
    return None


def s_from_x(x):
    """The root of s + 1/s = x with |s| >= 1."""
    x = complex(x)
    r = np.sqrt(x * x - 4)
    s = (x + r) / 2
    return s if abs(s) >= 1 else (x - r) / 2


def cmd_table(args, report):
    _require(args, "n", "sweep_x")
    lo, hi, k = args.sweep_x
    status = EXIT_OK
    for i, x in enumerate(np.linspace(lo, hi, k)):
        s = s_from_x(x)
        for pt in riley_roots(args.n, s):
            row = {"row": i, **_point_fields(pt)}
            try:
                row["tau_E"] = torsion_complement(args.n, pt)
                row["tr_lambda"] = sl2.trace(rho_longitude(args.n, pt))
                row["tau_M"] = torsion_surgery(args.n, pt)
                row["tau_M_dehn"] = torsion_surgery_dehn(args.n, pt)
            except (ParabolicError, DegenerateFormulaError) as exc:
                report["warnings"].append(f"row {i}: {exc}")
                continue
            expected = example_surgery_torsion(args.n, pt.x)
            row["tau_M_example"] = expected
            if expected is not None:
                diff = abs(row["tau_M"] - expected)
                row["difference"] = diff
                if diff > args.tol * max(1.0, abs(expected)):
                    status = EXIT_FAIL
            report["results"].append(row)
    return status


HANDLERS = {
    "riley-roots": cmd_riley_roots,
    "torsion": cmd_torsion,
    "surgery": cmd_surgery,
    "verify": cmd_verify,
    "table": cmd_table,
}


# -- output -------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return _encode(obj)


def to_json(report):
    return json.dumps(_jsonable(report), indent=2, allow_nan=True)


def _flatten(row):
    out = {}
    for key, value in row.items():
        value = _encode(value)
        if isinstance(value, dict):
            out[f"{key}_re"] = value["re"]
            out[f"{key}_im"] = value["im"]
        else:
            out[key] = value
    return out


def to_csv(report):
    rows = [_flatten(r) for r in report["results"]]
    columns = []
    for r in rows:
        columns.extend(c for c in r if c not in columns)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({c: ("" if r.get(c) is None else repr(r[c]) if isinstance(r.get(c), float) else r.get(c))
                         for c in columns})
    return buf.getvalue()


def _fmt(value):
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.12g}{value.imag:+.12g}j"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def to_text(report):
    lines = [f"# {report['command']}"]
    for r in report["results"]:
        lines.append("  ".join(f"{k}={_fmt(v)}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


# -- argument parsing -----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="torsionlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"torsionlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--output", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        return p

    p = common(sub.add_parser("riley-roots", help="nonabelian Riley roots over a fixed s"))
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=parse_complex)

    p = common(sub.add_parser("torsion", help="torsion of the knot complement"))
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=parse_complex)
    p.add_argument("--verify", action="store_true", help="also run the Fox-calculus oracle")
    p.add_argument("--relator", help="relator word for the oracle ('{n}' is substituted)")
    p.add_argument("--define", action="append", metavar="NAME=WORD", help="word macro, repeatable")

    p = common(sub.add_parser("surgery", help="representations and torsion after p/q surgery"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)

    p = common(sub.add_parser("verify", help="run the randomized identity suite"))
    p.add_argument("--trials", type=int, default=200)

    p = common(sub.add_parser("table", help="sweep the meridian trace x"))
    p.add_argument("--n", type=int)
    p.add_argument("--sweep-x", type=parse_sweep, metavar="START:STOP:COUNT")
    return parser


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k not in ("out",)}
    if "sweep_x" in cfg and cfg["sweep_x"] is not None:
        lo, hi, k = cfg["sweep_x"]
        cfg["sweep_x"] = {"start": lo, "stop": hi, "count": k}
    return cfg


def run(argv=None):
    """Parse argv and execute. Returns (exit code, report or None, args or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None, None
    if not (args.tol > 0 and math.isfinite(args.tol)):
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE, None, args
    report = {"command": args.command, "config": _config(args), "results": [], "warnings": [],
              "versions": {"torsionlab": __version__, "numpy": np.__version__,
                           "python": platform.python_version()}}
    try:
        code = HANDLERS[args.command](args, report)
    except (UsageError, RileyError, fox.WordSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None, args
    return code, report, args


def render(report, fmt):
    return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](report)


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    code, report, args = run(argv)
    if report is None:
        return code
    text = render(report, args.output)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for w in report["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
