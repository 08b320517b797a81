"""Command-line front end.

Text formats::

    poly     z^2-3z+1, z^-1-3+z
    word     -1,-1,1        finite word starting at index 0
             (-1,-1,1)      periodic word
             -1,1@5         finite word starting at index 5
    seed     0,1/2          torus coordinates (rationals or floats)
    matrix   -1,1;-1,2  or  [[-1,1],[-1,2]]
    quadirr  (3+sqrt(5))/2
    window   -5..5

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import automorphisms as au
from .dynamics import (CodeWord, TorusSeq, alphabet, decode, default_threads,
                       encode, entropy_estimate, entropy_exact, is_admissible,
                       orbit, periodic_orbit, preimage)
from .errors import ParseError, StreamZerosError
from .inverse import inverse
from .poly import bezout, format_poly, parse_poly, resultant
from .quadratic import QuadIrr, parse_quadirr
from .streams import FiniteSupport, to_record, window_of
from .structure import (decompose, dim_check, dim_omega,
                        enumerate_common_zeros, sample_member)


@dataclass
class RunConfig:
    precision: float = 1e-12
    window: tuple = (-20, 20)
    grid: int = 1024
    word_len: int = 10
    mode: str = "exact"
    output: str = "json"
    threads: int = field(default_factory=default_threads)


@dataclass
class Report:
    data: object
    columns: tuple = ()
    rows: list = field(default_factory=list)


class UsageError(Exception):
    pass


# -- parsing -----------------------------------------------------------------

def parse_window(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}, expected lo..hi")
    if lo > hi:
        raise argparse.ArgumentTypeError("window lo must not exceed hi")
    return lo, hi


def _number(text):
    text = text.strip()
    try:
        return Fraction(text) if "." not in text and "e" not in text.lower() else float(text)
    except ValueError:
        raise UsageError(f"bad number {text!r}")


def parse_seed(text):
    return tuple(_number(t) for t in text.split(",") if t.strip())


def parse_word(text):
    text = text.strip().replace(" ", "")
    start = 0
    if "@" in text:
        text, s = text.rsplit("@", 1)
        start = int(s)
    periodic = text.startswith("(") and text.endswith(")")
    if periodic:
        text = text[1:-1]
    try:
        letters = tuple(int(t) for t in text.split(",") if t)
    except ValueError:
        raise UsageError(f"bad word {text!r}")
    if not letters:
        raise UsageError("empty word")
    return CodeWord(letters, periodic, start)


def format_word(w):
    body = ",".join(map(str, w.letters))
    if w.periodic:
        body = f"({body})"
    if w.start_index:
        body += f"@{w.start_index}"
    return body


def parse_matrix(text):
    text = text.strip()
    try:
        rows = json.loads(text) if text.startswith("[") else [[int(v) for v in r.split(",")] for r in text.split(";")]
        return au.IntMatrix(tuple(tuple(int(v) for v in r) for r in rows))
    except (ValueError, TypeError):
        raise UsageError(f"bad matrix {text!r}")


# -- JSON emission -----------------------------------------------------------

def _value(v):
    """Exact values become strings, floats stay floats."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, QuadIrr):
        return str(v.to_fraction()) if v.is_rational else str(v)
    if isinstance(v, (complex, np.complexfloating)):
        if v.imag == 0:
            return float(v.real)
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_value(x) for x in v]
    return v


def dump_json(obj, indent=2, level=0):
    """JSON with floats at 17 significant digits."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return json.dumps(str(obj))
        return format(obj, ".17g")
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dump_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return "[" + ", ".join(dump_json(x, indent, level + 1) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + dump_json(x, indent, level + 1) for x in obj) + "\n" + end + "]"
    return json.dumps(obj)


def _cell(v):
    v = _value(v)
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def render(report, output):
    if output == "json" or not report.columns:
        return dump_json(_value(report.data)) + "\n"
    rows = [[_cell(v) for v in r] for r in report.rows]
    if output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(report.columns)]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(report.columns, widths))]
    lines += ["  ".join(v.rjust(wd) for v, wd in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _seq_rows(x):
    return [(n, x.entry(n)) for n in x.indices()]


def _seq_data(x):
    return {"start_index": x.start_index, "periodic": x.periodic, "values": list(x.values)}


# -- subcommands -------------------------------------------------------------

def cmd_inverse(args, cfg):
    p = parse_poly(args.poly)
    inv = inverse(p, cfg.precision)
    lo, hi = cfg.window
    w = window_of(inv, lo, hi, cfg.precision)
    data = {"poly": format_poly(p), "window": [lo, hi], "values": list(w.values),
            "tail_bound": w.tail_bound, "error": w.error}
    if not isinstance(inv, FiniteSupport) and inv.is_exact:
        data["exact"] = [inv.exact_entry(n) for n in range(lo, hi + 1)]
    data["stream"] = to_record(inv)
    return Report(data, ("index", "value"), list(zip(range(lo, hi + 1), w.values)))


def cmd_orbit(args, cfg):
    p = parse_poly(args.poly)
    seed = parse_seed(args.seed)
    if args.periodic:
        x = periodic_orbit(p, seed)
    else:
        x = orbit(p, seed, args.steps, args.back, args.branch)
    return Report(_seq_data(x), ("index", "value"), _seq_rows(x))


def cmd_encode(args, cfg):
    p = parse_poly(args.poly)
    vals = parse_seed(args.values)
    if args.periodic_orbit:
        x = periodic_orbit(p, vals)
    else:
        x = TorusSeq(args.start, vals, args.periodic)
    w = encode(p, x)
    data = {"word": format_word(w), "start_index": w.start_index, "periodic": w.periodic,
            "letters": list(w.letters), "alphabet": list(alphabet(p).letters)}
    rows = [(w.start_index + i, a) for i, a in enumerate(w.letters)]
    return Report(data, ("index", "letter"), rows)


def cmd_decode(args, cfg):
    p = parse_poly(args.poly)
    w = parse_word(args.word)
    window = cfg.window if args.window else None
    x = decode(p, w, window, cfg.precision)
    return Report(_seq_data(x), ("index", "value"), _seq_rows(x))


def cmd_admissible(args, cfg):
    p = parse_poly(args.poly)
    w = parse_word(args.word)
    v = is_admissible(p, w, cfg.precision)
    pre = preimage(p, w, None, cfg.precision)
    data = {"word": format_word(w), "verdict": v.value,
            "preimage": {"start_index": pre.start_index, "values": list(pre.values), "error": pre.error}}
    return Report(data)


def cmd_entropy(args, cfg):
    p = parse_poly(args.poly)
    h = entropy_exact(p)
    est = entropy_estimate(p, cfg.word_len, cfg.grid, args.backward_depth, cfg.threads)
    rows = [(n, c, e, h, e - h) for n, c, e in est.rows]
    data = {"poly": format_poly(p), "exact": h, "grid": est.grid, "backward_depth": est.backward_depth,
            "rows": [dict(zip(("n", "count", "estimate", "exact", "gap"), r)) for r in rows]}
    return Report(data, ("n", "count", "estimate", "exact", "gap"), rows)


def cmd_resultant(args, cfg):
    p, q = parse_poly(args.p), parse_poly(args.q)
    r = resultant(p, q)
    return Report({"p": format_poly(p), "q": format_poly(q), "delta": r.delta,
                   "matrix": [list(row) for row in r.matrix], "shift_p": r.shift_p, "shift_q": r.shift_q})


def cmd_bezout(args, cfg):
    p, q = parse_poly(args.p), parse_poly(args.q)
    a, b, delta = bezout(p, q)
    return Report({"p": format_poly(p), "q": format_poly(q), "A": format_poly(a),
                   "B": format_poly(b), "delta": delta})


def cmd_dim(args, cfg):
    p = parse_poly(args.poly)
    d = dim_omega(p)
    grid = args.grid or 8
    return Report({"poly": format_poly(p), "dim": d, "grid": grid,
                   "check_dim": dim_check(p, d, grid) if d else None,
                   "check_dim_plus_1": dim_check(p, d + 1, grid)})


def cmd_common_zeros(args, cfg):
    p, q = parse_poly(args.p), parse_poly(args.q)
    lo, hi = cfg.window if args.window else (0, 0)
    zs = enumerate_common_zeros(p, q, (lo, hi))
    return Report({"delta": resultant(p, q).delta, "window": [lo, hi],
                   "zeros": [list(x.values) for x in zs]})


def cmd_decompose(args, cfg):
    p, q = parse_poly(args.p), parse_poly(args.q)
    pq = p * q
    seed = parse_seed(args.seed)
    if args.periodic:
        x = periodic_orbit(pq, seed)
    else:
        x = sample_member(pq, seed, args.length)
    w = decompose(p, q, x)
    return Report({"x": _seq_data(x), "u": _seq_data(w.u), "v": _seq_data(w.v),
                   "delta": w.scale, "verified": w.verify(p, q, x)})


def _matrix(m):
    return [list(r) for r in m.rows] if m is not None else None


def cmd_saut(args, cfg):
    p = parse_poly(args.poly)
    c = au.saut_group(p)
    a1, a2, d = au._quadratic_params(p)
    data = {"poly": format_poly(p), "class": c.kind, "generator": _matrix(c.generator)}
    if c.generator is not None and d > 0 and c.kind == "infinite_cyclic":
        w, v, sign = au.pell_of_generator(c.generator, p)
        data["pell"] = {"D": d, "w": w, "v": v, "sign": sign}
        theta, _ = au._quadratic_roots(a1, a2)
        cf = au.cf_expand(theta)
        data["cf"] = {"theta": str(theta), "preperiod": list(cf.preperiod), "period": list(cf.period)}
    else:
        data["D"] = d
    if c.generator is not None:
        data["eigenvalues"] = [str(lam) for _, lam in au.saut_eigendata(c.generator, p)]
    return Report(data)


def cmd_pell(args, cfg):
    s = au.pell_solve(args.D)
    return Report({"D": s.D, "w": s.w, "v": s.v, "sign": s.sign})


def cmd_cf(args, cfg):
    theta = parse_quadirr(args.value)
    cf = au.cf_expand(theta)
    data = {"value": str(theta), "preperiod": list(cf.preperiod), "period": list(cf.period), "text": str(cf)}
    if cf.period:
        m = au.cf_matrices(cf)
        data["matrices"] = {"pre": _matrix(m.pre_matrix), "period": _matrix(m.period_matrix),
                            "saut_element": _matrix(m.saut_element(1))}
    return Report(data)


def cmd_verify_all(args, cfg):
    from .acceptance import run_all
    results = run_all()
    rows = [(r.number, r.title, "PASS" if r.passed else "FAIL", round(r.seconds, 2)) for r in results]
    data = {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                          "checks": [{"check": d, "passed": ok, "detail": det} for d, ok, det in r.checks]}
                         for r in results],
            "all_passed": all(r.passed for r in results)}
    return Report(data, ("criterion", "title", "status", "seconds"), rows)


# -- driver ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=parse_window, help="index range lo..hi")
    common.add_argument("--grid", type=int)
    common.add_argument("--word-len", type=int)
    common.add_argument("--precision", type=float)
    common.add_argument("--mode", choices=("exact", "float"))
    common.add_argument("--output", choices=("json", "csv", "table"))
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--threads", type=int)

    ap = argparse.ArgumentParser(prog="streamzeros", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        for a in positional:
            sp.add_argument(a)
        sp.set_defaults(func=fn)
        return sp

    add("inverse", cmd_inverse, "poly", help="summable convolution inverse on a window")
    sp = add("orbit", cmd_orbit, "poly", "seed", help="orbit window grown from a seed")
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--back", type=int, default=0)
    sp.add_argument("--branch", type=int, default=0)
    sp.add_argument("--periodic", action="store_true", help="periodic part of a rational orbit")
    sp = add("encode", cmd_encode, "poly", "values", help="code word of an orbit window")
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--periodic", action="store_true", help="values list one period")
    sp.add_argument("--periodic-orbit", action="store_true", help="values are a seed; encode its cycle")
    add("decode", cmd_decode, "poly", "word", help="torus point of a code word")
    add("admissible", cmd_admissible, "poly", "word", help="admissibility verdict for a word")
    sp = add("entropy", cmd_entropy, "poly", help="exact entropy and word-count estimates")
    sp.add_argument("--backward-depth", type=int)
    add("resultant", cmd_resultant, "p", "q")
    add("bezout", cmd_bezout, "p", "q")
    add("dim", cmd_dim, "poly", help="dimension of Omega_P and grid check")
    add("common-zeros", cmd_common_zeros, "p", "q")
    sp = add("decompose", cmd_decompose, "p", "q", "seed", help="split a point of Omega_PQ")
    sp.add_argument("--length", type=int, default=12)
    sp.add_argument("--periodic", action="store_true")
    add("saut", cmd_saut, "poly", help="strong automorphism group of a quadratic")
    sp = sub.add_parser("pell", parents=[common], help="fundamental solution of w^2 - D v^2 = +-4")
    sp.add_argument("D", type=int)
    sp.set_defaults(func=cmd_pell)
    add("cf", cmd_cf, "value", help="continued fraction of a quadratic irrational")
    add("verify-all", cmd_verify_all, help="run the acceptance suite")
    return ap


def _config(args):
    cfg = RunConfig()
    if args.window:
        cfg.window = args.window
    for name in ("grid", "word_len", "precision", "mode", "output", "threads"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    if not cfg.precision > 0:
        raise UsageError("precision must be positive")
    if cfg.grid < 2:
        raise UsageError("grid must be at least 2")
    if cfg.threads < 1:
        raise UsageError("threads must be positive")
    return cfg


_NEGATIVE = re.compile(r"-[\d(z.]")


def _protect(argv):
    # "-3z^2+1" or "-5..5" would otherwise be read as option flags
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    argv = _protect(sys.argv[1:] if argv is None else list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        cfg = _config(args)
        if args.output is None and args.command in ("entropy", "verify-all"):
            cfg.output = "table"
        report = args.func(args, cfg)
    except (UsageError, ParseError) as e:
        print(f"usage error: {e}", file=stderr)
        ap.print_help(stderr)
        return 2
    except StreamZerosError as e:
        print(f"error: {type(e).__name__}: {e}", file=stderr)
        return 1
    except ValueError as e:
        print(f"usage error: {e}", file=stderr)
        return 2
    text = render(report, cfg.output)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "verify-all" and not report.data["all_passed"]:
        return 1
    return 0


def main():
    sys.exit(run())
