"""Command-line front end.  JSON on stdout by default; ``--format csv`` for tables."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from rdsemi import bounds, cumulants, mehler, noncrossing, normlab, semigroup
from rdsemi._rational import fmt
from rdsemi.errors import DomainError, ResourceLimitError
from rdsemi.strings import parse_string

EXIT_OK, EXIT_INVALID, EXIT_GUARD = 0, 2, 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(obj) -> str:
    return json.dumps(obj) + "\n"


def _spec(args) -> cumulants.CumulantSpec:
    if args.spec:
        return cumulants.CumulantSpec.from_json(args.spec)
    n = max(len(parse_string(args.string)) // 2, 1) if getattr(args, "string", None) else 16
    if args.model == "haar":
        return cumulants.CumulantSpec.haar_unitary(n)
    return cumulants.CumulantSpec.circular(n)


def _measure(args) -> mehler.DiscreteMeasure:
    if args.measure:
        return mehler.DiscreteMeasure.from_json(args.measure)
    if args.three_point is not None:
        return mehler.DiscreteMeasure.three_point(args.three_point, args.lam)
    return mehler.DiscreteMeasure.two_point(args.lam)


def cmd_nc_count(args) -> str:
    s = parse_string(args.string)
    return _emit({"nc2": noncrossing.count_nc2(s), "nc": noncrossing.count_nc_alternating(s)})


def cmd_nc_enum(args) -> str:
    if args.string is not None:
        s = parse_string(args.string)
        parts = noncrossing.enumerate_nc2(s) if args.pairings else noncrossing.enumerate_nc_alternating(s)
    elif args.n is not None:
        parts = noncrossing.enumerate_nc(args.n)
    else:
        raise DomainError("nc-enum needs --string or --n")
    text = [str(p) for p in parts]
    if args.format == "csv":
        return _rows_csv(["partition"], [[t] for t in text])
    return _emit(text)


def cmd_moment(args) -> str:
    s = parse_string(args.string)
    value = cumulants.rdiag_moment(_spec(args), s)
    return _emit({"string": str(s), "moment": fmt(value)})


def cmd_bounds_verify(args) -> str:
    reports = bounds.verify_bounds(args.max_len)
    if args.format == "csv":
        return bounds.reports_to_csv(reports)
    failures = [r.string for r in reports if not r.passed]
    return _emit({"max_len": args.max_len, "strings": len(reports), "failures": failures,
                  "pass": not failures})


def cmd_mehler_kernel(args) -> str:
    mu = _measure(args)
    pts = mu.points
    kernel = mehler.kernel_matrix(mu, args.r)
    if args.format == "csv":
        return _rows_csv(["x", "y", "value"],
                         [[fmt(x), fmt(y), fmt(kernel[a][b])]
                          for a, x in enumerate(pts) for b, y in enumerate(pts)])
    return _emit({"r": fmt(args.r), "points": [fmt(x) for x in pts],
                  "kernel": [[fmt(v) for v in row] for row in kernel]})


def cmd_markov_check(args) -> str:
    mu = _measure(args)
    grid = [Fraction(k, args.grid) for k in range(args.grid)]
    rows = mehler.markov_check(mu, grid)
    if args.format == "csv":
        return mehler.markov_rows_to_csv(rows)
    return _emit([{"r": fmt(row.r), "min_value": fmt(row.min_value), "markovian": row.markovian,
                   "consistent": row.consistent} for row in rows])


def _semigroup_measures(args, word) -> dict:
    given = {}
    for item in args.measure or []:
        key, _, body = item.partition("=")
        given[int(key)] = mehler.DiscreteMeasure.from_json(body)
    semicircle = cumulants.even_moments(cumulants.CumulantSpec.circular(len(word) + 1),
                                        2 * len(word) + 2)
    return {j: given.get(j, semicircle) for j, _ in word.letters}


def cmd_semigroup_apply(args) -> str:
    w = semigroup.parse_word(args.word)
    if args.extension == "generic":
        result = semigroup.generic_Dt(w)
    else:
        result = semigroup.markov_Tt(w, _semigroup_measures(args, w))
    return result.to_json() + "\n"


def cmd_scan(args) -> str:
    grid = normlab.log_grid(args.t_min, args.t_max, args.points)
    spec = cumulants.CumulantSpec.from_json(args.spec) if args.spec else None
    model = "custom" if spec is not None else args.model
    result = normlab.ultracontractive_scan(normlab.ScanConfig(tuple(grid), args.c, args.p, model, spec))
    if args.format == "csv":
        return result.to_csv()
    return result.fits_json() + "\n"


def cmd_sum_exp(args) -> str:
    grid = normlab.log_grid(args.t_min, args.t_max, args.points)
    return _emit(normlab.sum_exp_slope(args.q, grid, args.c).to_dict())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdsemi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, tabular=False):
        p = sub.add_parser(name)
        p.set_defaults(func=fn)
        if tabular:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    def measure_flags(p):
        p.add_argument("--measure", help='JSON {"atoms": [{"x": "p/q", "w": "p/q"}]}')
        p.add_argument("--three-point", type=_fraction, metavar="A")
        p.add_argument("--lam", type=_fraction, default=Fraction(1))

    p = add("nc-count", cmd_nc_count)
    p.add_argument("--string", required=True)

    p = add("nc-enum", cmd_nc_enum, tabular=True)
    p.add_argument("--string")
    p.add_argument("--n", type=int)
    p.add_argument("--pairings", action="store_true")

    p = add("moment", cmd_moment)
    p.add_argument("--string", required=True)
    p.add_argument("--model", choices=("circular", "haar"), default="circular")
    p.add_argument("--spec", help='JSON {"kind": ..., "d": ["p/q", ...]}')

    p = add("bounds-verify", cmd_bounds_verify, tabular=True)
    p.add_argument("--max-len", type=int, default=12)

    p = add("mehler-kernel", cmd_mehler_kernel, tabular=True)
    measure_flags(p)
    p.add_argument("--r", type=_fraction, required=True)

    p = add("markov-check", cmd_markov_check, tabular=True)
    measure_flags(p)
    p.add_argument("--grid", type=int, default=10, help="r = k/GRID for k < GRID")

    p = add("semigroup-apply", cmd_semigroup_apply)
    p.add_argument("--word", required=True)
    p.add_argument("--extension", choices=("generic", "markov"), default="markov")
    p.add_argument("--measure", action="append",
                   help="J=<measure JSON>; generators without one use the semicircle")

    p = add("scan", cmd_scan, tabular=True)
    p.add_argument("--model", choices=("circular", "haar"), default="circular")
    p.add_argument("--spec")
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--t-min", type=float, default=0.005)
    p.add_argument("--t-max", type=float, default=0.05)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--c", type=float, default=40)

    p = add("sum-exp", cmd_sum_exp)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t-min", type=float, default=0.005)
    p.add_argument("--t-max", type=float, default=0.05)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--c", type=float, default=40)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        out.write(args.func(args))
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GUARD
    except (DomainError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
