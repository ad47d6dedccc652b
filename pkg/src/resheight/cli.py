"""Command-line front end: ``resheight <subcommand> [--out json|csv] [--quiet]``.

Exit codes: 0 success, 1 a verification suite reported failures, 2 usage
error, 3 request outside a feasibility envelope (``RESHEIGHT_NMAX`` widens
the default n-envelopes).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .errors import DomainError, FeasibilityError, UnsupportedIndexError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_FEASIBILITY = 0, 1, 2, 3


def _emit(rows: List[Dict[str, Any]], fmt: str, out, meta: Optional[Dict[str, Any]] = None) -> None:
    if fmt == "csv":
        if not rows:
            return
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(v) for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        doc = dict(meta or {})
        doc["rows"] = rows
        out.write(json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n")


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


def _big(v: int):
    # JSON numbers beyond 2^53 are lossy in many readers
    return str(v) if abs(v) > 2**53 else v


# ---------------------------------------------------------------- subcommands


def cmd_expand(args, out) -> int:
    from .bigpoly import height
    from .sylvester import SylvesterSpec, expand_resultant

    spec = SylvesterSpec(args.m, args.n)
    res = expand_resultant(spec, engine=args.engine)
    if args.out == "csv":
        out.write(res.to_csv())
        return EXIT_OK
    doc = {"m": args.m, "n": args.n, "height": _big(height(res)), "terms": len(res.terms),
           "variables": spec.universe.names()}
    if not args.quiet:
        doc["poly"] = res.to_records()
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_quad(args, out) -> int:
    from .quad import quad_height

    hi = args.to or args.n
    rows = []
    for n in range(args.n, hi + 1):
        r = quad_height(n)
        rows.append({"n": n, "A_n": r.A_n, "height": _big(r.height),
                     "monomial": f"g0 g{n} f0^{r.A_n} f1^{n - 2 * r.A_n} f2^{r.A_n}"})
    _emit(rows, args.out, out)
    return EXIT_OK


def cmd_cubic(args, out) -> int:
    from . import cubic

    n = args.n
    ls = [args.l] if args.l is not None else list(range(n + 1))
    rows = []
    for l in ls:
        r = cubic.Hl_max(l, n, args.method)
        rows.append({"n": n, "l": l, "H_l": _big(r.value), "method": r.method,
                     "argmax": [list(i) for i in sorted(r.argmax)]})
    meta = {"n": n}
    if args.height:
        meta["height"] = _big(cubic.cubic_height(n))
    _emit(rows, args.out, out, meta)
    return EXIT_OK


def cmd_tables(args, out) -> int:
    rows = []
    if args.which == "an":
        from .quad import compute_A

        for n in range(3, (args.n_max or 99) + 1):
            rows.append({"n": n, "A_n": compute_A(n)})
    else:
        from .cubic import hl_argmax_table

        for n in range(1, (args.n_max or 19) + 1):
            rows.append({"n": n, "argmax_l": sorted(hl_argmax_table(n, args.method))})
    _emit(rows, args.out, out, {"table": args.which})
    return EXIT_OK


def cmd_asym(args, out) -> int:
    from .asymptotics import error_series

    ser = error_series(args.case, args.n_lo, args.n_hi, args.step)
    if args.out == "csv":
        out.write(ser.to_csv())
        return EXIT_OK
    meta = {"case": args.case}
    if len(ser.rows) >= 2:
        meta["decay_slope"] = round(ser.decay_slope(), 6)
    rows = [{"n": r.n, "exact": _big(r.exact), "log_estimate": round(r.log_estimate, 12), "ratio": round(r.ratio, 15)}
            for r in ser.rows]
    _emit(rows, "json", out, meta)
    return EXIT_OK


def cmd_constants(args, out) -> int:
    import mpmath

    from .asymptotics import constants, identity_checks

    rows = []
    for name, c in sorted(constants().items()):
        rows.append({"name": name, "value": mpmath.nstr(c.value, args.digits), "printed": c.printed or "",
                     "matches_printed": c.matches_printed(), "defining_poly": list(c.defining_poly)})
    rep = identity_checks()
    meta = {"identities_ok": rep.ok, "weight_sum": mpmath.nstr(rep.weight_sum, 20)}
    _emit(rows, args.out, out, meta)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import SUITES, monotonic_probe, run_suite

    names = SUITES if not args.suites or "all" in args.suites else args.suites
    reports = [run_suite(s, n_max=args.n_max) for s in names]
    failed = any(not r.ok for r in reports)
    obs = []
    if args.monotonic:
        for case, nm in (("cubic", 12), ("quad", 25)):
            m = monotonic_probe(nm, case)
            obs.append({"probe": f"monotonic-{case}", "n_max": nm, "first_violation": m.first_violation})
    if args.out == "csv":
        rows = [{"suite": r.suite, "cases": r.cases, "failures": len(r.failures), "ok": r.ok} for r in reports]
        _emit(rows, "csv", out)
    else:
        doc = {"ok": not failed, "suites": [r.to_dict(args.time) for r in reports], "observations": obs}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if not args.quiet:
        for r in reports:
            print(f"{r.suite}: {r.cases} cases, {len(r.failures)} failures", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_conjecture(args, out) -> int:
    from .verify import conjecture_probe

    rows = []
    for n in range(args.n_min, args.n_max + 1):
        c = conjecture_probe(args.m, n)
        rows.append({"m": c.m, "n": c.n, "full_height": _big(c.full_height),
                     "binomial_height": _big(c.binomial_height), "equal": c.equal})
    # observational: unequal rows are reported, never turned into a failure exit
    _emit(rows, args.out, out, {"m": args.m})
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand; the subcommand
    # copy uses SUPPRESS so it does not clobber a value given up front.
    p = argparse.ArgumentParser(prog="resheight", description="Exact heights of generic Sylvester resultants.")
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--quiet", action="store_true", help="suppress logging and bulky payloads")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("expand", parents=[common], help="expand Res(f, g) for deg f = m, deg g = n")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--engine", choices=("laplace", "naive"), default="laplace")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("quad", parents=[common], help="quadratic-case height and A_n")
    s.add_argument("n", type=int)
    s.add_argument("--to", type=int, help="run n..TO")
    s.set_defaults(func=cmd_quad)

    s = sub.add_parser("cubic", parents=[common], help="H_l(n) values for the cubic case")
    s.add_argument("n", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--method", choices=("auto", "formula", "expand"), default="auto")
    s.add_argument("--height", action="store_true", help="also expand the full resultant")
    s.set_defaults(func=cmd_cubic)

    s = sub.add_parser("tables", parents=[common], help="regenerate the A_n or max-H_l tables")
    s.add_argument("which", choices=("an", "hl"))
    s.add_argument("--n-max", type=int)
    s.add_argument("--method", choices=("auto", "formula", "expand"), default="auto")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("asym", parents=[common], help="exact height / asymptotic main term")
    s.add_argument("case", choices=("quad", "cubic"))
    s.add_argument("--n-lo", type=int, default=100)
    s.add_argument("--n-hi", type=int, default=2000)
    s.add_argument("--step", type=int, default=100)
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("constants", parents=[common], help="algebraic constants at high precision")
    s.add_argument("--digits", type=int, default=30)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("suites", nargs="*", help="suite names or 'all'")
    s.add_argument("--n-max", type=int, help="override each suite's default n-envelope")
    s.add_argument("--time", action="store_true", help="include wall time (breaks byte-for-byte reproducibility)")
    s.add_argument("--monotonic", action="store_true", help="also report the H(n) > H(n-1) probes")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("conjecture", parents=[common], help="full vs binomial-g height")
    s.add_argument("m", type=int)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=12)
    s.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    from .verify import SUITES

    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(levelname)s %(message)s")
    if args.cmd == "verify":
        bad = [s for s in args.suites if s != "all" and s not in SUITES]
        if bad:
            parser.error(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}")
    try:
        return args.func(args, out)
    except FeasibilityError as e:
        print(f"resheight: {e}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except (DomainError, UnsupportedIndexError, ValueError) as e:
        print(f"resheight: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
