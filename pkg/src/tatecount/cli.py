"""Command-line front end.

Exit codes: 0 success/agree, 1 disagreement, non-Tate quotient, or (with
``--expect-polynomial``) no polynomial fit, 2 usage or parse errors, 3 budget
refusal.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .analysis import (
    NO_POLYNOMIAL_FIT,
    InsufficientPoints,
    check_decomposition,
    check_semismall,
    detect_polynomial,
    enumeration_record,
    evaluate_prime,
    verify_space,
)
from .cache import DEFAULT_PATH, CountCache
from .catalog import InvalidParameter, space_class, space_formula
from .enumeration import DEFAULT_MAX_CANDIDATES, Budget, BudgetExceeded, CountRecord
from .ffield import is_prime
from .lefschetz import InexactDivision, eval_at
from .parser import ParseError, parse_space

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

REPORT_SPACES = [
    "GL(2)", "SL(2)", "Sp(2)", "Det(2)", "MatRank(3,1)", "B(2)", "B(4)", "PAlt(4)", "Pf(4)",
    "AltRank(4,1)", "XSp(1,2)", "LSp(1)", "LSp(2)", "SLrep(2;1)", "GLmodO(2,+)", "GLmodO(2,-)",
    "GLmodO(3)", "Inc(3)", "Y(3)", "Sbar(3,1)", "Sphere(3)",
]


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int, **extra):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code
        self.extra = extra


def _primes(text: str) -> list[int]:
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    for p in ps:
        if not is_prime(p) or p == 2 or p > 251:
            raise argparse.ArgumentTypeError(f"{p} is not an odd prime <= 251")
    if not ps:
        raise argparse.ArgumentTypeError("empty prime list")
    return ps


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime {text!r}") from None
    if not is_prime(p) or p > 251:
        raise argparse.ArgumentTypeError(f"{p} is not a prime <= 251")
    return p


def _budget(text: str) -> Budget:
    if text == "unlimited":
        return Budget(DEFAULT_MAX_CANDIDATES, allow_override=True)
    try:
        return Budget(int(float(text)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be an integer or 'unlimited', got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--cache", default=DEFAULT_PATH, help="JSON-lines cache file")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--budget", type=_budget, default=Budget(),
                        help="max enumeration candidates, or 'unlimited'")

    parser = _Parser(prog="tatecount", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("class", parents=[common], help="class of a space in Z[L]")
    p.add_argument("space")

    p = sub.add_parser("count", parents=[common], help="point count over F_q")
    p.add_argument("space")
    p.add_argument("--q", type=_prime, required=True)
    p.add_argument("--method", choices=["auto", "enumeration", "formula", "symbolic"], default="auto")

    for verb, hlp in (("verify", "cross-check class, formula and enumeration"),
                      ("detect", "fit a counting polynomial")):
        p = sub.add_parser(verb, parents=[common], help=hlp)
        p.add_argument("space")
        p.add_argument("--primes", type=_primes, default=[3, 5, 7])
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--expect-polynomial", action="store_true")

    p = sub.add_parser("semismall", parents=[common], help="semi-smallness table of the incidence resolution")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("decomp", parents=[common], help="point-count shadow of the incidence decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primes", type=_primes, default=[3, 5])

    p = sub.add_parser("report", parents=[common], help="verify the built-in catalogue of spaces")
    p.add_argument("--primes", type=_primes, default=[3, 5])
    p.add_argument("--expect-polynomial", action="store_true")
    return parser


def _space(text: str):
    try:
        return parse_space(text)
    except ParseError as exc:
        raise CliError("parse_error", str(exc), EXIT_USAGE, column=exc.column, expected=exc.expected) from None


def _cache(args):
    return None if args.no_cache else CountCache(args.cache)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[("" if c is None else str(c)) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def cmd_class(args, out):
    expr = _space(args.space)
    try:
        klass = space_class(expr)
    except InexactDivision as exc:
        payload = {"space": str(expr), "class": None, "scalar_denominator": None, "tate": False,
                   "note": f"quotient class is not a Tate polynomial (remainder {exc.remainder})"}
        code = EXIT_NEGATIVE
    else:
        note = None if klass is not None else "no class catalogued; see count/verify for counting data"
        payload = {"space": str(expr), "class": None if klass is None else str(klass),
                   "scalar_denominator": None if klass is None else klass.denominator,
                   "tate": None if klass is None else True, "note": note}
        code = EXIT_OK
    if args.json:
        out(json.dumps(payload))
    else:
        out(f"{payload['space']}: {payload['class'] if payload['class'] else payload['note']}")
    return code


def cmd_count(args, out):
    expr = _space(args.space)
    q = args.q
    cache = _cache(args)
    rec = None
    cached = False
    methods = ["enumeration", "formula", "symbolic"] if args.method == "auto" else [args.method]
    for method in methods:
        if method == "enumeration":
            if cache is not None and cache.get(str(expr), q, "enumeration") is not None:
                cached = True
            try:
                rec = enumeration_record(expr, q, args.budget, cache)
            except BudgetExceeded as exc:
                if args.method == "enumeration":
                    raise CliError("budget_exceeded", str(exc), EXIT_BUDGET) from None
                continue
            except ValueError as exc:
                raise CliError("invalid_parameter", str(exc), EXIT_USAGE) from None
        else:
            t0 = time.perf_counter()
            if method == "formula":
                val = space_formula(expr, q)
            else:
                try:
                    klass = space_class(expr)
                except InexactDivision as exc:
                    raise CliError("inexact_division",
                                   f"quotient class is not a Tate polynomial: {exc}", EXIT_NEGATIVE) from None
                val = None if klass is None else eval_at(klass, q)
            if val is not None:
                val = int(val) if val.denominator == 1 else val
                rec = CountRecord(str(expr), q, val, method, (time.perf_counter() - t0) * 1000)
        if rec is not None:
            break
    if rec is None:
        raise CliError("invalid_parameter", f"no {args.method} count available for {expr}", EXIT_USAGE)
    if args.json:
        out(json.dumps({**rec.to_json(), "cached": cached}))
    else:
        out(str(rec.count))
    return EXIT_OK


def _verify_text(rep) -> str:
    rows = [[r.q, r.symbolic, r.formula, r.enumeration, r.error or ""] for r in rep.records]
    lines = [f"space: {rep.space}",
             f"class: {rep.klass if rep.klass is not None else (rep.class_note or '-')}",
             _table(rows, ["q", "symbolic", "formula", "enumeration", "note"]),
             f"verdict: {rep.verdict}" + ("" if rep.cross_checked else " (some primes had a single source)")]
    lines.append(_verdict_text(rep.poly_verdict, rep.fit_error))
    return "\n".join(lines)


def _verdict_text(v, fit_error=None) -> str:
    if v is None:
        return f"polynomial fit: not attempted ({fit_error})"
    fitted = f" {v.fitted}" if v.fitted is not None else ""
    return (f"polynomial fit: {v.status}{fitted}; fit primes {v.witnesses}, "
            f"held out {v.validation_primes}")


def _verify_exit(rep, expect_polynomial: bool) -> int:
    if rep.verdict != "agree":
        return EXIT_NEGATIVE
    if expect_polynomial and (rep.poly_verdict is None or rep.poly_verdict.status == NO_POLYNOMIAL_FIT):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify(args, out):
    expr = _space(args.space)
    rep = verify_space(expr, args.primes, args.budget, args.max_degree, cache=_cache(args))
    out(json.dumps(rep.to_json()) if args.json else _verify_text(rep))
    return _verify_exit(rep, args.expect_polynomial)


def cmd_detect(args, out):
    expr = _space(args.space)
    cache = _cache(args)
    try:
        klass = space_class(expr)
    except InexactDivision:
        klass = None
    records = [evaluate_prime(expr, q, klass, args.budget, cache=cache) for q in args.primes]
    try:
        verdict = detect_polynomial(expr, records, klass, args.max_degree, args.budget, cache)
    except InsufficientPoints as exc:
        raise CliError("usage", str(exc), EXIT_USAGE) from None
    if args.json:
        out(json.dumps({"space": str(expr), "poly_verdict": verdict.to_json()}))
    else:
        out(f"space: {expr}\n" + _verdict_text(verdict))
    if args.expect_polynomial and verdict.status == NO_POLYNOMIAL_FIT:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_semismall(args, out):
    rows, dim_I = check_semismall(args.n)
    ok = all(r.passed for r in rows)
    if args.json:
        out(json.dumps({"n": args.n, "dim_I": dim_I, "semismall": ok, "strata": [
            {"rank": r.stratum.rank, "dim": r.stratum.dim, "fiber_dim": r.stratum.fiber_dim,
             "defect": r.stratum.defect, "passed": r.passed, "equality": r.equality} for r in rows]}))
    else:
        out(f"n = {args.n}, dim I = {dim_I}")
        out(_table([[r.stratum.rank, r.stratum.dim, r.stratum.fiber_dim, r.stratum.defect,
                     "ok" if r.passed else "FAIL", "=" if r.equality else ""] for r in rows],
                   ["r", "d_r", "s_r", "Delta", "check", "eq"]))
        out("semi-small" if ok else "NOT semi-small")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_decomp(args, out):
    rows = check_decomposition(args.n, args.primes, args.budget)
    ok = all(r.holds for r in rows)
    if args.json:
        out(json.dumps({"n": args.n, "holds": ok, "rows": [
            {"q": r.q, "incidence": str(r.incidence), "hypersurface": str(r.hypersurface),
             "corank2": str(r.corank2), "bundle": str(r.bundle), "holds": r.holds} for r in rows]}))
    else:
        out(_table([[r.q, r.incidence, r.hypersurface, r.corank2, r.bundle, "ok" if r.holds else "FAIL"]
                    for r in rows], ["q", "#I", "#Y", f"#Sbar_{args.n - 2}", "#P x #P", "I = Y + q*Sbar"]))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_report(args, out):
    cache = _cache(args)
    reps = [verify_space(parse_space(s), args.primes, args.budget, cache=cache) for s in REPORT_SPACES]
    if args.json:
        out(json.dumps({"primes": args.primes, "reports": [r.to_json() for r in reps]}))
    else:
        rows = []
        for r in reps:
            v = r.poly_verdict
            rows.append([r.space, str(r.klass) if r.klass is not None else "-", r.verdict,
                         v.status if v else "-", v.denominator if v and v.denominator else ""])
        out(_table(rows, ["space", "class", "verdict", "counting function", "denominator"]))
    return max(_verify_exit(r, args.expect_polynomial) for r in reps)


COMMANDS = {
    "class": cmd_class,
    "count": cmd_count,
    "verify": cmd_verify,
    "detect": cmd_detect,
    "semismall": cmd_semismall,
    "decomp": cmd_decomp,
    "report": cmd_report,
}


def run(argv: list[str], out=None, err=None) -> int:
    """Execute one command; returns the exit code."""
    out = out or (lambda s: print(s))
    err = err or (lambda s: print(s, file=sys.stderr))
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.verb](args, out)
    except CliError as exc:
        _report_error(err, as_json, exc.code, str(exc), exc.extra)
        return exc.exit_code
    except BudgetExceeded as exc:
        _report_error(err, as_json, "budget_exceeded", str(exc), {})
        return EXIT_BUDGET
    except InvalidParameter as exc:
        _report_error(err, as_json, "invalid_parameter", str(exc), {})
        return EXIT_USAGE


def _report_error(err, as_json, code, message, extra):
    if as_json:
        err(json.dumps({"error": code, "message": message, **extra}))
    else:
        err(f"error[{code}]: {message}")


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
