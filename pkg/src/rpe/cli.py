"""Command-line front end: ``rpe <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra.lll import recognize_min_poly
from .algebra.radical import radical_eval
from .chudnovsky import eval_chudnovsky_binsplit, terms_for_digits
from .closed_forms import r243_params, radical
from .elliptic import BISECT, THETA, elliptic_alpha, lambda_star, pi_reference
from .errors import DomainError, RPEError
from .numtheory import class_number_forms, class_number_sum
from .params import SeriesParams, bg_series_params, digits_per_term, params_negative, params_positive
from .precision import PrecisionContext, format_real, parse_real
from .series import partial_sum, select_terms
from .verify import REPORTS, SUITE_VERSION, VERIFIERS, verify_all

log = logging.getLogger("rpe")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3
PI_METHODS = ("chudnovsky", "bg163", "r243", "agm")
FALLBACK_DIGITS = 100


class UsageError(Exception):
    pass


def default_digits() -> int:
    raw = os.environ.get("RPE_DIGITS")
    if raw is None:
        return FALLBACK_DIGITS
    try:
        return _positive_int(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"RPE_DIGITS: {exc}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _index(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _series_pi(p: SeriesParams, ctx: PrecisionContext):
    N = select_terms(p, ctx.digits + ctx.guard, ctx)
    with ctx.local():
        return 1 / partial_sum(p, N, ctx), N


def compute_pi(method: str, digits: int, workers: int = 1) -> tuple[str, int | None]:
    """pi to ``digits`` significant digits and the number of series terms used."""
    if method == "chudnovsky":
        return eval_chudnovsky_binsplit(digits, workers), terms_for_digits(digits)
    ctx = PrecisionContext(digits)
    if method == "agm":
        return format_real(pi_reference(ctx), digits, ctx), None
    if method == "bg163":
        with ctx.local():
            J = radical_eval(radical("J163"), None, ctx).real
            T = radical_eval(radical("T163"), None, ctx).real
        p = bg_series_params(J, T, 163, ctx)
    elif method == "r243":
        z, a, b = r243_params(ctx)
        p = SeriesParams(243, "negative", z, a, b)
    else:
        raise UsageError(f"unknown method {method!r}")
    value, N = _series_pi(p, ctx)
    return format_real(value, digits, ctx), N


def cmd_pi(args) -> int:
    value, N = compute_pi(args.method, args.digits, args.workers)
    _emit(args, {"method": args.method, "digits": args.digits, "terms": N, "value": value}, [value])
    return EXIT_OK


def cmd_lambda_star(args) -> int:
    ctx = PrecisionContext(args.digits)
    value = format_real(lambda_star(args.r, args.method, ctx), args.digits, ctx)
    _emit(args, {"r": str(args.r), "method": args.method, "digits": args.digits, "value": value}, [value])
    return EXIT_OK


def cmd_alpha(args) -> int:
    ctx = PrecisionContext(args.digits)
    value = format_real(elliptic_alpha(args.r, ctx), args.digits, ctx)
    _emit(args, {"r": str(args.r), "digits": args.digits, "value": value}, [value])
    return EXIT_OK


def cmd_params(args) -> int:
    ctx = PrecisionContext(args.digits)
    p = params_positive(args.r, ctx) if args.family == "pos" else params_negative(args.r, ctx)
    fields = {
        "z": format_real(p.z, args.digits, ctx),
        "a": format_real(p.a, args.digits, ctx),
        "b": format_real(p.b, args.digits, ctx),
        "digits_per_term": format_real(digits_per_term(p.z, ctx), 6, ctx),
    }
    payload = {"r": str(args.r), "family": p.family, "digits": args.digits, **fields}
    _emit(args, payload, [f"{k}={v}" for k, v in fields.items()])
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = PrecisionContext(args.digits)
    reports = verify_all(ctx) if args.target == "all" else [VERIFIERS[args.target](ctx)]
    for r in reports:
        log.info("%s: %.3f s", r.name, r.timings.get("total_s", 0.0))
    overall = all(r.overall for r in reports)
    if args.json:
        if args.target == "all":
            doc = {
                "suite_version": SUITE_VERSION,
                "precision": args.digits,
                "overall": overall,
                "reports": [r.to_dict() for r in reports],
            }
        else:
            doc = reports[0].to_dict()
        print(json.dumps(doc, indent=2))
    else:
        print("\n\n".join(r.to_text() for r in reports))
    return EXIT_OK if overall else EXIT_FAIL


def _read_value_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if not tokens:
        raise UsageError(f"{path} is empty")
    return tokens[0]


def cmd_recognize(args) -> int:
    ctx = PrecisionContext(args.digits)
    text = args.value if args.value is not None else _read_value_file(args.file)
    v = parse_real(text, ctx)
    floor = 20 * args.degree + 100
    if args.digits < floor:
        log.warning("precision %d is below the heuristic floor %d for degree %d", args.digits, floor, args.degree)
    poly = recognize_min_poly(v, args.degree, ctx)
    result = poly.to_text() if poly is not None else None
    _emit(args, {"degree": args.degree, "digits": args.digits, "polynomial": result}, [result or "none"])
    return EXIT_OK


def cmd_classnum(args) -> int:
    h = class_number_sum(args.d)
    lines = [str(h)]
    payload = {"d": args.d, "h": h}
    code = EXIT_OK
    if args.oracle:
        forms = class_number_forms(args.d)
        lines.append(f"forms={forms}")
        payload["forms"] = forms
        if forms != h:
            log.error("symbol sum %d disagrees with form count %d", h, forms)
            code = EXIT_FAIL
    _emit(args, payload, lines)
    return code


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in PI_METHODS]
    if bad or not methods:
        raise UsageError(f"--methods must list names from {','.join(PI_METHODS)}; got {args.methods!r}")
    ctx = PrecisionContext(args.digits)
    ref = format_real(pi_reference(ctx), args.digits, ctx)
    rows = []
    for m in methods:
        t0 = time.perf_counter()
        value, N = compute_pi(m, args.digits, args.workers)
        dt = time.perf_counter() - t0
        agree = next((i for i, (u, v) in enumerate(zip(value, ref)) if u != v), min(len(value), len(ref)))
        rows.append({"method": m, "seconds": round(dt, 6), "terms": N, "matching_chars": agree})
    if args.json:
        print(json.dumps({"digits": args.digits, "results": rows}, indent=2))
    else:
        print(f"{'method':<12}{'seconds':>12}{'terms':>8}{'match':>10}")
        for r in rows:
            print(f"{r['method']:<12}{r['seconds']:>12.4f}{str(r['terms'] or '-'):>8}{r['matching_chars']:>10}")
    return EXIT_OK


def build_parser(digits_default: int | None = None) -> argparse.ArgumentParser:
    digits_default = default_digits() if digits_default is None else digits_default
    workers_default = os.cpu_count() or 1
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="rpe",
        description="Level-1 Ramanujan-type series for 1/pi: evaluation, certification and recognition.",
        formatter_class=fmt,
        epilog="RPE_DIGITS overrides the default precision.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, formatter_class=fmt)
        p.set_defaults(func=fn)
        return p

    def digits(p):
        p.add_argument("--digits", type=_positive_int, default=digits_default, help="decimal digits of precision")

    def as_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = add("pi", cmd_pi, "compute pi")
    p.add_argument("--method", choices=PI_METHODS, default="chudnovsky")
    digits(p)
    p.add_argument("--workers", type=_positive_int, default=workers_default, help="processes for binary splitting")
    as_json(p)

    p = add("lambda-star", cmd_lambda_star, "singular modulus lambda*(R)")
    p.add_argument("r", type=_index, metavar="R")
    digits(p)
    p.add_argument("--method", choices=(THETA, "bisect"), default=THETA)
    as_json(p)

    p = add("alpha", cmd_alpha, "elliptic alpha(R)")
    p.add_argument("r", type=_index, metavar="R")
    digits(p)
    as_json(p)

    p = add("params", cmd_params, "series parameters (z, a, b) for index R")
    p.add_argument("r", type=_index, metavar="R")
    p.add_argument("--family", choices=("pos", "neg"), default="pos")
    digits(p)
    as_json(p)

    p = add("verify", cmd_verify, "run a certification report")
    p.add_argument("target", choices=(*REPORTS, "all"))
    digits(p)
    as_json(p)

    p = add("recognize", cmd_recognize, "find a minimal polynomial by LLL")
    p.add_argument("--degree", type=_positive_int, required=True)
    digits(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--value", help="decimal value")
    src.add_argument("--file", help="file whose first token is the decimal value")
    as_json(p)

    p = add("classnum", cmd_classnum, "class number h(-D)")
    p.add_argument("d", type=int, metavar="D")
    p.add_argument("--oracle", action="store_true", help="also count reduced forms and compare")
    as_json(p)

    p = add("bench", cmd_bench, "time pi methods against the AGM reference")
    digits(p)
    p.add_argument("--methods", default=",".join(PI_METHODS), help="comma-separated list")
    p.add_argument("--workers", type=_positive_int, default=workers_default)
    as_json(p)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"rpe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "method", None) == "bisect":
        args.method = BISECT
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"rpe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RPEError, ArithmeticError) as exc:
        print(f"rpe: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())
