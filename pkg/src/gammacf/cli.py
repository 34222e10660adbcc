"""Command-line front end: solve | verify | bracket | scan | compare | rates.

Exit codes: 0 all checks passed, 1 a mathematical verification failed or
precision ran out, 2 invalid invocation.  Output goes to stdout
(diagnostics to stderr) as plain text, JSON (schema 1), or RFC-4180 CSV;
rationals are serialized as exact "p/q" strings and interval endpoints as
directed-rounded decimal strings, so reports are reproducible
byte-for-byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .approximant import (
    MAX_REFERENCE_DEPTH,
    reference_coefficients,
    reference_rate_constants,
    validate_closed_forms,
)
from .evaluate import (
    DERIV_BOUND_R10,
    DERIV_BOUND_R11,
    DerivativeBoundReport,
    InvalidIndexError,
    InvalidRangeError,
    comparison_table,
    derivative_bound_check,
    empirical_rate,
    gamma_bracket,
    scan_inequalities,
    scan_monotonicity,
    transcription_report,
)
from .intervals import (
    DEFAULT_BITS,
    ESCALATION_CAP_BITS,
    PrecisionExhausted,
    PrecisionInterval,
    decimal_lower,
    decimal_upper,
)
from .solver import (
    AffineCheckFailed,
    NoRootError,
    VerificationFailed,
    difference_report,
    solve_all,
)

SolverError = (AffineCheckFailed, NoRootError, VerificationFailed)

SCHEMA_VERSION = 1

_DERIVATIVE_POINTS = (1, 2, 10, 100, 10**6)
_IDENTITY_DEPTHS = (8, 9, 13)


def _default_bits() -> int:
    raw = os.environ.get("GAMMA_CF_BITS", "")
    try:
        return int(raw) if raw else DEFAULT_BITS
    except ValueError:
        return DEFAULT_BITS


def _rat(x: Fraction) -> str:
    return str(x)


def _interval_fields(iv: PrecisionInterval, digits: int) -> dict:
    return {
        "lo": decimal_lower(iv.lo, digits),
        "hi": decimal_upper(iv.hi, digits),
        "precision_bits": iv.bits,
    }


def _emit(args, payload: dict, csv_rows: tuple[list[str], list[list[str]]]):
    """Render one report in the selected format."""
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv":
        header, rows = csv_rows
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        _emit_plain(payload)


def _emit_plain(payload: dict, indent: int = 0):
    pad = "  " * indent
    for key, value in payload.items():
        if key == "schema":
            continue
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_plain(value, indent + 1)
        elif isinstance(value, list):
            print(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    line = "  ".join(f"{k}={v}" for k, v in item.items())
                    print(f"{pad}  {line}")
                else:
                    print(f"{pad}  {item}")
        else:
            print(f"{pad}{key}: {value}")


# --- solve --------------------------------------------------------------------


def _cmd_solve(args) -> int:
    k_max = args.kmax
    failure = None
    try:
        result = solve_all(k_max, guard=args.guard)
    except SolverError as exc:
        if k_max <= MAX_REFERENCE_DEPTH:
            raise
        # beyond the stored table: report the attempt honestly
        failure = f"{type(exc).__name__}: {exc}"
        result = solve_all(MAX_REFERENCE_DEPTH, guard=args.guard)
    solved = len(result.coefficients)
    ref_a = reference_coefficients(min(k_max, MAX_REFERENCE_DEPTH))
    ref_c = reference_rate_constants(min(k_max, MAX_REFERENCE_DEPTH))
    rows = []
    all_match = True
    for i in range(solved):
        known = i < MAX_REFERENCE_DEPTH
        a_ok = known and result.coefficients[i] == ref_a[i]
        c_ok = known and result.rate_constants[i] == ref_c[i]
        if known:
            all_match = all_match and a_ok and c_ok
        rows.append(
            {
                "k": i + 1,
                "a": _rat(result.coefficients[i]),
                "a_expected": _rat(ref_a[i]) if known else "",
                "C": _rat(result.rate_constants[i]),
                "C_expected": _rat(ref_c[i]) if known else "",
                "method": result.steps[i].method,
                "verdict": "ok" if (a_ok and c_ok) else ("unverified" if not known else "MISMATCH"),
            }
        )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "solve",
        "k_max": k_max,
        "rows": rows,
        "pairing_holds": list(result.pairing_flags),
        "pass": all_match,
    }
    if failure is not None:
        payload["beyond_table_failure"] = failure
    header = ["k", "a", "a_expected", "C", "C_expected", "method", "verdict"]
    csv_rows = [[str(r[h]) for h in header] for r in rows]
    _emit(args, payload, (header, csv_rows))
    return 0 if all_match else 1


# --- verify -------------------------------------------------------------------


def _verify_appendix_rows() -> tuple[list[dict], bool]:
    report = validate_closed_forms()
    rows = [{"k": k, "matches": ok} for k, ok in sorted(report.items())]
    return rows, all(report.values())


def _verify_identity_rows() -> tuple[list[dict], bool]:
    c = reference_rate_constants()
    rows = [
        {
            "identity": "C10 == -DERIV_BOUND_R10/132",
            "holds": c[9] == -DERIV_BOUND_R10 / 132,
        },
        {
            "identity": "C11 == DERIV_BOUND_R11/156",
            "holds": c[10] == DERIV_BOUND_R11 / 156,
        },
    ]
    for depth in _IDENTITY_DEPTHS:
        rep = difference_report(reference_coefficients(depth))
        rows.append(
            {
                "identity": f"leading term at depth {depth}: l/(s-1) == C{depth}",
                "l": _rat(rep.leading_coeff),
                "s": rep.leading_order,
                "holds": rep.rate_constant == c[depth - 1]
                and rep.leading_order == depth + 2,
            }
        )
    return rows, all(r["holds"] for r in rows)


def _verify_bound_rows() -> tuple[list[dict], bool]:
    rows = []
    for target in ("f_r10", "g_r11"):
        for x in _DERIVATIVE_POINTS:
            rep: DerivativeBoundReport = derivative_bound_check(target, x)
            rows.append(
                {
                    "target": target,
                    "x": x,
                    "lower": _rat(rep.lower),
                    "neg_derivative": _rat(rep.neg_derivative),
                    "upper": _rat(rep.upper),
                    "holds": rep.holds,
                }
            )
    return rows, all(r["holds"] for r in rows)


def _cmd_verify(args) -> int:
    sections = {}
    ok = True
    if args.what in ("appendix", "all"):
        rows, good = _verify_appendix_rows()
        sections["appendix"] = rows
        ok = ok and good
    if args.what in ("identities", "all"):
        rows, good = _verify_identity_rows()
        sections["identities"] = rows
        ok = ok and good
    if args.what in ("bounds", "all"):
        rows, good = _verify_bound_rows()
        sections["derivative_bounds"] = rows
        ok = ok and good
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "what": args.what,
        **sections,
        "pass": ok,
    }
    header = ["section", "item", "verdict"]
    csv_rows = []
    for name, rows in sections.items():
        for r in rows:
            item = r.get("k") or r.get("identity") or f"{r.get('target')}@x={r.get('x')}"
            verdict = r.get("matches", r.get("holds"))
            csv_rows.append([name, str(item), "pass" if verdict else "FAIL"])
    _emit(args, payload, (header, csv_rows))
    return 0 if ok else 1


# --- bracket ------------------------------------------------------------------


def _agreed_prefix(lo: str, hi: str) -> str:
    out = []
    for a, b in zip(lo, hi):
        if a != b:
            break
        out.append(a)
    return "".join(out)


def _cmd_bracket(args) -> int:
    bracket = gamma_bracket(args.n, args.bits, cap=args.escalation_cap)
    digits = bracket.certified_digits + 5
    lo = decimal_lower(bracket.lower.lo, digits)
    hi = decimal_upper(bracket.upper.hi, digits)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "bracket",
        "n": bracket.n,
        "precision_bits": args.bits,
        "lower": _interval_fields(bracket.lower, digits),
        "upper": _interval_fields(bracket.upper, digits),
        "certified_digits": bracket.certified_digits,
        "agreed_prefix": _agreed_prefix(lo, hi),
        "pass": True,
    }
    header = ["n", "lower_lo", "upper_hi", "certified_digits", "agreed_prefix"]
    csv_rows = [[str(bracket.n), lo, hi, str(bracket.certified_digits), payload["agreed_prefix"]]]
    _emit(args, payload, (header, csv_rows))
    return 0


# --- scan ---------------------------------------------------------------------

_SCAN_DIGITS = 60


def _scan_report_payload(report, quantity: str):
    rows = [
        {
            "n": row.n,
            "quantity": quantity,
            "lower_bound": _rat(row.lower),
            "value_lo": decimal_lower(row.value_lo, _SCAN_DIGITS),
            "value_hi": decimal_upper(row.value_hi, _SCAN_DIGITS),
            "upper_bound": _rat(row.upper),
            "verdict": "pass" if row.ok else "FAIL",
        }
        for row in report.rows
    ]
    summary = {
        "target": report.target,
        "range": f"{report.start}:{report.end}",
        "checked": report.checked,
        "violations": len(report.violations),
        "escalations": report.escalations,
    }
    return summary, rows


_SCAN_QUANTITIES = {
    "lu2": "gamma - r_2(n)",
    "lu3": "r_3(n) - gamma",
    "r10": "gamma - r_10(n)",
    "r11": "r_11(n) - gamma",
    "mono10": "r_10(n) - r_10(n+1)",
    "mono11": "r_11(n) - r_11(n+1)",
}


def _cmd_scan(args) -> int:
    start, end = args.range
    if args.target in ("mono10", "mono11"):
        report = scan_monotonicity(
            int(args.target[4:]), (start, end), args.bits, cap=args.escalation_cap
        )
    else:
        report = scan_inequalities(
            args.target, (start, end), args.bits, cap=args.escalation_cap
        )
    summary, rows = _scan_report_payload(report, _SCAN_QUANTITIES[args.target])
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "scan",
        **summary,
        "rows": rows if args.format != "plain" else rows[:0],
        "violation_rows": [r for r in rows if r["verdict"] == "FAIL"],
        "pass": report.ok,
    }
    header = ["n", "quantity", "lower_bound", "value_lo", "value_hi", "upper_bound", "verdict"]
    csv_rows = [[str(r[h]) for h in header] for r in rows]
    _emit(args, payload, (header, csv_rows))
    return 0 if report.ok else 1


# --- rates --------------------------------------------------------------------


def _rate_tolerance(k: int) -> Fraction:
    return Fraction(1, 100) if k <= 8 else Fraction(2, 100)


def _default_rate_n(k: int) -> int:
    return 10**4 if k <= 8 else 10**3


def _cmd_rates(args) -> int:
    ks = [args.k] if args.k else list(range(1, MAX_REFERENCE_DEPTH + 1))
    reference = reference_rate_constants()
    rows = []
    ok = True
    for k in ks:
        n = args.n or _default_rate_n(k)
        value = empirical_rate(k, n, args.bits, ref_multiplier=args.ref_multiplier)
        expected = reference[k - 1]
        deviation = max(abs(value.lo - expected), abs(value.hi - expected))
        tol = _rate_tolerance(k)
        within = deviation <= tol * abs(expected)
        ok = ok and within
        rows.append(
            {
                "k": k,
                "n": n,
                "value_lo": decimal_lower(value.lo, 30),
                "value_hi": decimal_upper(value.hi, 30),
                "expected": _rat(expected),
                "tolerance": _rat(tol),
                "verdict": "pass" if within else "FAIL",
            }
        )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "rates",
        "rows": rows,
        "pass": ok,
    }
    header = ["k", "n", "value_lo", "value_hi", "expected", "tolerance", "verdict"]
    csv_rows = [[str(r[h]) for h in header] for r in rows]
    _emit(args, payload, (header, csv_rows))
    return 0 if ok else 1


# --- compare ------------------------------------------------------------------


def _cmd_compare(args) -> int:
    table = comparison_table(args.n, args.bits)
    rows = [
        {
            "sequence": row["sequence"],
            "claimed_order": row["claimed_order"],
            "abs_error_lo": decimal_lower(row["abs_error_lo"], 40),
            "abs_error_hi": decimal_upper(row["abs_error_hi"], 40),
        }
        for row in table
    ]
    readings = {}
    ok = True
    for tag in ("mortici", "chen_mortici", "mortici_chen_nu"):
        rep = transcription_report(tag, bits=args.bits)
        readings[tag] = {
            "selected": rep["selected"],
            "printed_achieves_order": rep["printed"]["achieves_order"],
            "corrected_achieves_order": rep["corrected"]["achieves_order"],
        }
        ok = ok and bool(rep["selected"])
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "compare",
        "n": args.n,
        "rows": rows,
        "ambiguous_readings": readings,
        "pass": ok,
    }
    header = ["sequence", "claimed_order", "abs_error_lo", "abs_error_hi"]
    csv_rows = [[str(r[h]) for h in header] for r in rows]
    _emit(args, payload, (header, csv_rows))
    return 0 if ok else 1


# --- parser -------------------------------------------------------------------


def _range_arg(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammacf",
        description=(
            "Exact derivation and certified numerical verification of "
            "continued-fraction approximations to the Euler-Mascheroni constant."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    bits_default = _default_bits()

    def add_common(p):
        p.add_argument("--bits", type=int, default=bits_default,
                       help=f"working precision in bits (default {bits_default})")
        p.add_argument("--escalation-cap", type=int, default=ESCALATION_CAP_BITS,
                       help="precision ceiling before giving up")
        p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p_solve = sub.add_parser("solve", help="re-derive the coefficient and rate tables")
    p_solve.add_argument("--kmax", type=int, default=MAX_REFERENCE_DEPTH)
    p_solve.add_argument("--guard", type=int, default=3)
    p_solve.add_argument("--beyond-paper", action="store_true",
                         help="allow depths past the stored reference table")
    add_common(p_solve)
    p_solve.set_defaults(handler=_cmd_solve)

    p_verify = sub.add_parser("verify", help="exact identity checks")
    p_verify.add_argument("what", choices=("appendix", "identities", "bounds", "all"),
                          nargs="?", default="all")
    add_common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_bracket = sub.add_parser("bracket", help="enclose gamma between r_10(n) and r_11(n)")
    p_bracket.add_argument("--n", type=int, required=True)
    add_common(p_bracket)
    p_bracket.set_defaults(handler=_cmd_bracket)

    p_scan = sub.add_parser("scan", help="certified inequality/monotonicity scans")
    p_scan.add_argument("target", choices=tuple(_SCAN_QUANTITIES))
    p_scan.add_argument("--range", type=_range_arg, default=(1, 10**4),
                        metavar="A:B", help="inclusive n range (default 1:10000)")
    add_common(p_scan)
    p_scan.set_defaults(handler=_cmd_scan)

    p_rates = sub.add_parser("rates", help="finite-n rate constants vs the table")
    p_rates.add_argument("--k", type=int, default=None)
    p_rates.add_argument("--n", type=int, default=None,
                         help="evaluation point (default 10^4 for k<=8, 10^3 above)")
    p_rates.add_argument("--ref-multiplier", type=int, default=100,
                         help="gamma reference point as a multiple of n")
    add_common(p_rates)
    p_rates.set_defaults(handler=_cmd_rates)

    p_compare = sub.add_parser("compare", help="error table against rival sequences")
    p_compare.add_argument("--n", type=int, default=100)
    add_common(p_compare)
    p_compare.set_defaults(handler=_cmd_compare)

    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.bits < 16:
        parser.error("--bits must be at least 16")
    if args.command == "solve":
        if args.kmax < 1:
            parser.error("--kmax must be >= 1")
        if args.kmax > MAX_REFERENCE_DEPTH and not args.beyond_paper:
            parser.error(
                f"--kmax beyond {MAX_REFERENCE_DEPTH} needs --beyond-paper"
            )
        if args.guard < 2:
            parser.error("--guard must be >= 2")
    if args.command == "bracket" and args.n < 1:
        parser.error("--n must be >= 1")
    if args.command == "compare" and args.n < 1:
        parser.error("--n must be >= 1")
    if args.command == "rates":
        if args.k is not None and not 1 <= args.k <= MAX_REFERENCE_DEPTH:
            parser.error(f"--k must be in 1..{MAX_REFERENCE_DEPTH}")
        if args.n is not None and args.n < 1:
            parser.error("--n must be >= 1")
        if args.ref_multiplier < 2:
            parser.error("--ref-multiplier must be >= 2")
    if args.command == "scan":
        start, end = args.range
        minimum = 2 if args.target == "lu3" else 1
        if start < minimum:
            parser.error(f"scan {args.target} needs the range to start at n >= {minimum}")
        if end < start:
            parser.error("empty scan range")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.handler(args)
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 1
    except (InvalidIndexError, InvalidRangeError) as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
