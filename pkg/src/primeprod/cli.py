"""Command-line interface: ``primeprod {expand,eval,arnold,zeta}``.

Exit codes: 0 success, 1 a checked property failed, 2 bad input,
3 infeasible evaluation plan.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import qseries
from .congruence import read_matrix, verify_trace_congruence
from .errors import PlanError, PrimeProdError
from .evaluate import DEFAULT_GUARD_DIGITS, evaluate_constant, format_bound
from .expand import ADAPTIVE, ALL_MINUS, ALL_PLUS, exponents_from_g
from .funcs import ConstantSpec, builtin, builtin_names, parse, taylor, to_text
from .mpreal import digits_to_bits, partial_zeta, to_decimal

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_PLAN = 0, 1, 2, 3

_SIGNS = {"minus": ALL_MINUS, "plus": ALL_PLUS, "adaptive": ADAPTIVE}


class InputError(Exception):
    pass


def load_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment. Known keys: digits, guard_digits."""
    conf = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ("digits", "guard_digits"):
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            conf[key] = int(value)
        except ValueError:
            raise InputError(f"{path}:{lineno}: {key} must be an integer") from None
    return conf


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(record: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(record, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _function_arg(args) -> tuple[str, object]:
    if args.builtin:
        spec = builtin(args.builtin)
        return spec.name, spec.f
    if args.function is None:
        raise InputError("give --function EXPR or --builtin NAME")
    return args.function, parse(args.function)


def cmd_expand(args) -> int:
    if args.order < 1:
        raise InputError("--order must be >= 1")
    label, f = _function_arg(args)
    b = taylor(f, args.order)
    if b[0] == 0:
        raise InputError("f(0) = 0: f has a zero at the origin")
    b = qseries.scale(b, 1 / b[0])
    alpha = exponents_from_g(qseries.g_from_b(b), _SIGNS[args.signs], args.order)
    rows = [(n, alpha.eps(n), alpha.alpha(n)) for n in range(1, args.order + 1)]
    record = {
        "command": "expand",
        "inputs": {"function": to_text(f), "order": args.order, "signs": args.signs},
        "exponents": [{"n": n, "eps": e, "alpha": str(a)} for n, e, a in rows],
    }
    lines = [f"f(z) = {to_text(f)}", f"{'n':>4}  {'eps':>3}  alpha_n"]
    lines += [f"{n:>4}  {e:>+3d}  {a}" for n, e, a in rows]
    _emit(record, args.json, lines)
    return EXIT_OK


def cmd_eval(args, conf: dict) -> int:
    digits = args.digits if args.digits is not None else conf.get("digits", 50)
    guard = conf.get("guard_digits", DEFAULT_GUARD_DIGITS)
    if digits < 1:
        raise InputError("--digits must be >= 1")
    if args.builtin:
        spec = builtin(args.builtin)
    else:
        if args.function is None or args.R is None or args.B is None:
            raise InputError("a custom function needs --function, --R and --B (or use --builtin)")
        spec = ConstantSpec(
            name="custom",
            f=parse(args.function),
            prefactor=parse(args.prefactor),
            R=args.R,
            B=args.B,
            m=args.m if args.m is not None else 7,
        )
    t0 = time.perf_counter()
    cv = evaluate_constant(spec, digits, m=args.m, guard_digits=guard)
    elapsed = time.perf_counter() - t0
    text = cv.decimal(extra_digits=2)
    record = {
        "command": "eval",
        "inputs": {
            "constant": spec.name,
            "function": to_text(spec.f),
            "prefactor": to_text(spec.prefactor),
            "digits": digits,
        },
        "value": text,
        "certified_digits": cv.decimal_digits_certified,
        "plan": cv.plan.as_dict(),
        "rounding_budget": format_bound(cv.rounding_budget),
        "working_precision_bits": cv.plan.working_precision,
    }
    if args.timing:
        record["timing"] = {"seconds": round(elapsed, 6)}
    certified = to_decimal(cv.value, cv.decimal_digits_certified, "down")
    p = cv.plan
    lines = [
        f"{spec.name} = {text}",
        f"certified prefix ({cv.decimal_digits_certified} significant digits): {certified}",
        f"plan: R={p.R} B={p.B} m={p.m} (p_m={p.pm}) M={p.M} C<={record['plan']['C']} "
        f"rounding<={record['rounding_budget']} precision={p.working_precision} bits",
    ]
    if args.timing:
        lines.append(f"time: {elapsed:.3f} s")
    _emit(record, args.json, lines)
    return EXIT_OK


def cmd_arnold(args) -> int:
    A = read_matrix(args.matrix)
    report = verify_trace_congruence(A, args.p, args.kmax)
    record = {
        "command": "arnold",
        "inputs": {"matrix": [list(r) for r in A.rows], "p": args.p, "kmax": args.kmax},
        "checks": [
            {"m": c.m, "lhs": str(c.lhs), "rhs": str(c.rhs), "modulus": str(c.modulus), "pass": c.ok}
            for c in report.checks
        ],
        "all_pass": report.all_pass,
    }
    lines = [f"tr A^(p^m) = tr A^(p^(m-1)) mod p^m for p = {args.p}"]
    for c in report.checks:
        lhs, rhs = str(c.lhs), str(c.rhs)
        if len(lhs) > 40:
            lhs = f"{lhs[:18]}...({len(lhs)} digits)"
        if len(rhs) > 40:
            rhs = f"{rhs[:18]}...({len(rhs)} digits)"
        lines.append(f"  m={c.m}: {lhs} = {rhs} mod {c.modulus}  {'ok' if c.ok else 'FAIL'}")
    lines.append("all congruences hold" if report.all_pass else "CONGRUENCE VIOLATED")
    _emit(record, args.json, lines)
    return EXIT_OK if report.all_pass else EXIT_VIOLATION


def cmd_zeta(args, conf: dict) -> int:
    digits = args.digits if args.digits is not None else conf.get("digits", 30)
    if args.n < 2:
        raise InputError("--n must be >= 2")
    if args.m < 1 or digits < 1:
        raise InputError("--m and --digits must be >= 1")
    value = partial_zeta(args.m, args.n, digits_to_bits(digits + 10))
    text = to_decimal(value, digits, "nearest")
    record = {"command": "zeta", "inputs": {"m": args.m, "n": args.n, "digits": digits}, "value": text}
    _emit(record, args.json, [f"zeta_{args.m}({args.n}) = {text}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primeprod", description="Certified Euler products over primes.")
    ap.add_argument("--config", help="key=value file with defaults (digits, guard_digits)")
    sub = ap.add_subparsers(dest="command", required=True)

    def fn_args(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--function", help="expression in z, e.g. '(-ln(1-z)/z)*sqrt(1-z)'")
        g.add_argument("--builtin", help=f"one of: {', '.join(builtin_names())}")

    p = sub.add_parser("expand", help="exponents alpha_n of f = f(0) prod (1 + eps_n z^n)^alpha_n")
    fn_args(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--signs", choices=sorted(_SIGNS), default="minus")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="prefactor * prod_p f(1/p) to certified digits")
    fn_args(p)
    p.add_argument("--prefactor", default="1")
    p.add_argument("--R", type=_rational)
    p.add_argument("--B", type=_rational)
    p.add_argument("--m", type=int)
    p.add_argument("--digits", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="report wall time (makes output non-reproducible)")

    p = sub.add_parser("arnold", help="verify tr A^(p^m) = tr A^(p^(m-1)) mod p^m")
    p.add_argument("--matrix", required=True, help="file: k, then k rows of k integers")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("zeta", help="partial zeta function zeta_m(n)")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digits", type=int)
    p.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        conf = load_config(args.config) if args.config else {}
        if args.command == "expand":
            return cmd_expand(args)
        if args.command == "eval":
            return cmd_eval(args, conf)
        if args.command == "arnold":
            return cmd_arnold(args)
        return cmd_zeta(args, conf)
    except PlanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN
    except (PrimeProdError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
