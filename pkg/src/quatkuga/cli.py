"""Command line: classify, certify, ledger.

Exit codes: 0 success, 1 certificate failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .chern import (
    LABEL,
    FibrationProfile,
    arakelov_gap,
    chen_ogiue_gap,
    chern_profile,
    relative_canonical_factors,
    slope_forces_curve,
)
from .config import SpecError, load_spec, parse_tau_flag
from .exact import as_fraction
from .numeric import DEFAULT_BITS
from .quaternion import QuaternionAlgebra, archimedean_corestriction, classify_algebra, ramification_set

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational_arg(text: str):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}")


def _fmt_list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def cmd_classify(args) -> int:
    try:
        B = QuaternionAlgebra(args.a, args.b)
    except ValueError as exc:
        raise InputError(str(exc))
    division, indefinite = classify_algebra(B)
    print(f"algebra: {B}")
    print(f"ramified: {ramification_set(B)}")
    print(f"type: {'division' if division else 'split'}; "
          f"{'indefinite' if indefinite else 'definite'}")
    if args.degree is not None:
        try:
            cor = archimedean_corestriction(args.degree)
        except ValueError as exc:
            raise InputError(str(exc))
        derived = "definite" if cor.b_definite else "indefinite"
        print(f"corestriction (d = {args.degree}): archimedean type {cor.archimedean_type}; "
              f"derived B {derived}")
    return EXIT_OK


def cmd_certify(args) -> int:
    from .pipeline import certify

    try:
        spec = load_spec(args.spec)
        taus = [parse_tau_flag(t) for t in args.tau] if args.tau else None
        spec = spec.with_overrides(taus=taus, copies=args.copies, word_ball=args.word_ball)
    except SpecError as exc:
        raise InputError(str(exc))
    if args.numeric_bits < 53:
        raise InputError("--numeric-bits must be at least 53")
    report = certify(spec, bits=args.numeric_bits)
    text = report.to_json(__version__, spec.digest())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(report.summary(), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ledger(args) -> int:
    m, n = args.m, args.n
    if m is None and n is None:
        raise InputError("give -m and/or -n")
    status = EXIT_OK
    print(f"({LABEL} checks)")
    if m is not None:
        if m < 1:
            raise InputError("-m must be >= 1")
        prof = chern_profile(m)
        print(f"chern profile (m = {m}): {_fmt_list(prof.coefficients)}")
        if m >= 2:
            gap = chen_ogiue_gap(m, 1, prof.coefficient(2))
            print(f"Chen-Ogiue gap: {gap}")
    if m is not None and n is not None:
        if not 0 <= n < m:
            raise InputError("need 0 <= n < m")
        e, k = relative_canonical_factors(m, n)
        print(f"relative factors: deg E {e}, canonical {k}")
    if args.degE is not None or args.genus is not None:
        if m is None or args.degE is None or args.genus is None:
            raise InputError("the Arakelov gap needs -m, --degE and --genus")
        try:
            fp = FibrationProfile(m, n if n is not None else 1, args.degE, args.genus)
        except ValueError as exc:
            raise InputError(str(exc))
        gap = arakelov_gap(fp)
        note = "extremal, equality" if gap == 0 else ("violates Arakelov" if gap < 0 else "strict")
        print(f"Arakelov gap: {gap} ({note})")
        if gap < 0:
            status = EXIT_FAIL
    if args.slope:
        if n is None or n < 1:
            raise InputError("--slope needs -n >= 1")
        lhs, rhs, eq = slope_forces_curve(n)
        print(f"slope: {lhs} vs {rhs}, {'equal' if eq else 'strict'}")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatkuga", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="ramification and type of (a, b / Q)")
    c.add_argument("-a", type=_rational_arg, required=True)
    c.add_argument("-b", type=_rational_arg, required=True)
    c.add_argument("--degree", type=int, help="degree d of the totally real field")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("certify", help="run the certificate suite on a construction spec")
    c.add_argument("--spec", required=True, help="TOML or JSON construction spec")
    c.add_argument("--out", help="write the JSON report here (default: stdout)")
    c.add_argument("--tau", action="append", metavar="RE,IM", help="test point (repeatable)")
    c.add_argument("--word-ball", type=int, help="torsion screening radius (default 4)")
    c.add_argument("--copies", type=int, help="fiber product multiplicity")
    c.add_argument("--numeric-bits", type=int, default=DEFAULT_BITS)
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("ledger", help="scalar Chern and slope identities")
    c.add_argument("-m", type=int)
    c.add_argument("-n", type=int)
    c.add_argument("--degE", type=_rational_arg)
    c.add_argument("--genus", type=int)
    c.add_argument("--slope", action="store_true")
    c.set_defaults(func=cmd_ledger)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # keep the exit-code contract even on bugs
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
