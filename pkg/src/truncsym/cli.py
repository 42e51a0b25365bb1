"""Command-line front end: ``truncsym <command> [flags]``.

Exit codes: 0 success / all checks pass, 1 a check failed (or ``member`` said
no), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field as dc_field

from .field import Field, is_prime
from .ideal import (
    VerificationReport,
    conjecture_generators,
    is_truncation_member,
    theorem_generators,
    verify_conjecture,
    verify_theorem,
)
from .msym import PolyParseError, expand_to_monomials, msym_mul, msym_pow, parse_poly

__all__ = ["main", "run", "sweep", "SweepResult"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _characteristic(token: str) -> int:
    try:
        p = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid characteristic {token!r}") from None
    if p != 0 and not is_prime(p):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or prime: {token!r}")
    return p


def _prime_list(token: str) -> list[int]:
    out = []
    for piece in token.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if not piece.isdigit() or not is_prime(int(piece)):
            raise argparse.ArgumentTypeError(f"not a prime: {piece!r}")
        out.append(int(piece))
    return out


def _nat(token: str) -> int:
    if not token.isdigit():
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer: {token!r}")
    return int(token)


def _positive(token: str) -> int:
    k = _nat(token)
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {token!r}")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for Python's RNG (commands are deterministic)")
    common.add_argument("--dump-matrices", metavar="DIR", default=None, help="write span matrices as CSV")
    common.add_argument("-v", "--verbose", action="store_true")

    field_n = _Parser(add_help=False)
    field_n.add_argument("--p", type=_characteristic, required=True, help="characteristic, 0 for Q")
    field_n.add_argument("--n", type=_positive, required=True, help="number of variables")

    with_d = _Parser(add_help=False)
    with_d.add_argument("--d", type=_nat, required=True, help="truncation degree")

    parser = _Parser(prog="truncsym", description="Symmetric polynomials and truncated symmetric ideals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mul", parents=[common, field_n], help="multiply polynomials")
    s.add_argument("polys", nargs="+")
    s = sub.add_parser("pow", parents=[common, field_n], help="raise a polynomial to a power")
    s.add_argument("poly")
    s.add_argument("k", type=_nat)
    s = sub.add_parser("expand", parents=[common, field_n], help="expand into monomials x^alpha")
    s.add_argument("poly")
    sub.add_parser("generators", parents=[common, field_n, with_d], help="theorem generators of I_{n,d}")
    sub.add_parser("conjecture", parents=[common, field_n, with_d], help="conjectured minimal generators")
    s = sub.add_parser("member", parents=[common, field_n, with_d], help="is the polynomial in I_{n,d}?")
    s.add_argument("poly")
    s = sub.add_parser("verify-theorem", parents=[common, field_n, with_d], help="rank check of the theorem")
    s.add_argument("--degree-bound", type=_nat, default=None)
    sub.add_parser("verify-conjecture", parents=[common, field_n, with_d], help="generation and minimality check")
    s = sub.add_parser("sweep", parents=[common], help="verify the conjecture over a parameter grid")
    s.add_argument("--p", type=_prime_list, required=True, help="comma-separated primes")
    s.add_argument("--n-max", type=_positive, required=True)
    s.add_argument("--d-max", type=_nat, required=True)
    s.add_argument("--n-min", type=_positive, default=2)
    s.add_argument("--d-min", type=_nat, default=1)
    return parser


@dataclass
class SweepResult:
    reports: list[VerificationReport] = dc_field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if all(r.passed for r in self.reports) else "fail"

    def summary(self) -> list[dict]:
        return [
            {
                "p": r.p,
                "n": r.n,
                "d": r.d,
                "checks": len(r.checks),
                "failed": len(r.failures()),
                "overall": r.overall,
            }
            for r in self.reports
        ]

    def to_json(self) -> dict:
        return {
            "cells": [r.to_json() for r in self.reports],
            "summary": self.summary(),
            "overall": self.overall,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepResult":
        return cls([VerificationReport.from_json(c) for c in obj["cells"]])

    def render_text(self) -> str:
        lines = [f"{'p':>3} {'n':>3} {'d':>3} {'checks':>7} {'failed':>7}  overall"]
        for row in self.summary():
            lines.append(
                f"{row['p']:>3} {row['n']:>3} {row['d']:>3} {row['checks']:>7} {row['failed']:>7}  {row['overall']}"
            )
        for r in self.reports:
            if not r.passed:
                lines.append("")
                lines.append(r.render_text())
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


def sweep(p_list, n_max: int, d_max: int, n_min: int = 2, d_min: int = 1, dump_dir=None) -> SweepResult:
    """Run verify_conjecture over every (p, n, d) cell; failing cells are kept, not raised."""
    result = SweepResult()
    for p in sorted(set(p_list)):
        for n in range(n_min, n_max + 1):
            for d in range(d_min, d_max + 1):
                result.reports.append(verify_conjecture(p, n, d, dump_dir=dump_dir))
    return result


def _render_expansion(expansion: dict, field: Field) -> str:
    if not expansion:
        return "0"
    pieces = []
    for alpha in sorted(expansion, reverse=True):
        c = expansion[alpha]
        mono = "*".join(f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(alpha) if a)
        negative = field.characteristic == 0 and c < 0
        mag = -c if negative else c
        if not mono:
            body = field.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{field.format(mag)}*{mono}"
        if pieces:
            pieces.append(("- " if negative else "+ ") + body)
        else:
            pieces.append(("-" if negative else "") + body)
    return " ".join(pieces)


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def run(argv: list[str]) -> int:
    """Parse ``argv``, dispatch, print the result; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"truncsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    random.seed(args.seed)
    try:
        return _dispatch(args)
    except PolyParseError as exc:
        print(f"truncsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"truncsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "sweep":
        result = sweep(args.p, args.n_max, args.d_max, args.n_min, args.d_min, dump_dir=args.dump_matrices)
        _emit(args, result.render_text(), result.to_json())
        return EXIT_OK if result.overall == "pass" else EXIT_FAIL

    field = Field(args.p)
    n = args.n
    if cmd == "mul":
        polys = [parse_poly(s, n, field) for s in args.polys]
        out = polys[0]
        for g in polys[1:]:
            out = msym_mul(out, g)
        _emit(args, str(out), out.to_json())
    elif cmd == "pow":
        out = msym_pow(parse_poly(args.poly, n, field), args.k)
        _emit(args, str(out), out.to_json())
    elif cmd == "expand":
        f = parse_poly(args.poly, n, field)
        exp = expand_to_monomials(f)
        payload = {
            "n": n,
            "p": args.p,
            "monomials": [
                {"exponents": list(alpha), "coeff": field.format(exp[alpha])} for alpha in sorted(exp, reverse=True)
            ],
        }
        _emit(args, _render_expansion(exp, field), payload)
    elif cmd == "generators":
        spec = theorem_generators(args.p, n, args.d)
        _emit(args, spec.render_text(), spec.to_json())
    elif cmd == "conjecture":
        if args.p == 0:
            raise ValueError("not applicable: the conjecture concerns positive characteristic (got --p 0)")
        spec = conjecture_generators(args.p, n, args.d)
        _emit(args, spec.render_text(), spec.to_json())
    elif cmd == "member":
        f = parse_poly(args.poly, n, field)
        member = is_truncation_member(f, args.d)
        _emit(args, "true" if member else "false", {"n": n, "p": args.p, "d": args.d, "poly": f.to_json(), "member": member})
        return EXIT_OK if member else EXIT_FAIL
    elif cmd == "verify-theorem":
        report = verify_theorem(args.p, n, args.d, args.degree_bound, dump_dir=args.dump_matrices)
        _emit(args, report.render_text(), report.to_json())
        return EXIT_OK if report.passed else EXIT_FAIL
    elif cmd == "verify-conjecture":
        if args.p == 0:
            raise ValueError("not applicable: the conjecture concerns positive characteristic (got --p 0)")
        report = verify_conjecture(args.p, n, args.d, dump_dir=args.dump_matrices)
        _emit(args, report.render_text(), report.to_json())
        return EXIT_OK if report.passed else EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
