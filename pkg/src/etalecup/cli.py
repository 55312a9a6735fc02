"""Command line: `etalecup {groups,pairing,legendre,verify,torsors}`.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .arith import DEFAULT_SEED
from .errors import EtaleCupError, InvalidInput, Unsupported
from .quadratic import build_field
from .report import FORMATS, emit, groups_report, legendre_report, pairing_report, timed, torsors_report, verify_report

FORMAT_ENV = "ETALECUP_FORMAT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _field(text: str):
    if text == "Q":
        return None
    if text.startswith("sqrt:"):
        try:
            m = int(text[5:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad field {text!r}") from None
        return build_field(m)
    raise argparse.ArgumentTypeError(f"field must be Q or sqrt:<m>, got {text!r}")


def _primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    env_fmt = os.environ.get(FORMAT_ENV, "json")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=env_fmt if env_fmt in FORMATS else "json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte identity)")

    p = _Parser(prog="etalecup", description="Etale cohomology of punctured Spec Z and quadratic rings of integers.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    g = sub.add_parser("groups", parents=[common], help="cohomology profile H^0..H^5")
    g.add_argument("--field", type=_field, default=None, metavar="{Q|sqrt:m}")
    g.add_argument("--S", type=_primes, default=(), metavar="p1,p2,...")
    g.add_argument("--n", type=int, default=2)
    pr = sub.add_parser("pairing", parents=[common], help="cup product table at n = 2")
    pr.add_argument("--S", type=_primes, required=True, metavar="p1,p2,...")
    pr.add_argument("--n", type=int, default=2)
    lg = sub.add_parser("legendre", parents=[common], help="cup vanishing against Legendre symbols")
    lg.add_argument("--max", type=int, default=30)
    v = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    v.add_argument("--S", type=_primes, default=(), metavar="p1,p2,...")
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--max", type=int, default=30)
    t = sub.add_parser("torsors", parents=[common], help="list the nontrivial Z/2-torsors")
    t.add_argument("--S", type=_primes, required=True, metavar="p1,p2,...")
    t.add_argument("--n", type=int, default=2)
    return p


def run_command(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(str(exc))
        return 2
    if args.command is None:
        err.write(build_parser().format_usage())
        return 2
    try:
        if args.command == "groups":
            fn, a = groups_report, (args.field, args.S, args.n)
        elif args.command == "pairing":
            fn, a = pairing_report, (args.S, args.n)
        elif args.command == "legendre":
            fn, a = legendre_report, (args.max,)
        elif args.command == "verify":
            fn, a = verify_report, (args.S, args.n, args.max, args.seed)
        else:
            fn, a = torsors_report, (args.S, args.n)
        report, timing = timed(fn, *a)
    except (InvalidInput, Unsupported) as exc:
        err.write(f"etalecup: {exc}\n")
        return 2
    except EtaleCupError as exc:
        err.write(f"etalecup: {type(exc).__name__}: {exc}\n")
        return 1
    if args.timing:
        report.timing = timing
    out.write(emit(report, args.format))
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
