"""Command line interface.

    qplane normalize --algebra gamma "y*dx"
    qplane apply --map delta --algebra A "y"
    qplane check --suite all --max-degree 4 --seed 7 --format json

Exit codes: 0 success/pass, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import AlgebraError, normalize
from .hopf import (
    MAPS,
    antipode,
    coaction_left,
    coaction_right,
    coproduct,
    counit,
    differential,
)
from .parser import ParseError, parse
from .presentations import get
from .render import render
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

MAP_NAMES = ("delta", "epsilon", "antipode", "delta-r", "delta-l", "d")
_GAMMA_ONLY = {"delta-r", "delta-l", "d"}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _algebra(name: str):
    try:
        return get(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_normalize(algebra: str, expr: str) -> str:
    p = _algebra(algebra)
    return render(normalize(parse(expr, p), p))


def cmd_apply(map_name: str, algebra: str, expr: str) -> str:
    p = _algebra(algebra)
    if map_name not in MAP_NAMES:
        raise UsageError(f"unknown map {map_name!r}")
    if map_name in _GAMMA_ONLY and p.name != "Gamma":
        raise UsageError(f"map {map_name} is only defined on gamma")
    e = parse(expr, p)
    maps = MAPS[p.name]
    if map_name == "delta":
        out = coproduct(e, maps)
    elif map_name == "epsilon":
        out = counit(e, maps)
    elif map_name == "antipode":
        out = antipode(e, maps)
    elif map_name == "delta-r":
        out = coaction_right(e)
    elif map_name == "delta-l":
        out = coaction_left(e)
    else:
        out = differential(e)
    return render(out)


def cmd_check(suite: str, max_degree: int = 4, seed: int = 0, fmt: str = "text",
              n_random: int = 50):
    report = run_suite(suite, max_degree=max_degree, seed=seed, n_random=n_random)
    if fmt == "json":
        text = json.dumps(report.to_dict(), indent=2, sort_keys=False)
    else:
        text = report.to_text()
    return report, text


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="qplane", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"qplane {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    n = sub.add_parser("normalize", help="print the canonical form of an expression")
    n.add_argument("--algebra", required=True, help="A, gamma, omega or borel")
    n.add_argument("expr")

    a = sub.add_parser("apply", help="apply a structure map")
    a.add_argument("--map", required=True, choices=MAP_NAMES)
    a.add_argument("--algebra", required=True)
    a.add_argument("expr")

    c = sub.add_parser("check", help="run an axiom suite")
    c.add_argument("--suite", default="all", choices=SUITES)
    c.add_argument("--max-degree", type=int, default=4)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--random", type=int, default=50, dest="n_random",
                   help="random elements per axiom (default 50)")
    c.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "normalize":
            print(cmd_normalize(args.algebra, args.expr))
            return EXIT_OK
        if args.command == "apply":
            print(cmd_apply(args.map, args.algebra, args.expr))
            return EXIT_OK
        seed = args.seed
        env = os.environ.get("QPLANE_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise UsageError(f"QPLANE_SEED must be an integer, got {env!r}") from None
        if args.max_degree < 2:
            raise UsageError("--max-degree must be at least 2")
        report, text = cmd_check(args.suite, args.max_degree, seed, args.format, args.n_random)
        print(text)
        return EXIT_OK if report.passed else EXIT_FAIL
    except (ParseError, AlgebraError, UsageError) as exc:
        print(f"qplane: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
