"""Command-line front end.

Exit codes: 0 success / SAT / verified, 2 usage, parse or guard error,
3 UNSAT or no Maltsev polymorphism found.
"""
from __future__ import annotations

import argparse
import sys

from . import formats
from .algebra import derivative, is_conservative, is_maltsev, is_majority
from .relations import CONSERVATIVE_CHECK, is_polymorphism, preservation_witness
from .search import analyze
from .solver import brute_force_solve, solve_majority
from .verify import boundary_demo, run_verify

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_NEGATIVE = 3


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_analyze(args) -> int:
    lang = formats.read_language(args.language)
    result = analyze(lang)
    kind = "conservative " if lang.conservative else ""
    print(f"language: {kind}domain {lang.domain.size}, relations {', '.join(lang.relations) or '(none)'}")
    if not result.found:
        print(f"no {kind}Maltsev polymorphism exists")
        return EXIT_NEGATIVE
    print("Maltsev polymorphism:")
    sys.stdout.write(formats.format_operation(result.maltsev))
    print("derivative:")
    sys.stdout.write(formats.format_operation(result.majority))
    print(f"derivative is a majority operation: {_yn(result.majority_ok)}")
    print(f"derivative is a polymorphism: {_yn(result.report.ok)}")
    for name, w in result.report.violations:
        print(f"  violated {name}: {w}")
    print(f"derivative is a majority polymorphism: {_yn(result.success)}")
    return EXIT_OK


def cmd_derive(args) -> int:
    op = formats.read_operation(args.operation)
    sys.stdout.write(formats.format_operation(derivative(op)))
    return EXIT_OK


def cmd_check(args) -> int:
    op = formats.read_operation(args.operation)
    lang = formats.read_language(args.language)
    if op.domain != lang.domain:
        raise ValueError(f"operation domain {op.domain.size} does not match language domain {lang.domain.size}")
    print(f"conservative: {_yn(is_conservative(op))}")
    print(f"maltsev: {_yn(is_maltsev(op))}")
    print(f"majority: {_yn(is_majority(op))}")
    report = is_polymorphism(op, lang)
    bad = dict(report.violations)
    if lang.conservative:
        if CONSERVATIVE_CHECK in bad:
            x, y, z = bad[CONSERVATIVE_CHECK]
            print(f"{CONSERVATIVE_CHECK}: FAIL  p({x},{y},{z}) = {op(x, y, z)} "
                  f"leaves the unary relation {{{', '.join(map(str, sorted({x, y, z})))}}}")
        else:
            print(f"{CONSERVATIVE_CHECK}: pass")
    for name, rel in lang.relations.items():
        w = preservation_witness(op, rel)
        if w is None:
            print(f"{name}: pass")
        else:
            image = tuple(op(*args) for args in zip(*w))
            print(f"{name}: FAIL  {' '.join(map(str, w))} -> {image}")
    print(f"polymorphism: {_yn(report.ok)}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    lang = formats.read_language(args.language)
    inst = formats.read_instance(args.instance, lang)
    if args.solver == "oracle":
        assignment = brute_force_solve(inst)
    else:
        result = analyze(lang)
        if result.success:
            assignment = solve_majority(inst, result.majority)
        elif args.solver == "majority":
            raise ValueError("no Maltsev polymorphism found, so no majority witness is available")
        else:
            print("no majority witness found; falling back to brute force", file=sys.stderr)
            assignment = brute_force_solve(inst)
    if assignment is None:
        print("UNSAT")
        return EXIT_NEGATIVE
    for i, v in enumerate(assignment):
        print(f"x{i}={v}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(args.n, args.mode, args.samples, args.seed, args.relations, args.workers)
    sys.stdout.write(report.to_tsv() if args.format == "tsv" else report.to_text())
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_boundary_demo(args) -> int:
    demo = boundary_demo()
    sys.stdout.write(demo.to_text())
    return EXIT_OK if demo.reproduced else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conslang",
        description="Maltsev and majority polymorphisms of unary/binary constraint languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="find a Maltsev polymorphism and derive a majority one")
    p.add_argument("language")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("derive", help="print the derivative of an operation")
    p.add_argument("operation")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("check", help="check an operation against a language")
    p.add_argument("operation")
    p.add_argument("language")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("language")
    p.add_argument("instance")
    p.add_argument("--solver", choices=("oracle", "majority", "auto"), default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="random")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--relations", type=int, default=100,
                   help="invariant binary relations sampled per operation")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("boundary-demo", help="show the result fails for a ternary relation")
    p.set_defaults(func=cmd_boundary_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
