"""``nda`` command line.

Exit codes: 0 success (all laws hold), 1 some law fails, 2 usage or parse
error.
"""

import argparse
import json
import sys

from nda.arithmetic import ProjectiveArithmetic, format_element
from nda.carrier import DomainError
from nda.expr import ExpressionError, evaluate, parse_expression
from nda.generator import BelowRangeError, GeneratorSpecError
from nda.laws import default_suite, list_relation, machine_infinity_demo, run_law
from nda.report import (
    OperationTable,
    markdown_table,
    verdicts_to_csv,
    verdicts_to_json,
    verdicts_to_markdown,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FORMATS = ("markdown", "csv", "json")


def build_table(A, op, bound):
    f = A.add if op == "add" else A.mul
    R = range(bound + 1)
    return OperationTable(A.gen.spec.render(), op, bound,
                          tuple(tuple(f(a, b) for b in R) for a in R))


def run_table(args, out):
    A = ProjectiveArithmetic(args.gen)
    table = build_table(A, args.op, args.bound)
    if args.format == "json":
        out.write(table.to_json(indent=None) + "\n")
    elif args.format == "csv":
        out.write(table.to_csv())
    else:
        out.write(table.to_markdown())
    return EXIT_OK


def run_eval(args, out):
    A = ProjectiveArithmetic(args.gen)
    tree = parse_expression(args.expression)
    value = evaluate(tree, A, nary=args.nary)
    if args.format == "json":
        out.write(json.dumps({"gen": A.gen.spec.render(), "expression": args.expression,
                              "nary": args.nary, "value": value}) + "\n")
    else:
        out.write(format_element(value, unicode=args.unicode) + "\n")
    return EXIT_OK


def run_laws(args, out):
    A = ProjectiveArithmetic(args.gen)
    if args.law == "all":
        law_ids = default_suite(args.nary)
    else:
        law_ids = [s.strip() for s in args.law.split(",") if s.strip()]
    verdicts = [run_law(A, law_id, args.bound) for law_id in law_ids]
    if args.format == "json":
        out.write(verdicts_to_json(verdicts) + "\n")
    elif args.format == "csv":
        out.write(verdicts_to_csv(verdicts))
    else:
        out.write(verdicts_to_markdown(verdicts))
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_FAIL


def run_relations(args, out):
    A = ProjectiveArithmetic(args.gen)
    listing = list_relation(A, args.relation, args.bound)
    sym = {"ml": "<<", "mml": "<<<"}[listing.relation]
    if args.format == "json":
        out.write(json.dumps(listing.to_dict()) + "\n")
    elif args.format == "csv":
        out.write("a,b\n" + "".join(f"{a},{b}\n" for a, b in listing.pairs))
    else:
        fmt = lambda n: format_element(n, unicode=args.unicode)
        out.write(f"## {sym} in {listing.gen} on [0, {listing.bound}]\n\n")
        out.write(f"{len(listing.pairs)} related pairs\n\n")
        out.write(markdown_table(["a", "b"], listing.pairs))
        out.write("\nSuccessor chains:\n\n")
        if not listing.chains:
            out.write("(none)\n")
        for chain in listing.chains:
            out.write(f" {sym} ".join(fmt(n) for n in chain) + "\n")
    return EXIT_OK


def run_demo(args, out):
    A = ProjectiveArithmetic(args.gen)
    report = machine_infinity_demo(A, args.bound)
    if args.format == "json":
        out.write(json.dumps(report.to_dict()) + "\n")
        return EXIT_OK
    if args.format == "csv":
        out.write("M\n" + "".join(f"{m}\n" for m in report.members))
        return EXIT_OK
    fmt = lambda n: format_element(n, unicode=args.unicode)
    out.write(f"## Machine infinity in {report.gen}, M in [0, {report.bound}]\n\n")
    if not report.members:
        out.write("No M in range satisfies M + 1 = M: every addition of 1 moves.\n")
        return EXIT_OK
    spans = ", ".join(f"{fmt(lo)}..{fmt(hi)}" if lo != hi else fmt(lo)
                      for lo, hi in report.ranges())
    out.write(f"M + 1 = M holds for {len(report.members)} values: {spans}\n")
    if report.all_positive:
        out.write("That is every positive M in range.\n")
    if report.cancellation_witness:
        m = report.cancellation_witness[0]
        out.write(f"\n{fmt(m)} + {fmt(1)} = {fmt(m)} and {fmt(m)} + {fmt(0)} = {fmt(m)}, "
                  "yet 1 and 0 stay distinct: addition does not cancel here, so the "
                  "equation M + 1 = M derives no contradiction.\n")
    else:
        out.write("\nThe equation M + 1 = M is an ordinary true statement in this "
                  "arithmetic; nothing forces 1 = 0.\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="nda", description=(
        "Projective non-Diophantine arithmetics: tables, evaluation, law checks."))
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gen", required=True,
                        help="generator, e.g. identity, linear:10, power:2, dblexp")
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--unicode", action="store_true",
                        help="mark elements with _μ instead of _u")

    p = sub.add_parser("table", parents=[common], help="operation table")
    p.add_argument("--op", choices=("add", "mul"), default="add")
    p.add_argument("--bound", type=_nat, default=10)
    p.set_defaults(func=run_table)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate an expression (left-associative)")
    p.add_argument("expression")
    p.add_argument("--nary", action="store_true",
                   help="evaluate unparenthesised runs with one n-ary sum/product")
    p.set_defaults(func=run_eval)

    p = sub.add_parser("laws", parents=[common], help="bounded law checks")
    p.add_argument("--bound", type=_nat, default=20)
    p.add_argument("--law", default="all", help="law id, comma list, or 'all'")
    p.add_argument("--nary", type=_nat, default=3, metavar="N",
                   help="group size for n-ary laws (default 3)")
    p.set_defaults(func=run_laws)

    p = sub.add_parser("relations", parents=[common], help="list << or <<< pairs")
    p.add_argument("--relation", choices=("ml", "mml", "much_less", "much_much_less"),
                   default="ml")
    p.add_argument("--bound", type=_nat, default=10)
    p.set_defaults(func=run_relations)

    p = sub.add_parser("demo", parents=[common], help="machine-infinity demo")
    p.add_argument("--bound", type=_nat, default=1000)
    p.set_defaults(func=run_demo)
    return parser


def _nat(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return n


def main(argv=None, out=None):
    out = out or sys.stdout
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ExpressionError as exc:
        print(f"nda: parse error: {exc}", file=sys.stderr)
    except GeneratorSpecError as exc:
        print(f"nda: bad generator: {exc}", file=sys.stderr)
    except (DomainError, BelowRangeError, ValueError) as exc:
        print(f"nda: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
