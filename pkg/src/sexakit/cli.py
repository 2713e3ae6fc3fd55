"""Command-line frontend.

Subcommands::

    eval             evaluate an infix expression over sexagesimal literals
    recip            reciprocal of a regular number
    sqrt             exact square root
    solve-quadratic  completing the square for A*u^2 - B*u = C
    sum-diff         recover x, y from x - y and x*y
    geom             trapezoid | volume | labor-depth
    replay           run corpus problems and verify every value

Division in ``eval`` is scribal by default (the divisor must be regular);
``--recognize`` accepts any divisor whose quotient is finitely writable,
and ``--oracle`` switches to unrestricted exact rational division, falling
back to p/q output when the result has no finite base-60 form.

Exit codes are frozen for scripting: 0 success/verified, 1 replay
mismatch, 2 malformed input, 3 violated mathematical precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from .errors import (
    CorpusParseError,
    ExpressionError,
    MalformedLiteral,
    SexakitError,
    UnknownProblem,
    ZeroDivisor,
)
from .geometry import (
    CanalConstant,
    depth_from_labor,
    prism_volume,
    trapezoid_cross_section,
)
from .procedures import (
    QuadraticProblem,
    StepTrace,
    SumDifferenceProblem,
    divide_by_recognition,
    solve_quadratic_scribal,
    solve_sum_difference,
)
from .sexa import Sexa, reciprocal, render, sqrt_exact
from .units import Dimension, Quantity, sar_to_volume_sar

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_MATH = 3

_INPUT_ERRORS = (MalformedLiteral, ExpressionError, CorpusParseError,
                 UnknownProblem)


# -- expression evaluation -----------------------------------------------------

_OPERATORS = {"+", "-", "*", "/", "(", ")"}
_LITERAL_CHARS = set("0123456789,;:")


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "×·":
            tokens.append("*")
            i += 1
            continue
        if ch == "÷":
            tokens.append("/")
            i += 1
            continue
        if ch == "−":
            tokens.append("-")
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append(ch)
            i += 1
            continue
        if ch in _LITERAL_CHARS:
            j = i
            while j < len(text) and text[j] in _LITERAL_CHARS:
                j += 1
            tokens.append(text[i:j])
            i = j
            continue
        raise ExpressionError(f"unexpected character {ch!r}")
    return tokens


class _Evaluator:
    """Recursive-descent evaluator; division mode set at construction."""

    def __init__(self, tokens: list[str], divide):
        self.tokens = tokens
        self.pos = 0
        self.divide = divide

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        token = self.peek()
        if token is None:
            raise ExpressionError("unexpected end of expression")
        self.pos += 1
        return token

    def run(self) -> Sexa:
        value = self.expression()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input at {self.peek()!r}")
        return value

    def expression(self) -> Sexa:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self) -> Sexa:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            right = self.unary()
            value = value * right if op == "*" else self.divide(value, right)
        return value

    def unary(self) -> Sexa:
        if self.peek() == "-":
            self.next()
            return -self.unary()
        return self.atom()

    def atom(self) -> Sexa:
        token = self.next()
        if token == "(":
            value = self.expression()
            if self.next() != ")":
                raise ExpressionError("missing closing parenthesis")
            return value
        if token in _OPERATORS:
            raise ExpressionError(f"expected a literal, got {token!r}")
        return Sexa(token)


def _scribal_divide(n: Sexa, d: Sexa) -> Sexa:
    return n * reciprocal(d)


def _oracle_divide(n: Sexa, d: Sexa) -> Sexa:
    if d == 0:
        raise ZeroDivisor("division by zero")
    return n / d


def evaluate_expression(text: str, mode: str = "scribal") -> Sexa:
    """Evaluate an infix expression; mode is scribal|recognize|oracle."""
    divide = {
        "scribal": _scribal_divide,
        "recognize": divide_by_recognition,
        "oracle": _oracle_divide,
    }[mode]
    return _Evaluator(_tokenize(text), divide).run()


# -- output helpers ------------------------------------------------------------

def _print_value(value: Sexa, args) -> None:
    text = render(value, fraction_fallback=getattr(args, "oracle", False))
    if args.json:
        print(json.dumps({"value": text}))
    else:
        print(text)


def _print_trace(trace: StepTrace, args) -> None:
    if args.json:
        return      # folded into the result object by the caller
    print(trace.to_text())


# -- subcommand handlers -------------------------------------------------------

def _cmd_eval(args) -> int:
    mode = "oracle" if args.oracle else "recognize" if args.recognize \
        else "scribal"
    _print_value(evaluate_expression(args.expression, mode), args)
    return EXIT_OK


def _cmd_recip(args) -> int:
    _print_value(reciprocal(Sexa(args.value)), args)
    return EXIT_OK


def _cmd_sqrt(args) -> int:
    _print_value(sqrt_exact(Sexa(args.value)), args)
    return EXIT_OK


def _cmd_solve_quadratic(args) -> int:
    problem = QuadraticProblem(Sexa(args.a), Sexa(args.b), Sexa(args.c))
    root, trace = solve_quadratic_scribal(problem)
    if args.json:
        print(json.dumps({"u": render(root), **trace.to_dict()}))
        return EXIT_OK
    if args.trace:
        _print_trace(trace, args)
    print(f"u = {render(root)}")
    return EXIT_OK


def _cmd_sum_diff(args) -> int:
    problem = SumDifferenceProblem(Sexa(args.diff), Sexa(args.prod))
    x, y, trace = solve_sum_difference(problem)
    if args.json:
        print(json.dumps({"x": render(x), "y": render(y),
                          **trace.to_dict()}))
        return EXIT_OK
    if args.trace:
        _print_trace(trace, args)
    print(f"x = {render(x)}")
    print(f"y = {render(y)}")
    return EXIT_OK


def _cmd_geom_trapezoid(args) -> int:
    section = trapezoid_cross_section(
        Quantity(Sexa(args.upper), Dimension.LENGTH_NINDAN),
        Quantity(Sexa(args.lower), Dimension.LENGTH_NINDAN),
        Quantity(Sexa(args.depth), Dimension.LENGTH_KUS))
    if args.json:
        print(json.dumps({"S": render(section.magnitude),
                          "unit": section.dim.value}))
    else:
        print(f"S = {section}")
    return EXIT_OK


def _cmd_geom_volume(args) -> int:
    volume = prism_volume(
        Quantity(Sexa(args.section), Dimension.CROSS_SECTION),
        Quantity(Sexa(args.length), Dimension.LENGTH_NINDAN))
    if args.json:
        print(json.dumps({"V": render(volume.magnitude),
                          "unit": volume.dim.value}))
    else:
        print(f"V = {volume}")
    return EXIT_OK


def _cmd_geom_labor_depth(args) -> int:
    total = sar_to_volume_sar(Sexa(args.total), args.unit)
    depth, water_depth, trace = depth_from_labor(
        total, Sexa(args.reach),
        Quantity(Sexa(args.workers), Dimension.WORKER_COUNT),
        Quantity(Sexa(args.width), Dimension.LENGTH_NINDAN),
        CanalConstant(Sexa(args.constant)))
    if args.json:
        print(json.dumps({"z": render(depth.magnitude),
                          "z_water": render(water_depth.magnitude),
                          "unit": depth.dim.value, **trace.to_dict()}))
        return EXIT_OK
    if args.trace:
        _print_trace(trace, args)
    print(f"z = {depth}")
    print(f"z_water = {water_depth}")
    return EXIT_OK


def _cmd_replay(args) -> int:
    problems = corpus_mod.load_corpus(args.corpus)
    if args.all:
        selected = sorted(problems, key=lambda p: p.id)
    else:
        if args.problem is None:
            raise UnknownProblem("give a problem id or --all")
        selected = [corpus_mod.find_problem(problems, args.problem)]
    reports = [corpus_mod.replay(p) for p in selected]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports]))
    else:
        for report in reports:
            print(report.to_text())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


# -- parser wiring -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sexakit",
        description="Exact sexagesimal arithmetic and Susa tablet replays.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p):
        p.add_argument("--json", action="store_true",
                       help="structured output")
        return p

    p = with_json(sub.add_parser("eval", help="evaluate an expression"))
    p.add_argument("expression")
    p.add_argument("--recognize", action="store_true",
                   help="allow irregular divisors when the quotient is finite")
    p.add_argument("--oracle", action="store_true",
                   help="unrestricted exact rational division")
    p.set_defaults(func=_cmd_eval)

    p = with_json(sub.add_parser("recip", help="reciprocal of a regular number"))
    p.add_argument("value")
    p.set_defaults(func=_cmd_recip)

    p = with_json(sub.add_parser("sqrt", help="exact square root"))
    p.add_argument("value")
    p.set_defaults(func=_cmd_sqrt)

    p = with_json(sub.add_parser(
        "solve-quadratic", help="complete the square for A*u^2 - B*u = C"))
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p.add_argument("c", metavar="C")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=_cmd_solve_quadratic)

    p = with_json(sub.add_parser(
        "sum-diff", help="recover x, y from x - y and x*y"))
    p.add_argument("diff")
    p.add_argument("prod")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=_cmd_sum_diff)

    geom = sub.add_parser("geom", help="canal geometry")
    geom_sub = geom.add_subparsers(dest="geom_command", required=True)

    p = with_json(geom_sub.add_parser(
        "trapezoid", help="cross-section from breadths and depth"))
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("depth")
    p.set_defaults(func=_cmd_geom_trapezoid)

    p = with_json(geom_sub.add_parser(
        "volume", help="prism volume from cross-section and length"))
    p.add_argument("section")
    p.add_argument("length")
    p.set_defaults(func=_cmd_geom_volume)

    p = with_json(geom_sub.add_parser(
        "labor-depth", help="depth from water volume and work norms"))
    p.add_argument("total", help="reserved water volume")
    p.add_argument("reach", help="nindan of canal per worker")
    p.add_argument("workers")
    p.add_argument("width", help="canal width in nindan")
    p.add_argument("--unit", choices=["volume-sar", "sar60", "susi"],
                   default="volume-sar", help="unit of the water volume")
    p.add_argument("--constant", default="0;48",
                   help="canal constant z'/z (default 0;48)")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=_cmd_geom_labor_depth)

    p = with_json(sub.add_parser("replay", help="verify corpus problems"))
    p.add_argument("problem", nargs="?", help="problem id, e.g. smt24.p1")
    p.add_argument("--all", action="store_true", help="replay every problem")
    p.add_argument("--corpus", default=None,
                   help="corpus file (default: $SEXAKIT_CORPUS or bundled)")
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SexakitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
