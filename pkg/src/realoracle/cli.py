"""Command-line front end.

Subcommands: ``eval`` (certified decimal), ``cf`` (continued fraction),
``approx`` (best rational approximation), ``query`` (decide one interval),
``check`` (run the axiom suite). Exit codes: 0 for a definitive result,
2 when the budget ran out (Exhausted or Undecided), 1 for errors.

Expression grammar::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | atom
    atom   := RATIONAL | "(" expr ")"
            | "sqrt" "(" RATIONAL ")"
            | "root" "(" INT "," RATIONAL ")"
            | "polyzero" "(" RATIONAL {"," RATIONAL} ";" RATIONAL "," RATIONAL ")"
            | "recip" "(" expr ";" RATIONAL ":" RATIONAL ")"
    RATIONAL := ["-"] INT ["/" INT]

``polyzero`` lists polynomial coefficients low to high, then the bracket
endpoints. Division by a rational literal is exact; division by a compound
expression is rejected with a hint to use ``recip`` with a witness
interval.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import __version__
from .arithmetic import o_add, o_mul, o_neg, o_recip, o_sub
from .axioms import Verdict, check_axioms
from .constructors import ivt_oracle, nth_root_oracle, polynomial_sign, rational_oracle
from .errors import (
    BudgetExhausted,
    ExprSemanticError,
    ExprSyntaxError,
    OracleError,
)
from .intervals import RInterval, format_rational, parse_interval
from .oracle import Budget, Oracle, QueryResult
from .refine import best_approx, mediant_expand, to_decimal

DEFAULT_BUDGET = 10_000


# -- abstract syntax ----------------------------------------------------------

@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Root:
    index: int
    radicand: Fraction


@dataclass(frozen=True)
class PolyZero:
    coeffs: Tuple[Fraction, ...]
    bracket_lo: Fraction
    bracket_hi: Fraction


@dataclass(frozen=True)
class Neg:
    child: "ExprAst"


@dataclass(frozen=True)
class Add:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Sub:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Mul:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Recip:
    child: "ExprAst"
    witness_lo: Fraction
    witness_hi: Fraction


ExprAst = Union[RationalLit, Root, PolyZero, Neg, Add, Sub, Mul, Recip]


# -- tokenizer ----------------------------------------------------------------

_SYMBOLS = "+-*/(),;:"


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", or the symbol itself
    text: str
    position: int


def _tokenize(source: str) -> List[_Token]:
    text = source.replace("−", "-")
    tokens: List[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(_Token("int", text[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("name", text[start:i], start))
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(i, "a number, name, or operator", repr(ch))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _here(self) -> int:
        tok = self._peek()
        return tok.position if tok is not None else len(self.source)

    def _take(self, kind: str) -> _Token:
        tok = self._peek()
        if tok is None or tok.kind != kind:
            raise ExprSyntaxError(self._here(), repr(kind), tok.text if tok else "end of input")
        self.pos += 1
        return tok

    def _accept(self, kind: str) -> Optional[_Token]:
        tok = self._peek()
        if tok is not None and tok.kind == kind:
            self.pos += 1
            return tok
        return None

    # RATIONAL := ["-"] INT ["/" INT]
    def _rational(self) -> Fraction:
        negative = self._accept("-") is not None
        whole = self._take("int")
        value = Fraction(int(whole.text))
        # Take "/" only when an integer follows, so term-level division of
        # non-literals still reaches the fold with its hint.
        nxt = self._peek()
        after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        if nxt is not None and nxt.kind == "/" and after is not None and after.kind == "int":
            self.pos += 1
            den_tok = self._take("int")
            den = int(den_tok.text)
            if den == 0:
                raise ExprSemanticError(f"zero denominator at position {den_tok.position}")
            value = Fraction(value.numerator, den)
        return -value if negative else value

    def parse(self) -> ExprAst:
        node = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ExprSyntaxError(tok.position, "end of input", tok.text)
        return node

    def _expr(self) -> ExprAst:
        node = self._term()
        while True:
            if self._accept("+"):
                node = Add(node, self._term())
            elif self._accept("-"):
                node = Sub(node, self._term())
            else:
                return node

    def _term(self) -> ExprAst:
        node = self._factor()
        while True:
            if self._accept("*"):
                node = Mul(node, self._factor())
            elif self._accept("/"):
                at = self._here()
                divisor = self._factor()
                node = self._fold_division(node, divisor, at)
            else:
                return node

    def _fold_division(self, num: ExprAst, den: ExprAst, position: int) -> ExprAst:
        value = _constant_value(den)
        if value is None:
            raise ExprSemanticError(
                f"division by a non-literal expression at position {position}; "
                "use recip(expr; lo:hi) with a zero-free witness interval"
            )
        if value == 0:
            raise ExprSemanticError(f"division by zero at position {position}")
        left = _constant_value(num)
        if left is not None:
            return RationalLit(left / value)
        return Mul(num, RationalLit(1 / value))

    def _factor(self) -> ExprAst:
        if self._accept("-"):
            return Neg(self._factor())
        return self._atom()

    def _atom(self) -> ExprAst:
        tok = self._peek()
        if tok is None:
            raise ExprSyntaxError(self._here(), "an expression", "end of input")
        if tok.kind == "int":
            return RationalLit(self._rational())
        if tok.kind == "(":
            self.pos += 1
            inner = self._expr()
            self._take(")")
            return inner
        if tok.kind == "name":
            return self._call(tok)
        raise ExprSyntaxError(tok.position, "a rational, '(', or a function name", tok.text)

    def _call(self, name: _Token) -> ExprAst:
        self.pos += 1
        if name.text == "sqrt":
            self._take("(")
            radicand = self._rational()
            self._take(")")
            return self._checked_root(2, radicand, name.position)
        if name.text == "root":
            self._take("(")
            index = self._rational()
            self._take(",")
            radicand = self._rational()
            self._take(")")
            if index.denominator != 1:
                raise ExprSemanticError(f"root index must be an integer, got {index}")
            return self._checked_root(int(index), radicand, name.position)
        if name.text == "polyzero":
            self._take("(")
            coeffs = [self._rational()]
            while self._accept(","):
                coeffs.append(self._rational())
            self._take(";")
            lo = self._rational()
            self._take(",")
            hi = self._rational()
            self._take(")")
            return self._checked_polyzero(tuple(coeffs), lo, hi)
        if name.text == "recip":
            self._take("(")
            child = self._expr()
            if not self._accept(";"):
                raise ExprSemanticError(
                    f"recip at position {name.position} needs a witness: recip(expr; lo:hi)"
                )
            wit_lo = self._rational()
            self._take(":")
            wit_hi = self._rational()
            self._take(")")
            return Recip(child, wit_lo, wit_hi)
        raise ExprSyntaxError(name.position, "sqrt, root, polyzero, or recip", name.text)

    @staticmethod
    def _checked_root(index: int, radicand: Fraction, position: int) -> Root:
        if index < 1:
            raise ExprSemanticError(f"root index must be positive, got {index}")
        if radicand <= 0:
            raise ExprSemanticError(
                f"root radicand must be a positive rational, got {format_rational(radicand)}"
            )
        return Root(index, radicand)

    @staticmethod
    def _checked_polyzero(coeffs: Tuple[Fraction, ...], lo: Fraction, hi: Fraction) -> PolyZero:
        if lo >= hi:
            raise ExprSemanticError("polyzero bracket needs lo < hi")
        sign = polynomial_sign(coeffs).eval_sign
        s_lo, s_hi = sign(lo), sign(hi)
        if s_lo != 0 and s_lo == s_hi:
            raise ExprSemanticError(
                f"polyzero bracket has the same strict sign ({s_lo:+d}) at both ends"
            )
        return PolyZero(coeffs, lo, hi)


def _constant_value(node: ExprAst) -> Optional[Fraction]:
    if isinstance(node, RationalLit):
        return node.value
    if isinstance(node, Neg):
        inner = _constant_value(node.child)
        return None if inner is None else -inner
    if isinstance(node, (Add, Sub, Mul)):
        left = _constant_value(node.left)
        right = _constant_value(node.right)
        if left is None or right is None:
            return None
        if isinstance(node, Add):
            return left + right
        if isinstance(node, Sub):
            return left - right
        return left * right
    return None


def parse_expr(text: str) -> ExprAst:
    """Parse expression text, or raise a positioned syntax/semantic error."""
    return _Parser(text).parse()


# -- pretty printer (inverse of the parser up to whitespace) ------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_ATOM = 1, 2, 3, 4


def format_expr(node: ExprAst, parent_prec: int = 0) -> str:
    if isinstance(node, RationalLit):
        text, prec = format_rational(node.value), _PREC_ATOM
        if node.value < 0:
            prec = _PREC_NEG
    elif isinstance(node, Root):
        if node.index == 2:
            text = f"sqrt({format_rational(node.radicand)})"
        else:
            text = f"root({node.index}, {format_rational(node.radicand)})"
        prec = _PREC_ATOM
    elif isinstance(node, PolyZero):
        coeffs = ", ".join(format_rational(c) for c in node.coeffs)
        text = f"polyzero({coeffs}; {format_rational(node.bracket_lo)}, {format_rational(node.bracket_hi)})"
        prec = _PREC_ATOM
    elif isinstance(node, Recip):
        text = (
            f"recip({format_expr(node.child)}; "
            f"{format_rational(node.witness_lo)}:{format_rational(node.witness_hi)})"
        )
        prec = _PREC_ATOM
    elif isinstance(node, Neg):
        text, prec = f"-{format_expr(node.child, _PREC_ATOM)}", _PREC_NEG
    elif isinstance(node, Add):
        text = f"{format_expr(node.left, _PREC_ADD)} + {format_expr(node.right, _PREC_ADD + 1)}"
        prec = _PREC_ADD
    elif isinstance(node, Sub):
        text = f"{format_expr(node.left, _PREC_ADD)} - {format_expr(node.right, _PREC_ADD + 1)}"
        prec = _PREC_ADD
    elif isinstance(node, Mul):
        text = f"{format_expr(node.left, _PREC_MUL)} * {format_expr(node.right, _PREC_MUL + 1)}"
        prec = _PREC_MUL
    else:
        raise TypeError(f"unknown node {node!r}")
    if prec < parent_prec:
        return f"({text})"
    return text


# -- evaluation ---------------------------------------------------------------

def build_oracle(node: ExprAst) -> Oracle:
    if isinstance(node, RationalLit):
        return rational_oracle(node.value)
    if isinstance(node, Root):
        return nth_root_oracle(node.index, node.radicand)
    if isinstance(node, PolyZero):
        return ivt_oracle(polynomial_sign(node.coeffs), node.bracket_lo, node.bracket_hi)
    if isinstance(node, Neg):
        return o_neg(build_oracle(node.child))
    if isinstance(node, Add):
        return o_add(build_oracle(node.left), build_oracle(node.right))
    if isinstance(node, Sub):
        return o_sub(build_oracle(node.left), build_oracle(node.right))
    if isinstance(node, Mul):
        return o_mul(build_oracle(node.left), build_oracle(node.right))
    if isinstance(node, Recip):
        witness = RInterval(min(node.witness_lo, node.witness_hi), max(node.witness_lo, node.witness_hi))
        return o_recip(build_oracle(node.child), witness)
    raise TypeError(f"unknown node {node!r}")


# -- commands -----------------------------------------------------------------

class _UsageError(Exception):
    pass


class _Argv(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Argv:
    parser = _Argv(prog="realoracle", description="Exact real arithmetic over interval oracles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("expr", help="expression, e.g. 'sqrt(2) + 1'")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help=f"refinement rounds per query (default {DEFAULT_BUDGET})")

    p_eval = sub.add_parser("eval", help="certified decimal enclosure")
    common(p_eval)
    p_eval.add_argument("--digits", type=int, default=10, help="decimal places (default 10)")
    p_eval.add_argument("--json", action="store_true",
                        help="emit exact rational bounds as JSON instead of text")

    p_cf = sub.add_parser("cf", help="continued fraction terms")
    common(p_cf)
    p_cf.add_argument("--terms", type=int, default=10, help="maximum terms (default 10)")

    p_approx = sub.add_parser("approx", help="best rational approximation")
    common(p_approx)
    p_approx.add_argument("--maxden", type=int, default=1000,
                          help="largest allowed denominator (default 1000)")

    p_query = sub.add_parser("query", help="decide one interval")
    common(p_query)
    p_query.add_argument("interval", help="inclusive rational interval, e.g. 1:2 or 1/2:3/4")

    p_check = sub.add_parser("check", help="run the axiom suite")
    common(p_check)
    p_check.add_argument("--samples", type=int, default=500, help="trials per property (default 500)")
    p_check.add_argument("--seed", type=int, default=0, help="sampler seed (default 0)")
    return parser


def _cmd_eval(args) -> int:
    oracle = build_oracle(parse_expr(args.expr))
    budget = Budget(args.budget)
    try:
        enclosure = to_decimal(oracle, args.digits, budget)
    except BudgetExhausted as stop:
        if args.json:
            best = oracle._pull()
            payload = {"status": "exhausted", "budget": args.budget}
            if best is not None:
                payload["lo"] = format_rational(best.lo)
                payload["hi"] = format_rational(best.hi)
            print(json.dumps(payload))
        else:
            print(f"exhausted (budget={args.budget}): {stop}")
        return 2
    if args.json:
        half = Fraction(1, 10 ** args.digits)
        print(json.dumps({
            "lo": format_rational(enclosure.value),
            "hi": format_rational(enclosure.value + half),
            "status": "exact" if enclosure.exact else "ok",
        }))
    else:
        print(str(enclosure))
    return 0


def _cmd_cf(args) -> int:
    oracle = build_oracle(parse_expr(args.expr))
    expansion = mediant_expand(oracle, args.terms, Budget(args.budget))
    print(str(expansion))
    return 0


def _cmd_approx(args) -> int:
    oracle = build_oracle(parse_expr(args.expr))
    best = best_approx(oracle, args.maxden, Budget(args.budget))
    print(format_rational(best))
    return 0


def _cmd_query(args) -> int:
    oracle = build_oracle(parse_expr(args.expr))
    interval = parse_interval(args.interval)
    answer = oracle.decide(interval, Budget(args.budget))
    if answer is QueryResult.EXHAUSTED:
        print(f"Exhausted (budget={args.budget})")
        return 2
    print(answer.value)
    return 0


def _cmd_check(args) -> int:
    oracle = build_oracle(parse_expr(args.expr))
    reports = check_axioms(oracle, args.seed, args.samples, Budget(args.budget))
    for report in reports:
        print(str(report))
    verdicts = {r.verdict for r in reports}
    if Verdict.FALSIFIED in verdicts:
        return 1
    if Verdict.INCONCLUSIVE in verdicts:
        return 2
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "cf": _cmd_cf,
    "approx": _cmd_approx,
    "query": _cmd_query,
    "check": _cmd_check,
}


def run_command(argv: Sequence[str]) -> int:
    """Run one CLI invocation; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError as usage:
        print(f"error: {usage}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except BudgetExhausted as stop:
        print(f"budget exhausted: {stop}", file=sys.stderr)
        return 2
    except (OracleError, ValueError) as failure:
        print(f"error: {failure}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
