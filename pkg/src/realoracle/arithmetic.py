"""Arithmetic on oracles, and ordering by disjoint Yes intervals.

A derived oracle refines by applying exact interval arithmetic to its
operands' refinements. Its definitive answers come from enclosure
containment or separation; boundary questions (is x - x exactly 0?) stay
Exhausted at every finite budget. When every operand carries a known root
the result collapses to the rational oracle of the exact value, which is
why arithmetic on rationals is always definitive.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Iterator, Sequence

from .constructors import rational_oracle
from .errors import ZeroWitnessInvalid
from .intervals import RInterval, format_rational
from .oracle import Budget, Oracle, QueryResult

_WITNESS_CHECK_BUDGET = Budget(64)


class CompareResult(Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL_KNOWN = "EqualKnown"
    UNDECIDED = "Undecided"


def _derived(
    operands: Sequence[Oracle],
    image: Callable[..., RInterval],
    label: str,
) -> Oracle:
    def stream() -> Iterator[RInterval]:
        known: list = []
        for op in operands:
            got = op._pull()
            if got is None:
                return
            known.append(got)
        yield image(*known)
        turn = 0
        while True:
            got = operands[turn]._pull()
            if got is None:
                return
            known[turn] = got
            turn = (turn + 1) % len(operands)
            yield image(*known)

    return Oracle(stream, label=label)


def o_neg(x: Oracle) -> Oracle:
    if x.root is not None:
        return rational_oracle(-x.root)
    return _derived([x], RInterval.neg, f"-({x.label})")


def o_add(x: Oracle, y: Oracle) -> Oracle:
    rx, ry = x.root, y.root
    if rx is not None and ry is not None:
        return rational_oracle(rx + ry)
    return _derived([x, y], RInterval.add, f"({x.label} + {y.label})")


def o_sub(x: Oracle, y: Oracle) -> Oracle:
    rx, ry = x.root, y.root
    if rx is not None and ry is not None:
        return rational_oracle(rx - ry)
    return _derived([x, y], RInterval.sub, f"({x.label} - {y.label})")


def o_mul(x: Oracle, y: Oracle) -> Oracle:
    rx, ry = x.root, y.root
    if rx is not None and ry is not None:
        return rational_oracle(rx * ry)
    return _derived([x, y], RInterval.mul, f"({x.label} * {y.label})")


def o_abs(x: Oracle) -> Oracle:
    if x.root is not None:
        return rational_oracle(abs(x.root))
    return _derived([x], RInterval.absolute, f"|{x.label}|")


def o_recip(x: Oracle, witness: RInterval) -> Oracle:
    """Reciprocal of an oracle known to avoid zero.

    The caller certifies the nonzero fact by supplying a Yes interval of x
    that excludes 0. The certificate is checked as far as a bounded query
    can: a witness containing zero, or one the operand definitively
    excludes, is rejected here; a lie that only surfaces later is raised
    from the refinement stream the moment the operand separates from it.
    """
    if witness.lo <= 0 <= witness.hi:
        raise ZeroWitnessInvalid(f"witness {witness} contains 0")
    root = x.root
    if root is not None:
        if not witness.contains(root):
            raise ZeroWitnessInvalid(
                f"witness {witness} excludes the operand's value {format_rational(root)}"
            )
        return rational_oracle(1 / root)
    if x.decide(witness, _WITNESS_CHECK_BUDGET) is QueryResult.NO:
        raise ZeroWitnessInvalid(f"witness {witness} is not a Yes interval of {x.label}")

    def image(got: RInterval) -> RInterval:
        clamped = got.intersection(witness)
        if clamped is None:
            raise ZeroWitnessInvalid(
                f"operand {x.label} refined to {got}, disjoint from witness {witness}"
            )
        return clamped.recip()

    return _derived([x], image, f"1/({x.label})")


def compare(x: Oracle, y: Oracle, budget: Budget) -> CompareResult:
    """Order two oracles by hunting for disjoint Yes intervals.

    LESS and GREATER are definitive and stable under larger budgets.
    EQUAL_KNOWN is only reported when both roots are known and coincide;
    otherwise equality is never decided and the search ends in UNDECIDED.
    """
    steps = budget.steps
    known_x = x._best
    known_y = y._best
    turn = 0
    while True:
        rx, ry = x.root, y.root
        if rx is not None and ry is not None:
            if rx < ry:
                return CompareResult.LESS
            if rx > ry:
                return CompareResult.GREATER
            return CompareResult.EQUAL_KNOWN
        if rx is not None and known_x is None:
            known_x = RInterval(rx, rx)
        if ry is not None and known_y is None:
            known_y = RInterval(ry, ry)
        if known_x is not None and known_y is not None:
            if known_x.hi < known_y.lo:
                return CompareResult.LESS
            if known_y.hi < known_x.lo:
                return CompareResult.GREATER
        if steps <= 0:
            return CompareResult.UNDECIDED
        steps -= 1
        pull_x = rx is None and (turn % 2 == 0 or ry is not None)
        if pull_x:
            known_x = x._pull()
            if known_x is None:
                return CompareResult.UNDECIDED
        else:
            known_y = y._pull()
            if known_y is None:
                return CompareResult.UNDECIDED
        turn += 1
