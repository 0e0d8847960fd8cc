"""Function oracles: rules over base/wall rectangles, and application.

A function oracle answers Yes to a rectangle when the image of the base
lies inside the wall. Here one is supplied as a sound interval extension
plus a modulus relating wall width to base width; the rectangle rule is
derived, countering the extension's overestimation by subdividing the base.
Applying a function oracle to a real oracle composes the extension with the
argument's refinement stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Optional

from .constructors import rational_oracle
from .errors import DomainEscape, ZeroInDenominator
from .intervals import RInterval, as_rational, format_rational
from .oracle import Budget, Oracle, QueryResult


@dataclass(frozen=True)
class Rectangle:
    base: RInterval
    wall: RInterval


@dataclass(frozen=True)
class FunctionOracle:
    """A function presented at interval level.

    ``extension`` maps a base interval to an enclosure of its true image;
    it must be sound (image contained) and inclusion-monotone, with wall
    widths shrinking as base widths do. ``modulus(width, within)`` returns
    a base width guaranteeing extension output no wider than ``width`` for
    bases inside ``within``. ``point`` evaluates the function exactly at a
    rational when that is possible, enabling definitive No answers and
    rooted results. ``domain`` bounds where the extension is defined;
    None means everywhere.
    """

    extension: Callable[[RInterval], RInterval]
    modulus: Callable[[Fraction, RInterval], Fraction]
    point: Optional[Callable[[Fraction], Fraction]] = None
    domain: Optional[RInterval] = None
    description: str = "f"


def rect_decide(fn: FunctionOracle, rect: Rectangle, budget: Budget) -> QueryResult:
    """Does the image of the rectangle's base fit inside its wall?

    Yes once every piece of a budgeted base subdivision extends into the
    wall; No as soon as an exact point evaluation escapes it; Exhausted
    when the budget runs out first.
    """
    base, wall = rect.base, rect.wall
    if fn.domain is not None and not fn.domain.encloses(base):
        raise DomainEscape(
            f"base {base} is not inside the domain {fn.domain} of {fn.description}"
        )

    def escapes(t: Fraction) -> bool:
        return fn.point is not None and not wall.contains(fn.point(t))

    if escapes(base.lo) or escapes(base.hi):
        return QueryResult.NO
    pending: List[RInterval] = [base]
    steps = budget.steps
    while pending:
        piece = pending.pop()
        if wall.encloses(fn.extension(piece)):
            continue
        if piece.is_singleton:
            if fn.point is None:
                return QueryResult.EXHAUSTED
            if escapes(piece.lo):
                return QueryResult.NO
            continue
        mid = piece.midpoint()
        if escapes(mid):
            return QueryResult.NO
        if steps <= 0:
            return QueryResult.EXHAUSTED
        steps -= 1
        pending.append(RInterval(piece.lo, mid))
        pending.append(RInterval(mid, piece.hi))
    return QueryResult.YES


def apply(fn: FunctionOracle, x: Oracle) -> Oracle:
    """The oracle of f(x): walls of Yes rectangles whose base holds x.

    The result refines by extending x's refinements. When x is rooted and
    the function evaluates exactly there, the result is rooted at that
    value. Raises :class:`DomainEscape` if a refinement of x separates from
    the function's domain.
    """
    root = x.root
    if root is not None and fn.point is not None:
        if fn.domain is not None and not fn.domain.contains(root):
            raise DomainEscape(
                f"{format_rational(root)} lies outside the domain {fn.domain} of {fn.description}"
            )
        return rational_oracle(fn.point(root))

    def stream() -> Iterator[RInterval]:
        while True:
            got = x._pull()
            if got is None:
                return
            if fn.domain is not None:
                clamped = got.intersection(fn.domain)
                if clamped is None:
                    raise DomainEscape(
                        f"refinement {got} of {x.label} left the domain {fn.domain} of {fn.description}"
                    )
                got = clamped
            yield fn.extension(got)

    return Oracle(stream, label=f"{fn.description}({x.label})")


def _horner_interval(coeffs, base: RInterval) -> RInterval:
    acc = RInterval(coeffs[-1], coeffs[-1])
    for c in reversed(coeffs[:-1]):
        point = RInterval(c, c)
        acc = acc.mul(base).add(point)
    return acc


def poly_extension(coeffs) -> FunctionOracle:
    """Interval extension of a polynomial, coefficients low to high.

    Evaluation is Horner form over exact interval arithmetic. The modulus
    comes from bounding the width growth of each Horner stage on the given
    working region.
    """
    cs = tuple(as_rational(c) for c in coeffs)
    if not cs:
        cs = (Fraction(0),)

    def extension(base: RInterval) -> RInterval:
        return _horner_interval(cs, base)

    def point(t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    def modulus(width: Fraction, within: RInterval) -> Fraction:
        if width <= 0:
            raise ValueError("target width must be positive")
        mag = max(abs(within.lo), abs(within.hi))
        # Width through stage k grows by at most mag per level plus the
        # magnitude bound of the incoming stage; summed, base width delta
        # yields output width at most delta * slope.
        degree = len(cs) - 1
        slope = Fraction(0)
        for k in range(1, degree + 1):
            stage_mag = sum(abs(cs[j]) * mag ** (j - k) for j in range(k, degree + 1))
            slope += mag ** (k - 1) * stage_mag
        if slope == 0:
            return width
        return width / slope

    terms = ", ".join(format_rational(c) for c in cs)
    return FunctionOracle(extension, modulus, point=point, description=f"poly[{terms}]")


def recip_extension(domain: RInterval) -> FunctionOracle:
    """Interval extension of x -> 1/x on a zero-free domain."""
    if domain.lo <= 0 <= domain.hi:
        raise ZeroInDenominator(f"reciprocal domain {domain} contains 0")
    least = min(abs(domain.lo), abs(domain.hi))

    def extension(base: RInterval) -> RInterval:
        clamped = base.intersection(domain)
        if clamped is None:
            raise DomainEscape(f"base {base} misses the domain {domain}")
        return clamped.recip()

    def point(t: Fraction) -> Fraction:
        return 1 / t

    def modulus(width: Fraction, within: RInterval) -> Fraction:
        if width <= 0:
            raise ValueError("target width must be positive")
        return width * least * least

    return FunctionOracle(
        extension,
        modulus,
        point=point,
        domain=domain,
        description=f"recip[{domain}]",
    )
