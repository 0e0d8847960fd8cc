"""Exact rational scalars and inclusive rational intervals.

Everything in this module is exact: scalars are arbitrary-precision
fractions, intervals are closed with rational endpoints, and no operation
rounds. Decimal presentation lives in :mod:`realoracle.refine`.

The module also houses a few fast constructors for dyadic fractions
(denominator a power of two). Refinement streams bisect, so their endpoint
denominators are powers of two with many thousands of bits at deep budgets;
the stock ``Fraction`` constructor would run a full gcd there, which is the
dominant cost. Canonical form is preserved: only factors of two are ever
cancelled, and dyadic numerators are reduced to odd-or-small first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import ZeroInDenominator

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_ZERO = Fraction(0)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, string, or Fraction to an exact Fraction.

    Floats are rejected: silently converting a float would smuggle binary
    rounding into a library whose whole point is exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical text form "p" or "p/q" (q a positive integer)."""
    s = text.strip().replace("−", "-")
    num, sep, den = s.partition("/")
    try:
        n = int(num)
    except ValueError:
        raise ValueError(f"bad rational literal: {text!r}") from None
    if not sep:
        return Fraction(n)
    try:
        d = int(den)
    except ValueError:
        raise ValueError(f"bad rational literal: {text!r}") from None
    if d <= 0:
        raise ValueError(f"denominator must be a positive integer: {text!r}")
    return Fraction(n, d)


def format_rational(q: Fraction) -> str:
    """Canonical text form: "p/q", with "/q" omitted when q is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- fast fraction plumbing --------------------------------------------------

def _probe_raw_fraction() -> bool:
    try:
        f = Fraction.__new__(Fraction)
        f._numerator = 1
        f._denominator = 2
        return f == Fraction(1, 2)
    except (AttributeError, TypeError):
        return False


_RAW_OK = _probe_raw_fraction()


def _raw_fraction(num: int, den: int) -> Fraction:
    # Caller guarantees canonical form: den > 0, gcd(|num|, den) == 1.
    if not _RAW_OK:
        return Fraction(num, den)
    f = Fraction.__new__(Fraction)
    f._numerator = num
    f._denominator = den
    return f


def dyadic(num: int, shift: int) -> Fraction:
    """``num / 2**shift`` in canonical form, cancelling only factors of two."""
    if num == 0:
        return _ZERO
    if shift <= 0:
        return _raw_fraction(num << (-shift), 1) if shift else _raw_fraction(num, 1)
    tz = (num & -num).bit_length() - 1
    r = tz if tz < shift else shift
    return _raw_fraction(num >> r, 1 << (shift - r))


def _q_neg(a: Fraction) -> Fraction:
    return _raw_fraction(-a.numerator, a.denominator)


def _q_add(a: Fraction, b: Fraction) -> Fraction:
    da, db = a.denominator, b.denominator
    if (da & (da - 1)) == 0 and (db & (db - 1)) == 0:
        ka = da.bit_length() - 1
        kb = db.bit_length() - 1
        if ka >= kb:
            return dyadic((b.numerator << (ka - kb)) + a.numerator, ka)
        return dyadic((a.numerator << (kb - ka)) + b.numerator, kb)
    return a + b


def _q_sub(a: Fraction, b: Fraction) -> Fraction:
    return _q_add(a, _q_neg(b))


def _q_half(a: Fraction) -> Fraction:
    n, d = a.numerator, a.denominator
    if n & 1:
        return _raw_fraction(n, d << 1)
    return _raw_fraction(n >> 1, d)


def _interval_raw(lo: Fraction, hi: Fraction) -> "RInterval":
    # Trusted constructor: caller guarantees lo <= hi. Skips the ordering
    # check, whose cross-multiplication dominates deep refinement streams.
    iv = object.__new__(RInterval)
    object.__setattr__(iv, "lo", lo)
    object.__setattr__(iv, "hi", hi)
    return iv


# -- intervals ---------------------------------------------------------------

class IntervalRelation(Enum):
    SUBSET = "subset"
    SUPERSET = "superset"
    EQUAL = "equal"
    OVERLAP_ONLY = "overlap-only"
    DISJOINT = "disjoint"


class ArithOp(Enum):
    ADD = "add"
    NEG = "neg"
    MUL = "mul"
    RECIP = "recip"


@dataclass(frozen=True)
class RInterval:
    """Inclusive rational interval. ``lo == hi`` is a singleton.

    Direct construction requires ``lo <= hi``; use :func:`interval_make`
    when the endpoints arrive in unknown order.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = self.lo, self.hi
        if not isinstance(lo, Fraction):
            object.__setattr__(self, "lo", as_rational(lo))
            lo = self.lo
        if not isinstance(hi, Fraction):
            object.__setattr__(self, "hi", as_rational(hi))
            hi = self.hi
        if lo > hi:
            raise ValueError(f"misordered interval endpoints: {lo} > {hi}")

    # -- structure

    @property
    def width(self) -> Fraction:
        return _q_sub(self.hi, self.lo)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def encloses(self, other: "RInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "RInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def intersection(self, other: "RInterval") -> Optional["RInterval"]:
        lo = self.lo if self.lo >= other.lo else other.lo
        hi = self.hi if self.hi <= other.hi else other.hi
        if lo > hi:
            return None
        return _interval_raw(lo, hi)

    def relate(self, other: "RInterval") -> IntervalRelation:
        fwd = other.encloses(self)
        bwd = self.encloses(other)
        if fwd and bwd:
            return IntervalRelation.EQUAL
        if fwd:
            return IntervalRelation.SUBSET
        if bwd:
            return IntervalRelation.SUPERSET
        if self.intersects(other):
            return IntervalRelation.OVERLAP_ONLY
        return IntervalRelation.DISJOINT

    def midpoint(self) -> Fraction:
        return _q_half(_q_add(self.lo, self.hi))

    # -- exact image arithmetic

    def add(self, other: "RInterval") -> "RInterval":
        return _interval_raw(_q_add(self.lo, other.lo), _q_add(self.hi, other.hi))

    def neg(self) -> "RInterval":
        return _interval_raw(_q_neg(self.hi), _q_neg(self.lo))

    def sub(self, other: "RInterval") -> "RInterval":
        return self.add(other.neg())

    def mul(self, other: "RInterval") -> "RInterval":
        a, b = self.lo, self.hi
        c, d = other.lo, other.hi
        products = (a * c, a * d, b * c, b * d)
        return _interval_raw(min(products), max(products))

    def recip(self) -> "RInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroInDenominator(f"cannot invert {self}: it contains 0")
        return _interval_raw(1 / self.hi, 1 / self.lo)

    def absolute(self) -> "RInterval":
        if self.lo <= 0 <= self.hi:
            return _interval_raw(_ZERO, max(-self.lo, self.hi))
        if self.hi < 0:
            return self.neg()
        return self

    def __str__(self) -> str:
        return f"{format_rational(self.lo)}:{format_rational(self.hi)}"


def interval_make(x: RationalLike, y: RationalLike) -> RInterval:
    """Build the interval on two endpoints given in either order."""
    a, b = as_rational(x), as_rational(y)
    if a > b:
        a, b = b, a
    return RInterval(a, b)


def interval_contains(interval: RInterval, q: RationalLike) -> bool:
    return interval.contains(as_rational(q))


def interval_relate(a: RInterval, b: RInterval) -> IntervalRelation:
    return a.relate(b)


def interval_intersection(a: RInterval, b: RInterval) -> Optional[RInterval]:
    return a.intersection(b)


def interval_arith(op: ArithOp, a: RInterval, b: Optional[RInterval] = None) -> RInterval:
    """Dispatch exact interval arithmetic by operation tag."""
    if op is ArithOp.ADD:
        if b is None:
            raise ValueError("add needs a second interval")
        return a.add(b)
    if op is ArithOp.NEG:
        return a.neg()
    if op is ArithOp.MUL:
        if b is None:
            raise ValueError("mul needs a second interval")
        return a.mul(b)
    if op is ArithOp.RECIP:
        return a.recip()
    raise ValueError(f"unknown operation {op!r}")


def parse_interval(text: str) -> RInterval:
    """Parse the "lo:hi" text form; order-free like :func:`interval_make`."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"bad interval literal (want lo:hi): {text!r}")
    return interval_make(parse_rational(lo), parse_rational(hi))


def format_interval(interval: RInterval) -> str:
    return str(interval)
