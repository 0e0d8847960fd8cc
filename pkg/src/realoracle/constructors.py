"""Concrete oracle constructions.

Rationals, positive n-th roots, zeros bracketed by a sign change, limits of
Cauchy sequences with an explicit convergence modulus, and least upper
bounds of sets given by a monotone upper-bound test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import InvalidBounds, InvalidBracket, UnsupportedDomain
from .intervals import (
    RInterval,
    _interval_raw,
    RationalLike,
    as_rational,
    dyadic,
    format_rational,
)
from .oracle import (
    FonsiSource,
    Oracle,
    Placement,
    QueryResult,
    oracle_from_fonsi,
)

_YES = QueryResult.YES
_NO = QueryResult.NO

# Construction-time locate calls spent hunting for a rational root of a
# bracketed zero. Enough for shallow roots like 1/3; irrational zeros burn
# the cap and stay unrooted.
_ROOT_PROBE_STEPS = 32


def rational_oracle(q: RationalLike) -> Oracle:
    """The oracle of a rational: an interval is Yes iff it contains ``q``."""
    value = as_rational(q)

    def rule(interval: RInterval) -> QueryResult:
        return _YES if interval.lo <= value <= interval.hi else _NO

    def hint(point: Fraction) -> Placement:
        if value < point:
            return Placement.LESS
        if value > point:
            return Placement.GREATER
        return Placement.EQUAL

    def stream() -> Iterator[RInterval]:
        singleton = RInterval(value, value)
        while True:
            yield singleton

    return Oracle(
        stream,
        root=value,
        locate_hint=hint,
        partial_rule=rule,
        label=f"rational({format_rational(value)})",
    )


def iroot(m: int, n: int) -> int:
    """Floor of the n-th root of a nonnegative integer, exactly."""
    if n < 1:
        raise ValueError("root index must be at least 1")
    if m < 0:
        raise ValueError("iroot takes a nonnegative integer")
    if m < 2 or n == 1:
        return m
    x = 1 << -(-m.bit_length() // n)  # overshoot seed
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > m:
        x -= 1
    while (x + 1) ** n <= m:
        x += 1
    return x


def _exact_nth_root(q: Fraction, n: int) -> Optional[Fraction]:
    rn = iroot(q.numerator, n)
    if rn ** n != q.numerator:
        return None
    rd = iroot(q.denominator, n)
    if rd ** n != q.denominator:
        return None
    return Fraction(rn, rd)


def _nth_root_stream(num: int, den: int, n: int) -> Iterator[RInterval]:
    # Dyadic digit recurrence: s is the largest integer with
    # s**n * den <= num * 2**(n*k). Appending a bit needs only shifts and
    # small-coefficient adds because (2s+b)**j expands binomially over the
    # maintained powers P[j] = den * s**j.
    s = iroot(num // den, n)
    while (s + 1) ** n * den <= num:
        s += 1
    while s > 0 and s ** n * den > num:
        s -= 1
    powers = [den * s ** j for j in range(n + 1)]
    scaled_num = num
    binom = [[math.comb(j, i) for i in range(j + 1)] for j in range(n + 1)]
    shift = 0
    yield _interval_raw(dyadic(s, 0), dyadic(s + 1, 0))
    while True:
        shift += 1
        scaled_num <<= n
        candidate = [
            sum(binom[j][i] * (powers[i] << i) for i in range(j + 1))
            for j in range(n + 1)
        ]
        if candidate[n] <= scaled_num:
            powers = candidate
            s = 2 * s + 1
        else:
            powers = [powers[j] << j for j in range(n + 1)]
            s = 2 * s
        yield _interval_raw(dyadic(s, shift), dyadic(s + 1, shift))


def nth_root_oracle(n: int, q: RationalLike) -> Oracle:
    """The positive n-th root of a positive rational.

    The membership rule is exact: for positive endpoints, an interval a:b
    is Yes iff a**n <= q <= b**n; intervals reaching at or below zero are
    resolved by the fact that the root itself is positive. The root field
    is present exactly when q is a perfect n-th power of a rational, which
    is decided by integer root extraction on numerator and denominator.
    """
    if not isinstance(n, int) or n < 1:
        raise UnsupportedDomain(f"root index must be a positive integer, got {n!r}")
    value = as_rational(q)
    if value <= 0:
        raise UnsupportedDomain(f"n-th roots are defined for positive rationals, got {format_rational(value)}")
    num, den = value.numerator, value.denominator
    root = _exact_nth_root(value, n)

    def rule(interval: RInterval) -> QueryResult:
        hi = interval.hi
        if hi <= 0:
            return _NO
        if hi.numerator ** n * den < num * hi.denominator ** n:
            return _NO
        lo = interval.lo
        if lo <= 0:
            return _YES
        if lo.numerator ** n * den <= num * lo.denominator ** n:
            return _YES
        return _NO

    def hint(point: Fraction) -> Placement:
        if point <= 0:
            return Placement.GREATER
        lhs = point.numerator ** n * den
        rhs = num * point.denominator ** n
        if lhs < rhs:
            return Placement.GREATER
        if lhs > rhs:
            return Placement.LESS
        return Placement.EQUAL

    if root is not None:
        def stream() -> Iterator[RInterval]:
            singleton = RInterval(root, root)
            while True:
                yield singleton
    else:
        def stream() -> Iterator[RInterval]:
            return _nth_root_stream(num, den, n)

    return Oracle(
        stream,
        root=root,
        locate_hint=hint,
        partial_rule=rule,
        label=f"root({n}, {format_rational(value)})",
    )


@dataclass(frozen=True)
class SignFunction:
    """An exactly evaluable sign rule: returns -1, 0, or +1 at any rational."""

    eval_sign: Callable[[Fraction], int]
    description: str = "f"


def polynomial_sign(coeffs) -> SignFunction:
    """Sign function of a polynomial with rational coefficients (low to high)."""
    cs = tuple(as_rational(c) for c in coeffs)

    def sign(point: Fraction) -> int:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * point + c
        if acc > 0:
            return 1
        if acc < 0:
            return -1
        return 0

    terms = ", ".join(format_rational(c) for c in cs)
    return SignFunction(sign, f"poly[{terms}]")


def _probe_rational_root(hint, lo: Fraction, hi: Fraction, steps: int) -> Optional[Fraction]:
    # Bounded hunt for a rational zero: integer sweep, then mediant descent.
    left = math.floor(lo)
    if hint(Fraction(left)) is Placement.EQUAL:
        return Fraction(left)
    while steps > 0:
        steps -= 1
        placement = hint(Fraction(left + 1))
        if placement is Placement.EQUAL:
            return Fraction(left + 1)
        if placement is Placement.LESS:
            break
        left += 1
        if left > hi:
            return None
    pl, ql = left, 1
    ph, qh = left + 1, 1
    while steps > 0:
        steps -= 1
        mp, mq = pl + ph, ql + qh
        placement = hint(Fraction(mp, mq))
        if placement is Placement.EQUAL:
            return Fraction(mp, mq)
        if placement is Placement.GREATER:
            pl, ql = mp, mq
        else:
            ph, qh = mp, mq
    return None


def ivt_oracle(f: SignFunction, a: RationalLike, b: RationalLike) -> Oracle:
    """The zero of a function bracketed by a sign change on [a, b].

    Requires the endpoint signs to differ or vanish, and the caller asserts
    there is exactly one sign change inside the bracket. A subinterval x:y
    of the bracket is Yes iff sign(f(x)) * sign(f(y)) <= 0; intervals beyond
    the bracket inherit their answer from the piece they share with it.
    """
    lo, hi = as_rational(a), as_rational(b)
    if lo >= hi:
        raise InvalidBracket(f"bracket must satisfy a < b, got {format_rational(lo)} >= {format_rational(hi)}")
    sign_lo = f.eval_sign(lo)
    sign_hi = f.eval_sign(hi)
    if sign_lo != 0 and sign_lo == sign_hi:
        raise InvalidBracket(
            f"no sign change: sign at both ends of {format_rational(lo)}:{format_rational(hi)} is {sign_lo:+d}"
        )
    bracket = RInterval(lo, hi)

    def rule(interval: RInterval) -> QueryResult:
        clamped = interval.intersection(bracket)
        if clamped is None:
            return _NO
        sx = sign_lo if clamped.lo == lo else f.eval_sign(clamped.lo)
        sy = sign_hi if clamped.hi == hi else f.eval_sign(clamped.hi)
        return _YES if sx * sy <= 0 else _NO

    def hint(point: Fraction) -> Placement:
        if point < lo:
            return Placement.GREATER
        if point > hi:
            return Placement.LESS
        s = f.eval_sign(point)
        if s == 0:
            return Placement.EQUAL
        return Placement.GREATER if s == sign_lo else Placement.LESS

    root: Optional[Fraction]
    if sign_lo == 0:
        root = lo
    elif sign_hi == 0:
        root = hi
    else:
        root = _probe_rational_root(hint, lo, hi, _ROOT_PROBE_STEPS)

    def stream() -> Iterator[RInterval]:
        x, y = lo, hi
        sx = sign_lo
        yield RInterval(x, y)
        while x < y:
            mid = RInterval(x, y).midpoint()
            sm = f.eval_sign(mid)
            if sm == 0:
                x = y = mid
            elif sm == sx:
                x = mid
            else:
                y = mid
            yield RInterval(x, y)
        while True:
            yield RInterval(x, y)

    return Oracle(
        stream,
        root=root,
        locate_hint=hint,
        partial_rule=rule,
        label=f"zero({f.description} on {bracket})",
    )


@dataclass(frozen=True)
class CauchySpec:
    """A Cauchy sequence with an explicit modulus of convergence.

    ``modulus(eps)`` returns an index N such that any two terms at indices
    >= N differ by at most eps. ``known_limit`` supplies the rational limit
    when there is one; without it the limit's own singleton is undecidable
    from tail enclosures alone.
    """

    term: Callable[[int], Fraction]
    modulus: Callable[[Fraction], int]
    known_limit: Optional[Fraction] = None


def cauchy_tail_enclosures(spec: CauchySpec) -> Iterator[RInterval]:
    """Tail enclosures [term(N(eps)) - eps, term(N(eps)) + eps] for eps = 1, 1/2, ..."""
    eps = Fraction(1)
    while True:
        index = spec.modulus(eps)
        if not isinstance(index, int) or index < 0:
            raise ValueError(f"modulus must return a nonnegative index, got {index!r}")
        center = as_rational(spec.term(index))
        yield RInterval(center - eps, center + eps)
        eps = eps / 2


def cauchy_oracle(spec: CauchySpec) -> Oracle:
    """Limit of a Cauchy sequence, via its tail enclosures.

    A wrong modulus is unmasked as :class:`~realoracle.errors.InvalidFonsi`
    the moment two tail enclosures fail to intersect.
    """
    oracle = oracle_from_fonsi(
        FonsiSource(cauchy_tail_enclosures(spec), claimed_root=spec.known_limit)
    )
    oracle.label = "cauchy" if spec.known_limit is None else f"cauchy(limit={format_rational(spec.known_limit)})"
    return oracle


@dataclass(frozen=True)
class UpperBoundTest:
    """A nonempty set bounded above, described by a monotone test.

    ``is_ub(u)`` decides whether u bounds the set from above; it must be
    monotone (once true, true for everything larger). ``seed_member`` is
    any point known to be at most the least upper bound, ``seed_bound`` a
    point known to be an upper bound.
    """

    is_ub: Callable[[Fraction], bool]
    seed_member: Fraction
    seed_bound: Fraction


def lub_oracle(test: UpperBoundTest) -> Oracle:
    """Least upper bound of the set described by ``test``.

    An interval is Yes outright when its upper end is an upper bound and
    its lower end is not. When both ends are upper bounds the question is
    whether the lower end is the least one, which bisection can refute but
    never confirm; such singleton queries stay Exhausted unless a root is
    known.
    """
    member = as_rational(test.seed_member)
    bound = as_rational(test.seed_bound)
    if not test.is_ub(bound):
        raise InvalidBounds(f"seed bound {format_rational(bound)} fails its own upper-bound test")
    root: Optional[Fraction] = None
    if test.is_ub(member):
        # A member-side point that already bounds the set is the lub itself.
        root = member

    def partial(interval: RInterval) -> Optional[QueryResult]:
        if not test.is_ub(interval.hi):
            return _NO
        if not test.is_ub(interval.lo):
            return _YES
        return None

    def stream() -> Iterator[RInterval]:
        x, y = member, bound
        yield RInterval(x, y)
        while True:
            mid = RInterval(x, y).midpoint()
            if test.is_ub(mid):
                y = mid
            else:
                x = mid
            yield RInterval(x, y)

    return Oracle(
        stream,
        root=root,
        partial_rule=partial,
        label=f"lub(seeds {format_rational(member)}, {format_rational(bound)})",
    )
