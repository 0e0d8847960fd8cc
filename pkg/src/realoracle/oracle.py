"""The oracle abstraction: budgeted Yes/No queries over rational intervals.

An :class:`Oracle` stands for one real number. Its observable behaviour:

* ``decide(I, budget)`` answers whether the number ought to lie in the
  inclusive rational interval ``I``. ``YES`` and ``NO`` are definitive and
  never flip when the budget is raised; ``EXHAUSTED`` means the budget ran
  out before the question resolved.
* ``refine(width, budget)`` produces a Yes interval no wider than ``width``.
  Successive results are nested, so any two of them intersect.
* ``locate(c, budget)`` places the number relative to a rational point.
* ``root`` is the rational the oracle is pinned to, when that is known.
  ``None`` encodes ignorance, not irrationality.

Operationally an oracle is driven by a stream of nested Yes intervals whose
widths tend to zero. Constructors with an exact membership test (rationals,
roots, zero brackets) also install a direct rule, so their answers never
consume budget. One budget step corresponds to one pull from the stream.

Oracles are safe to share between threads: stream pulls are serialized by a
lock, and the cached narrowest interval only ever shrinks, so concurrent
queries return consistent definitive answers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .errors import InvalidFonsi
from .intervals import RInterval, _interval_raw, format_rational

QueryRule = Callable[[RInterval], "Optional[QueryResult]"]
LocateHint = Callable[[Fraction], "Placement"]


class QueryResult(Enum):
    YES = "Yes"
    NO = "No"
    EXHAUSTED = "Exhausted"


class Placement(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class Budget:
    """Cap on refinement rounds for one query."""

    steps: int

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("budget steps must be nonnegative")


@dataclass
class FonsiSource:
    """A family of overlapping, notionally shrinking intervals.

    ``enumerator`` yields intervals that pairwise intersect and become
    arbitrarily short. ``claimed_root`` names the one rational lying in all
    of them, for sources (such as converging sums with a known rational
    limit) where no finite intersection ever collapses to the singleton.
    """

    enumerator: Iterable[RInterval]
    claimed_root: Optional[Fraction] = None


class Oracle:
    def __init__(
        self,
        stream_factory: Optional[Callable[[], Iterator[RInterval]]],
        *,
        root: Optional[Fraction] = None,
        locate_hint: Optional[LocateHint] = None,
        partial_rule: Optional[QueryRule] = None,
        label: str = "oracle",
    ):
        self._stream_factory = stream_factory
        self._iter: Optional[Iterator[RInterval]] = None
        self._best: Optional[RInterval] = None
        self._root = root
        self._locate_hint = locate_hint
        self._partial_rule = partial_rule
        self._lock = threading.Lock()
        self.label = label

    def __repr__(self) -> str:
        return f"<Oracle {self.label}>"

    @property
    def root(self) -> Optional[Fraction]:
        """The known root, or None when no root is known (not "irrational")."""
        return self._root

    # -- stream plumbing

    def _discover_root(self, value: Fraction) -> None:
        with self._lock:
            if self._root is None:
                self._root = value
                self._best = RInterval(value, value)

    def _pull(self) -> Optional[RInterval]:
        """Advance the refinement stream by one interval and return it.

        Once a root is known the stream is bypassed and the root singleton
        is returned. A stream that ends simply stops making progress; pulls
        then return the narrowest interval seen so far.
        """
        with self._lock:
            root = self._root
            if root is not None:
                best = self._best
                if best is None or not best.is_singleton:
                    best = _interval_raw(root, root)
                    self._best = best
                return best
            if self._iter is None:
                if self._stream_factory is None:
                    return self._best
                self._iter = self._stream_factory()
            try:
                nxt = next(self._iter)
            except StopIteration:
                return self._best
            self._best = nxt
            if nxt.is_singleton:
                self._root = nxt.lo
            return nxt

    def refiner(self) -> Iterator[RInterval]:
        """Infinite stream of successively narrower Yes intervals."""
        while True:
            got = self._pull()
            if got is None:
                return
            yield got

    # -- queries

    def decide(self, interval: RInterval, budget: Budget) -> QueryResult:
        rule = self._partial_rule
        if rule is not None:
            verdict = rule(interval)
            if verdict is not None:
                return verdict
        root = self._root
        if root is not None:
            return QueryResult.YES if interval.contains(root) else QueryResult.NO
        steps = budget.steps
        known = self._best
        while True:
            if known is not None:
                if interval.encloses(known):
                    return QueryResult.YES
                if not known.intersects(interval):
                    return QueryResult.NO
            if steps <= 0:
                return QueryResult.EXHAUSTED
            steps -= 1
            known = self._pull()
            if known is None:
                return QueryResult.EXHAUSTED
            root = self._root
            if root is not None:
                return QueryResult.YES if interval.contains(root) else QueryResult.NO

    def refine(self, width: Fraction, budget: Budget) -> Optional[RInterval]:
        """A Yes interval of width at most ``width``, or None on exhaustion.

        Every call charges at least one step, so a zero budget always
        returns None.
        """
        if width <= 0:
            raise ValueError("requested width must be positive")
        steps = budget.steps
        known = self._best
        while steps > 0:
            steps -= 1
            if known is None or known.width > width:
                known = self._pull()
            if known is not None and known.width <= width:
                return known
        return None

    def locate(self, point: Fraction, budget: Budget) -> Placement:
        """Place the oracle's number relative to ``point``.

        GREATER means the number exceeds the point. EQUAL arises only when
        the point is the root, via an exact hint or known root.
        """
        hint = self._locate_hint
        if hint is not None:
            placement = hint(point)
            if placement is Placement.EQUAL:
                self._discover_root(point)
            return placement
        root = self._root
        if root is not None:
            return _compare_point(root, point)
        steps = budget.steps
        known = self._best
        while True:
            if known is not None:
                if known.hi < point:
                    return Placement.LESS
                if known.lo > point:
                    return Placement.GREATER
            if steps <= 0:
                return Placement.EXHAUSTED
            steps -= 1
            known = self._pull()
            if known is None:
                return Placement.EXHAUSTED
            root = self._root
            if root is not None:
                return _compare_point(root, point)

    # -- operator sugar (delegates to the combinators module)

    def __neg__(self) -> "Oracle":
        from .arithmetic import o_neg

        return o_neg(self)

    def __add__(self, other: "Oracle") -> "Oracle":
        from .arithmetic import o_add

        return o_add(self, other)

    def __sub__(self, other: "Oracle") -> "Oracle":
        from .arithmetic import o_sub

        return o_sub(self, other)

    def __mul__(self, other: "Oracle") -> "Oracle":
        from .arithmetic import o_mul

        return o_mul(self, other)

    def __abs__(self) -> "Oracle":
        from .arithmetic import o_abs

        return o_abs(self)


def _compare_point(number: Fraction, point: Fraction) -> Placement:
    if number < point:
        return Placement.LESS
    if number > point:
        return Placement.GREATER
    return Placement.EQUAL


def is_rooted(oracle: Oracle) -> Optional[Fraction]:
    """The oracle's root when one is known; None encodes ignorance."""
    return oracle.root


def oracle_from_fonsi(source: FonsiSource) -> Oracle:
    """The unique oracle determined by a fonsi.

    An interval is Yes exactly when it contains a finite intersection of
    enumerated intervals, plus the claimed root's singleton when one is
    given. Queries pull the enumerator and keep a running intersection;
    raises :class:`InvalidFonsi` the moment two enumerated intervals fail
    to intersect.
    """
    enumerator = source.enumerator

    def stream() -> Iterator[RInterval]:
        running: Optional[RInterval] = None
        for nxt in enumerator:
            if not isinstance(nxt, RInterval):
                raise TypeError(f"fonsi enumerator must yield RInterval, got {type(nxt).__name__}")
            if running is None:
                running = nxt
            else:
                merged = running.intersection(nxt)
                if merged is None:
                    raise InvalidFonsi(
                        f"enumerated interval {nxt} is disjoint from the running intersection {running}"
                    )
                running = merged
            yield running

    root = source.claimed_root
    label = "fonsi" if root is None else f"fonsi(root={format_rational(root)})"
    return Oracle(stream, root=root, label=label)
