import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from realoracle.errors import ZeroInDenominator
from realoracle.intervals import (
    ArithOp,
    IntervalRelation,
    RInterval,
    dyadic,
    format_interval,
    format_rational,
    interval_arith,
    interval_contains,
    interval_intersection,
    interval_make,
    interval_relate,
    parse_interval,
    parse_rational,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


class TestMake:
    def test_normalizes_order(self):
        assert interval_make(2, 1) == RInterval(F(1), F(2))

    def test_singleton(self):
        iv = interval_make(F(1, 2), F(1, 2))
        assert iv.is_singleton and iv.width == 0

    def test_already_ordered(self):
        assert interval_make(F(-3, 4), 5) == RInterval(F(-3, 4), F(5))

    def test_direct_misorder_rejected(self):
        with pytest.raises(ValueError):
            RInterval(F(2), F(1))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            interval_make(0.5, 1)


class TestContains:
    def test_inclusive_endpoint(self):
        assert interval_contains(interval_make(1, 2), 1)

    def test_outside(self):
        assert not interval_contains(interval_make(1, 2), 3)

    def test_singleton_self_membership(self):
        assert interval_contains(interval_make(F(1, 2), F(1, 2)), F(1, 2))


class TestRelate:
    def test_superset(self):
        assert interval_relate(interval_make(1, 4), interval_make(2, 3)) is IntervalRelation.SUPERSET

    def test_disjoint(self):
        assert interval_relate(interval_make(1, 2), interval_make(3, 4)) is IntervalRelation.DISJOINT

    def test_shared_endpoint_overlaps(self):
        assert interval_relate(interval_make(1, 2), interval_make(2, 3)) is IntervalRelation.OVERLAP_ONLY

    def test_subset_and_equal(self):
        assert interval_relate(interval_make(2, 3), interval_make(1, 4)) is IntervalRelation.SUBSET
        assert interval_relate(interval_make(1, 2), interval_make(1, 2)) is IntervalRelation.EQUAL

    @given(a=rationals, b=rationals, c=rationals, d=rationals)
    def test_intersection_present_iff_not_disjoint(self, a, b, c, d):
        i, j = interval_make(a, b), interval_make(c, d)
        present = interval_intersection(i, j) is not None
        assert present == (interval_relate(i, j) is not IntervalRelation.DISJOINT)


class TestIntersection:
    def test_overlap(self):
        assert interval_intersection(interval_make(1, 3), interval_make(2, 4)) == interval_make(2, 3)

    def test_endpoint_touch_gives_singleton(self):
        got = interval_intersection(interval_make(1, 2), interval_make(2, 4))
        assert got == interval_make(2, 2) and got.is_singleton

    def test_disjoint_absent(self):
        assert interval_intersection(interval_make(0, 1), interval_make(2, 3)) is None


class TestArithmetic:
    def test_add_endpoint_sums(self):
        got = interval_arith(ArithOp.ADD, interval_make(1, 2), interval_make(3, 5))
        assert got == interval_make(4, 7)

    def test_mul_matches_endpoint_product_search(self):
        i, j = interval_make(-1, 2), interval_make(3, 4)
        products = [x * y for x in (i.lo, i.hi) for y in (j.lo, j.hi)]
        expected = interval_make(min(products), max(products))
        assert expected == interval_make(-4, 8)
        assert interval_arith(ArithOp.MUL, i, j) == expected

    def test_recip_by_sampling(self):
        i = interval_make(2, 4)
        got = interval_arith(ArithOp.RECIP, i)
        assert got == interval_make(F(1, 4), F(1, 2))
        for k in range(33):
            x = i.lo + (i.hi - i.lo) * k / 32
            assert got.contains(1 / x)

    def test_recip_rejects_zero(self):
        with pytest.raises(ZeroInDenominator):
            interval_arith(ArithOp.RECIP, interval_make(-1, 1))

    def test_neg(self):
        assert interval_arith(ArithOp.NEG, interval_make(-1, 2)) == interval_make(-2, 1)

    def test_soundness_bulk(self):
        # x op y always lands inside the image interval.
        rng = random.Random(9)

        def rand_q():
            return F(rng.randint(-1000, 1000), rng.randint(1, 60))

        for _ in range(10_000):
            i = interval_make(rand_q(), rand_q())
            j = interval_make(rand_q(), rand_q())
            t, u = rng.random(), rng.random()
            x = i.lo + (i.hi - i.lo) * F(rng.randint(0, 16), 16)
            y = j.lo + (j.hi - j.lo) * F(rng.randint(0, 16), 16)
            assert i.add(j).contains(x + y)
            assert i.mul(j).contains(x * y)
            assert i.neg().contains(-x)
        del t, u

    @given(a=rationals, b=rationals, c=rationals, d=rationals)
    def test_mul_tightness(self, a, b, c, d):
        # Both result endpoints are attained by an endpoint product.
        i, j = interval_make(a, b), interval_make(c, d)
        got = i.mul(j)
        products = {x * y for x in (i.lo, i.hi) for y in (j.lo, j.hi)}
        assert got.lo in products and got.hi in products


class TestRationalPlumbing:
    @given(p=rationals, q=rationals)
    def test_field_round_trips(self, p, q):
        assert (p + q) - q == p
        if q != 0:
            assert (p * q) / q == p

    @given(p=rationals)
    def test_canonical_form(self, p):
        import math

        assert p.denominator > 0
        assert math.gcd(abs(p.numerator), p.denominator) == 1

    def test_text_round_trip(self):
        for text in ("3", "-7/5", "0", "22/7"):
            assert format_rational(parse_rational(text)) == text

    def test_parse_rejects_bad_denominator(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")
        with pytest.raises(ValueError):
            parse_rational("1/-2")

    def test_interval_text_round_trip(self):
        iv = interval_make(F(-3, 4), F(5))
        assert parse_interval(format_interval(iv)) == iv
        assert format_interval(iv) == "-3/4:5"

    @given(n=st.integers(min_value=-10**9, max_value=10**9), k=st.integers(min_value=0, max_value=80))
    def test_dyadic_matches_fraction(self, n, k):
        assert dyadic(n, k) == F(n, 2**k)
