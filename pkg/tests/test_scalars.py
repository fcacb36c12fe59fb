from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affdix.scalars import (
    INF, ScalarError, check_prime, fmt_rat, fmt_val, is_integral, is_prime, parse_rat, vp,
    vp_factorial,
)

rats = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q.numerator) < 10 ** 9)
primes = st.sampled_from([2, 3, 5, 7, 11])


def test_vp_examples():
    assert vp(12, 2) == 2
    assert vp(0, 5) == INF
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(Fraction(-50, 7), 5) == 2


def test_is_integral_examples():
    assert is_integral(Fraction(7, 3), 2)
    assert not is_integral(Fraction(1, 2), 2)
    assert is_integral(0, 3)


def test_vp_rejects_composite():
    with pytest.raises(ScalarError):
        vp(3, 4)
    with pytest.raises(ScalarError):
        check_prime(1)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(True)


def test_vp_factorial_matches_direct():
    import math
    for p in (2, 3, 5):
        for n in range(0, 30):
            assert vp_factorial(n, p) == vp(math.factorial(n), p)


def test_parse_and_format():
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat(" -4 ") == -4
    assert parse_rat(7) == 7
    for bad in ("0.5", "1e3", "", "a/b", "1/0", 0.5, None, True):
        with pytest.raises(ScalarError):
            parse_rat(bad)
    assert fmt_rat(Fraction(-3, 6)) == "-1/2"
    assert fmt_rat(4) == "4"
    assert fmt_val(INF) == "inf" and fmt_val(-2) == "-2"


@given(rats)
def test_roundtrip(q):
    assert parse_rat(fmt_rat(q)) == q


@given(rats, rats, rats)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1
    assert a + (-a) == 0


@given(rats)
def test_canonical_form(q):
    from math import gcd
    assert q.denominator > 0
    assert gcd(abs(q.numerator), q.denominator) == 1
    if q == 0:
        assert (q.numerator, q.denominator) == (0, 1)


@given(rats, rats, primes)
def test_vp_is_a_valuation(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)
    va, vb = vp(a, p), vp(b, p)
    assert vp(a + b, p) >= min(va, vb)
    if va != vb:
        assert vp(a + b, p) == min(va, vb)


@given(rats, primes)
def test_infinite_valuation_only_for_zero(q, p):
    assert (vp(q, p) == INF) == (q == 0)
