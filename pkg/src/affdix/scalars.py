"""Exact rational scalars with p-adic valuation.

Scalars are ``fractions.Fraction`` throughout; the helpers here add the
p-adic bookkeeping and the string round-trip used by every file format.
"""

from fractions import Fraction
import math

INF = math.inf  # valuation of zero


class ScalarError(ValueError):
    pass


def is_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def check_prime(p):
    if not is_prime(p):
        raise ScalarError(f"{p!r} is not a prime")
    return p


def _vp_int(n, p):
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q, p):
    """Exponent of ``p`` in the rational ``q``; ``INF`` for zero."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def is_integral(q, p):
    return vp(q, p) >= 0


def vp_factorial(n, p):
    """Legendre's formula for vp(n!)."""
    check_prime(p)
    total, k = 0, p
    while k <= n:
        total += n // k
        k *= p
    return total


def parse_rat(text):
    """Parse ``"a"`` or ``"a/b"`` (ints also accepted). Floats are refused."""
    if isinstance(text, bool):
        raise ScalarError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ScalarError(f"not a rational string: {text!r}")
    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise ScalarError(f"not a rational string: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"not a rational string: {text!r}") from exc


def fmt_rat(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fmt_val(v):
    return "inf" if v == INF else str(v)
