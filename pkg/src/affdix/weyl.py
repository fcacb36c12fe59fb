"""Normal-ordered Weyl algebra A_r(Q) and its action on Q[u_1..u_r].

An element is a sparse map {(alpha, beta): coeff} for sum coeff x^alpha d^beta
with every x to the left of every d.  x_i acts on polynomials as
multiplication by u_i and d_i as the partial derivative in u_i.
"""

from fractions import Fraction
from itertools import product
from math import comb, factorial

from .scalars import INF, fmt_rat, vp


class WeylError(ValueError):
    pass


def _clean(terms):
    return {k: v for k, v in terms.items() if v}


def _add_into(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _falling(m, k):
    out = 1
    for t in range(k):
        out *= m - t
    return out


class Poly:
    """Polynomial in u_1..u_r with rational coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        self.terms = _clean({tuple(k): Fraction(v) for k, v in (terms or {}).items()})
        for k in self.terms:
            if len(k) != rank:
                raise WeylError("exponent length does not match rank")

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def const(cls, rank, c):
        return cls(rank, {(0,) * rank: c})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def __add__(self, other):
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(acc, k, v)
        return Poly(self.rank, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Poly(self.rank, {k: c * v for k, v in self.terms.items()})

    def shift(self, i, n):
        """Multiply by u_i^n."""
        out = {}
        for k, v in self.terms.items():
            k2 = list(k)
            k2[i] += n
            out[tuple(k2)] = v
        return Poly(self.rank, out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(f"u{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            c = f"({fmt_rat(self.terms[k])})"
            parts.append(c + "*" + mono if mono else c)
        return " + ".join(parts)


class WeylElement:
    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        clean = {}
        for (a, b), v in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != rank or len(b) != rank:
                raise WeylError("exponent length does not match rank")
            if v:
                clean[(a, b)] = Fraction(v)
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def const(cls, rank, c):
        z = (0,) * rank
        return cls(rank, {(z, z): c})

    @classmethod
    def one(cls, rank):
        return cls.const(rank, 1)

    @classmethod
    def x(cls, rank, i):
        z = (0,) * rank
        return cls(rank, {(_unit(rank, i), z): 1})

    @classmethod
    def d(cls, rank, i, n=1):
        z = (0,) * rank
        return cls(rank, {(z, _unit(rank, i, n)): 1})

    # arithmetic

    def _check(self, other):
        if self.rank != other.rank:
            raise WeylError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(acc, k, v)
        return WeylElement(self.rank, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return WeylElement(self.rank, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return self.scale(other)
        self._check(other)
        r = self.rank
        acc = {}
        for (a, b), c1 in self.terms.items():
            for (g, h), c2 in other.terms.items():
                # per index: d_i^b x_i^g = sum_k C(b,k) C(g,k) k! x_i^(g-k) d_i^(b-k)
                choices = []
                for i in range(r):
                    bi, gi = b[i], g[i]
                    choices.append([(k, comb(bi, k) * comb(gi, k) * factorial(k))
                                    for k in range(min(bi, gi) + 1)])
                for combo in product(*choices):
                    coef = c1 * c2
                    xs, ds = [], []
                    for i, (k, w) in enumerate(combo):
                        coef *= w
                        xs.append(a[i] + g[i] - k)
                        ds.append(b[i] - k + h[i])
                    _add_into(acc, (tuple(xs), tuple(ds)), coef)
        return WeylElement(r, acc)

    __rmul__ = scale

    def __pow__(self, n):
        out = WeylElement.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    # inspection

    def is_zero(self):
        return not self.terms

    def is_const(self):
        z = (0,) * self.rank
        return all(k == (z, z) for k in self.terms)

    def has_x(self):
        return any(any(a) for a, _ in self.terms)

    def degree(self):
        return max((sum(a) + sum(b) for a, b in self.terms), default=-1)

    def min_vp(self, p):
        return min((vp(v, p) for v in self.terms.values()), default=INF)

    def apply(self, f):
        if f.rank != self.rank:
            raise WeylError(f"rank mismatch: {self.rank} vs {f.rank}")
        acc = {}
        for (a, b), c in self.terms.items():
            for m, cf in f.terms.items():
                w = 1
                for i in range(self.rank):
                    if m[i] < b[i]:
                        w = 0
                        break
                    w *= _falling(m[i], b[i])
                if w:
                    key = tuple(m[i] - b[i] + a[i] for i in range(self.rank))
                    _add_into(acc, key, c * cf * w)
        return Poly(self.rank, acc)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WeylElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, b in sorted(self.terms, key=lambda k: (sum(k[0]) + sum(k[1]), k[0], k[1])):
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e]
            factors += [f"d{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(b) if e]
            c = f"({fmt_rat(self.terms[(a, b)])})"
            parts.append("*".join([c] + factors))
        return " + ".join(parts)

    def to_json(self):
        return [
            {"x": list(a), "d": list(b), "coeff": fmt_rat(self.terms[(a, b)])}
            for a, b in sorted(self.terms, key=lambda k: (sum(k[0]) + sum(k[1]), k[0], k[1]))
        ]


def _unit(r, i, n=1):
    return tuple(n if k == i else 0 for k in range(r))


def divided_derivative_apply(i, n, f):
    """Apply (1/n!) d_i^n to f."""
    if n < 0:
        raise WeylError("order must be non-negative")
    acc = {}
    for m, c in f.terms.items():
        if m[i] >= n:
            key = list(m)
            key[i] -= n
            _add_into(acc, tuple(key), c * comb(m[i], n))
    return Poly(f.rank, acc)
