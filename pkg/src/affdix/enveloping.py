"""Truncated universal enveloping algebra U(g) in a chosen ordered PBW basis.

Elements are dicts {exponent tuple: coeff} over the ordered generators
g_1..g_d (any basis of g); the exponent tuple (a_1..a_d) stands for the
ordered product g_1^a_1 ... g_d^a_d.  Products are reduced to this normal
form by straightening with the bracket.
"""

from functools import lru_cache
from itertools import combinations_with_replacement

from .linalg import Subspace, inverse, matvec


def _add_into(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def word(m):
    """Generator indices of a monomial, left to right."""
    out = []
    for i, a in enumerate(m):
        out.extend([i] * a)
    return out


class Enveloping:
    def __init__(self, g, gens=None):
        self.g = g
        d = g.dim
        self.d = d
        self.gens = [tuple(v) for v in gens] if gens is not None else [g.e(i) for i in range(d)]
        if len(self.gens) != d or Subspace(d, self.gens).dim != d:
            raise ValueError("PBW generators must form a basis of g")
        M = [[self.gens[k][i] for k in range(d)] for i in range(d)]
        self._to_gens = inverse(M)
        # structure constants in the generator basis
        self.C = [[self.coords(g.bracket(a, b)) for b in self.gens] for a in self.gens]
        self._left = lru_cache(maxsize=None)(self._left_gen)

    def coords(self, v):
        """Coordinates of a vector of g in the generator basis."""
        return matvec(self._to_gens, v)

    def from_vector(self, v):
        c = self.coords(v)
        out = {}
        for i, a in enumerate(c):
            if a:
                out[_unit(self.d, i)] = a
        return out

    def one(self):
        return {(0,) * self.d: 1}

    def _left_gen(self, i, m):
        """g_i * m reduced to normal form (m a normal monomial)."""
        j = next((k for k in range(i) if m[k]), None)
        if j is None:
            m2 = list(m)
            m2[i] += 1
            return {tuple(m2): 1}
        # g_i g_j m' = g_j (g_i m') + [g_i, g_j] m'
        rest = list(m)
        rest[j] -= 1
        rest = tuple(rest)
        acc = {}
        for mono, c in self._left(i, rest).items():
            for mono2, c2 in self._left(j, mono).items():
                _add_into(acc, mono2, c * c2)
        for k, a in enumerate(self.C[i][j]):
            if a:
                for mono, c in self._left(k, rest).items():
                    _add_into(acc, mono, a * c)
        return acc

    def left_mul_gen(self, i, elem):
        acc = {}
        for m, c in elem.items():
            for m2, c2 in self._left(i, m).items():
                _add_into(acc, m2, c * c2)
        return acc

    def mul(self, A, B):
        acc = {}
        for m, c in A.items():
            prod = dict(B)
            for i in reversed(word(m)):
                prod = self.left_mul_gen(i, prod)
            for m2, c2 in prod.items():
                _add_into(acc, m2, c * c2)
        return acc

    def add(self, A, B, scale=1):
        acc = dict(A)
        for m, c in B.items():
            _add_into(acc, m, scale * c)
        return acc

    def monomials(self, D):
        """PBW monomials of total degree <= D, by degree then lexicographic generator word."""
        out = []
        for deg in range(D + 1):
            for w in combinations_with_replacement(range(self.d), deg):
                m = [0] * self.d
                for i in w:
                    m[i] += 1
                out.append(tuple(m))
        return out

    def convert(self, elem, other):
        """Re-express an element of ``other`` (another PBW basis of the same g) in this basis."""
        acc = {}
        gen_images = [self.from_vector(v) for v in other.gens]
        for m, c in elem.items():
            prod = self.one()
            for i in reversed(word(m)):
                prod = self.mul(gen_images[i], prod)
            for m2, c2 in prod.items():
                _add_into(acc, m2, c * c2)
        return acc

    def to_vector(self, elem, monos):
        index = {m: k for k, m in enumerate(monos)}
        v = [0] * len(monos)
        for m, c in elem.items():
            if m not in index:
                raise ValueError("element exceeds the truncation degree")
            v[index[m]] = c
        return v

    def from_coeffs(self, coeffs, monos):
        return {m: c for m, c in zip(monos, coeffs) if c}

    def format(self, elem, names=None):
        names = names or [f"g{i + 1}" for i in range(self.d)]
        if not elem:
            return "0"
        from .scalars import fmt_rat
        parts = []
        for m in sorted(elem, key=lambda m: (sum(m), word(m))):
            factors = [names[i] + (f"^{a}" if a > 1 else "") for i, a in enumerate(m) if a]
            parts.append("*".join([f"({fmt_rat(elem[m])})"] + factors))
        return " + ".join(parts)


def degree(elem):
    return max((sum(m) for m in elem), default=-1)


def _unit(d, i):
    return tuple(1 if k == i else 0 for k in range(d))
