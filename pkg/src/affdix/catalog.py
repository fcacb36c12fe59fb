"""Bundled test algebras and a generator of random nilpotent algebras
built as iterated central extensions."""

import itertools
import math
from fractions import Fraction

from .lie import LieAlgebra
from .linalg import nullspace


def abelian(d, p=3):
    return LieAlgebra([[[0] * d for _ in range(d)] for _ in range(d)], p)


def heisenberg(n=1, p=3):
    """H_{2n+1}: [e_{2i-1}, e_{2i}] = e_{2n+1}."""
    d = 2 * n + 1
    return LieAlgebra.from_brackets(d, {(2 * i, 2 * i + 1): {d - 1: 1} for i in range(n)}, p)


def filiform4(p=3):
    """[e1,e2] = e3, [e1,e3] = e4."""
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}}, p)


def h3_times_abelian(k=2, p=3):
    return LieAlgebra.from_brackets(3 + k, {(0, 1): {2: 1}}, p)


def _dual_top(d):
    return tuple(Fraction(int(i == d - 1)) for i in range(d))


# name -> (builder, default form, description)
CATALOG = {
    "abelian1": (lambda p=3: abelian(1, p), (1,), "abelian, dim 1"),
    "abelian2": (lambda p=3: abelian(2, p), (1, 2), "abelian, dim 2"),
    "abelian3": (lambda p=3: abelian(3, p), (1, 2, 3), "abelian, dim 3"),
    "h3": (lambda p=3: heisenberg(1, p), (0, 0, 1), "Heisenberg [e1,e2]=e3"),
    "h5": (lambda p=3: heisenberg(2, p), (0, 0, 0, 0, 1), "Heisenberg [e1,e2]=[e3,e4]=e5"),
    "f4": (filiform4, (0, 0, 0, 1), "filiform [e1,e2]=e3, [e1,e3]=e4"),
    "h3xab2": (lambda p=3: h3_times_abelian(2, p), (0, 0, 1, 0, 0), "H3 x abelian dim 2"),
}


def load(name, p=3):
    """(algebra, default form) for a catalog entry."""
    if name not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG)}")
    build, lam, _ = CATALOG[name]
    return build(p), tuple(Fraction(a) for a in lam)


def _cocycles(c, n):
    """Basis of antisymmetric bilinear w on K^n with w([a,b],c) + cyclic = 0."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {pr: k for k, pr in enumerate(pairs)}
    rows = []
    for i, j, k in itertools.combinations(range(n), 3):
        row = [Fraction(0)] * len(pairs)
        for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
            for t, x in enumerate(c[a][b]):
                if x and t != cc:
                    if t < cc:
                        row[index[(t, cc)]] += x
                    else:
                        row[index[(cc, t)]] -= x
        rows.append(row)
    if rows:
        basis = nullspace(rows, len(pairs))
    else:
        basis = [tuple(Fraction(int(q == s)) for q in range(len(pairs))) for s in range(len(pairs))]
    return pairs, basis


def random_nilpotent(dim, rng, p=3, coeff=2, start=2):
    """Random nilpotent algebra of the given dimension with integer constants.

    Starts from an abelian algebra of dimension ``start`` and adds one central
    generator at a time with a random integral 2-cocycle.
    """
    n = min(start, dim)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    while n < dim:
        pairs, basis = _cocycles(c, n)
        w = [Fraction(0)] * len(pairs)
        for v in basis:
            a = rng.randint(-coeff, coeff)
            for t in range(len(pairs)):
                w[t] += a * v[t]
        den = math.lcm(*[x.denominator for x in w]) if w else 1
        w = [x * den for x in w]
        new = [[[Fraction(0)] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
        for i in range(n):
            for j in range(n):
                new[i][j][:n] = c[i][j]
        for t, (i, j) in enumerate(pairs):
            new[i][j][n] = w[t]
            new[j][i][n] = -w[t]
        c = new
        n += 1
    return LieAlgebra(c, p)


def random_form(g, rng, coeff=2):
    return tuple(Fraction(rng.randint(-coeff, coeff)) for _ in range(g.dim))
