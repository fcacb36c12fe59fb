"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are lists of rows.  A matrix
``M`` acts on column vectors, so ``matvec(M, v)[i] = sum_j M[i][j] v[j]``.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values):
    return tuple(Fraction(x) for x in values)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero(v):
    return all(a == 0 for a in v)


def lincomb(coeffs, vectors, n):
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def matvec(M, v):
    return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in M)


def matmul(A, B):
    cols = list(zip(*B)) if B else []
    return [[sum((a * b for a, b in zip(row, col)), ZERO) for col in cols] for row in A]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(r) for r in zip(*M)]


def rref(rows, ncols):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                ri = m[i]
                rr = m[r]
                m[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def nullspace(M, ncols):
    """Basis of {x : M x = 0}, one vector per free column, in RREF order."""
    rows, pivots = rref(M, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, pc in zip(rows, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def rank(rows, ncols):
    return len(rref(rows, ncols)[0])


def solve(A_cols, b, n):
    """Find coefficients c with sum_k c_k A_cols[k] = b, or None."""
    m = len(A_cols)
    aug = [[A_cols[k][i] for k in range(m)] + [b[i]] for i in range(n)]
    rows, pivots = rref(aug, m + 1)
    if m in pivots:
        return None
    c = [ZERO] * m
    for row, pc in zip(rows, pivots):
        c[pc] = row[m]
    return tuple(c)


def inverse(M):
    n = len(M)
    aug = [list(M[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("singular matrix")
    return [list(r[n:]) for r in rows]


class Subspace:
    """A subspace of Q^n stored by its reduced echelon basis.

    Two subspaces are equal exactly when their echelon bases agree.
    """

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n, vectors=()):
        self.n = n
        rows, pivots = rref([vec(v) for v in vectors], n)
        self.basis = tuple(rows)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @classmethod
    def span_units(cls, n, indices):
        return cls(n, [unit_vec(n, i) for i in indices])

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Remainder of v after clearing the pivot columns."""
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                for k, a in enumerate(row):
                    if a:
                        v[k] -= c * a
        return tuple(v)

    def contains(self, v):
        return is_zero(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coords(self, v):
        """Coordinates of v in the echelon basis; raises if v is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[pc] for pc in self.pivots)

    def issubset(self, other):
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __add__(self, other):
        return Subspace(self.n, self.basis + other.basis)

    def intersect(self, other):
        if not self.basis or not other.basis:
            return Subspace(self.n)
        residues = [other.reduce(b) for b in self.basis]
        # c with sum c_k residues_k = 0
        M = [[residues[k][i] for k in range(len(residues))] for i in range(self.n)]
        combos = nullspace(M, len(residues))
        return Subspace(self.n, [lincomb(c, self.basis, self.n) for c in combos])

    def complement_units(self):
        """Coordinate vectors e_i (i not a pivot) spanning a complement."""
        return [unit_vec(self.n, i) for i in range(self.n) if i not in self.pivots]

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"
