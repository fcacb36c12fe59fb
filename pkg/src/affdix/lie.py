"""Nilpotent Lie algebras over Q with a distinguished Z_p-lattice basis.

The lattice is the Z_p-span of the coordinate basis e_1..e_d, so every
vector is a coordinate tuple and every subspace is a ``Subspace``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import (
    ZERO, Subspace, add, is_zero, nullspace, scale, unit_vec, vec,
)
from .scalars import INF, check_prime, vp


class LieError(ValueError):
    """Raised when an input algebra or subspace violates a precondition."""


class InvalidAlgebra(LieError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid Lie algebra: " + "; ".join(report.failures()))


@dataclass
class ValidationReport:
    antisymmetry: list = field(default_factory=list)
    jacobi: list = field(default_factory=list)
    nilpotent: bool = True
    lattice: list = field(default_factory=list)

    @property
    def ok(self):
        return not (self.antisymmetry or self.jacobi or self.lattice) and self.nilpotent

    def failures(self):
        out = []
        for i, j, k in self.antisymmetry:
            out.append(f"antisymmetry fails at ({i + 1},{j + 1},{k + 1})")
        for i, j, k in self.jacobi:
            out.append(f"Jacobi fails at ({i + 1},{j + 1},{k + 1})")
        if not self.nilpotent:
            out.append("not nilpotent: lower central series stabilises above 0")
        for i, j, k in self.lattice:
            out.append(f"structure constant c[{i + 1}][{j + 1}][{k + 1}] is not p-integral")
        return out

    def as_dict(self):
        def triples(ts):
            return [[i + 1, j + 1, k + 1] for i, j, k in ts]
        return {
            "ok": self.ok,
            "antisymmetry": triples(self.antisymmetry),
            "jacobi": triples(self.jacobi),
            "nilpotent": self.nilpotent,
            "lattice": triples(self.lattice),
        }


class LieAlgebra:
    """Structure constants ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    def __init__(self, c, prime, names=None):
        d = len(c)
        if d == 0:
            raise LieError("zero-dimensional algebras are not supported")
        self.dim = d
        self.prime = check_prime(prime)
        self.c = tuple(tuple(vec(c[i][j]) for j in range(d)) for i in range(d))
        for i in range(d):
            for j in range(d):
                if len(self.c[i][j]) != d:
                    raise LieError("structure constant table has the wrong shape")
        self.names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(d))
        if len(self.names) != d or len(set(self.names)) != d:
            raise LieError("basis names must be distinct and match the dimension")

    @classmethod
    def from_brackets(cls, dim, brackets, prime, names=None):
        """Build from a sparse map {(i, j): {k: coeff}} (0-based), completing antisymmetrically."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = {}
        for (i, j), image in brackets.items():
            v = [ZERO] * dim
            for k, a in image.items():
                v[k] += Fraction(a)
            if i == j:
                if any(v):
                    raise LieError(f"[{i + 1},{i + 1}] must vanish")
                continue
            if (j, i) in seen and seen[(j, i)] != tuple(-a for a in v):
                raise LieError(f"inconsistent brackets for pair ({i + 1},{j + 1})")
            seen[(i, j)] = tuple(v)
            c[i][j] = list(v)
            c[j][i] = [-a for a in v]
        return cls(c, prime, names)

    # -- validation ---------------------------------------------------

    @cached_property
    def report(self):
        d, c, p = self.dim, self.c, self.prime
        rep = ValidationReport()
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if c[i][j][k] != -c[j][i][k] and i <= j:
                        rep.antisymmetry.append((i, j, k))
                    elif i == j and c[i][i][k] != 0:
                        rep.antisymmetry.append((i, j, k))
                    if c[i][j][k] != 0 and vp(c[i][j][k], p) < 0 and i < j:
                        rep.lattice.append((i, j, k))
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    s = add(add(self._raw_bracket(c[i][j], unit_vec(d, k)),
                                self._raw_bracket(c[j][k], unit_vec(d, i))),
                            self._raw_bracket(c[k][i], unit_vec(d, j)))
                    if not is_zero(s):
                        rep.jacobi.append((i, j, k))
        if not rep.antisymmetry:
            rep.nilpotent = self._lower_central_raw()[-1].dim == 0
        else:
            rep.nilpotent = False
        return rep

    def validate(self):
        return self.report

    def check(self):
        if not self.report.ok:
            raise InvalidAlgebra(self.report)
        return self

    # -- bracket and adjoint ------------------------------------------

    def _raw_bracket(self, u, v):
        d, c = self.dim, self.c
        out = [ZERO] * d
        for i, a in enumerate(u):
            if not a:
                continue
            ci = c[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, x in enumerate(ci[j]):
                    if x:
                        out[k] += ab * x
        return tuple(out)

    def bracket(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise LieError("dimension mismatch in bracket")
        return self._raw_bracket(vec(u), vec(v))

    def ad_left(self, u):
        """Matrix of w -> [u, w] (column j is the image of e_j)."""
        cols = [self.bracket(u, unit_vec(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def ad_right(self, u):
        """Matrix of w -> [w, u]; the convention used by the explicit action formula."""
        return [[-a for a in row] for row in self.ad_left(u)]

    def e(self, i):
        return unit_vec(self.dim, i)

    # -- subspaces -----------------------------------------------------

    def span(self, vectors):
        return Subspace(self.dim, vectors)

    def bracket_space(self, V, W):
        return Subspace(self.dim, [self.bracket(a, b) for a in V.basis for b in W.basis])

    def centralizer_into(self, V):
        """{u : [u, g] subset V}."""
        d = self.dim
        rows = []
        for j in range(d):
            images = [V.reduce(self.c[i][j]) for i in range(d)]
            for k in range(d):
                rows.append([images[i][k] for i in range(d)])
        return Subspace(d, nullspace(rows, d))

    def is_subalgebra(self, V):
        return self.bracket_space(V, V).issubset(V)

    def is_ideal(self, V):
        return all(V.contains(self._raw_bracket(b, self.e(j)))
                   for b in V.basis for j in range(self.dim))

    @property
    def full(self):
        return Subspace.full(self.dim)

    @property
    def zero(self):
        return Subspace.zero(self.dim)

    def center(self):
        return self.centralizer_into(self.zero)

    def _lower_central_raw(self):
        series = [self.full]
        while True:
            nxt = self.bracket_space(self.full, series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)
            if nxt.dim == 0:
                return series

    def lower_central_series(self):
        """C^1 = g, C^{k+1} = [g, C^k], ending with the zero subspace."""
        self.check()
        return self._lower_central_raw()

    def upper_central_series(self):
        """Z_1 = Z(g), Z_i = {u : [u, g] in Z_{i-1}}, ending with g."""
        self.check()
        series = [self.center()]
        while series[-1].dim < self.dim:
            series.append(self.centralizer_into(series[-1]))
        return series

    def nilpotency_class(self):
        return len(self.lower_central_series()) - 1

    def derived_algebra(self):
        return self.bracket_space(self.full, self.full)

    def ideal_closure(self, S):
        V = S
        while True:
            W = V + self.bracket_space(self.full, V)
            if W == V:
                return V
            V = W

    # -- flags and quotients ------------------------------------------

    def central_flag(self, through=None):
        """A chain 0 = a_0 < a_1 < ... < a_d = g of ideals with [a_j, g] <= a_{j-1}.

        When ``through`` is an ideal, it appears as a_k with k = dim(through).
        """
        self.check()
        d = self.dim
        if through is not None and not self.is_ideal(through):
            raise LieError("flag must pass through an ideal")
        a = through if through is not None else self.zero
        coarse = [self.zero]
        for Z in self.upper_central_series():
            piece = Z.intersect(a)
            if piece.dim > coarse[-1].dim:
                coarse.append(piece)
        W = a
        while W.dim < d:
            W = self.centralizer_into(W)
            coarse.append(W)
        flag = [self.zero]
        for V in coarse[1:]:
            if V.dim <= flag[-1].dim:
                continue
            flag.extend(_refine(flag[-1], V)[1:])
        assert len(flag) == d + 1
        return flag

    def saturated_basis(self, V):
        """Basis of V cap L that extends to a Z_p-basis of L.

        Returns (rows, pivots): each row has 1 at its pivot, 0 at the other
        pivots, and p-integral entries elsewhere.
        """
        p = self.prime
        rows = [list(b) for b in V.basis]
        done, pivots = [], []
        while rows:
            best = None
            for r, row in enumerate(rows):
                for col, a in enumerate(row):
                    if a and col not in pivots:
                        v = vp(a, p)
                        if best is None or v < best[0]:
                            best = (v, r, col)
            _, r, col = best
            row = rows.pop(r)
            inv = 1 / row[col]
            row = [a * inv for a in row]
            for other in done + rows:
                f = other[col]
                if f:
                    for k in range(self.dim):
                        other[k] -= f * row[k]
            done.append(row)
            pivots.append(col)
        order = sorted(range(len(done)), key=lambda t: pivots[t])
        return [tuple(done[t]) for t in order], [pivots[t] for t in order]

    def quotient(self, a):
        """Quotient g/a on the coordinate complement of a saturated basis of a.

        Returns (h, P, keep) with P the projection matrix (dim h x dim g) and
        ``keep`` the retained coordinate indices.
        """
        self.check()
        if not self.is_ideal(a):
            raise LieError("quotient requires an ideal")
        rows, pivots = self.saturated_basis(a)
        keep = [i for i in range(self.dim) if i not in pivots]

        def project(v):
            v = list(v)
            for row, pc in zip(rows, pivots):
                f = v[pc]
                if f:
                    for k in range(self.dim):
                        v[k] -= f * row[k]
            return tuple(v[i] for i in keep)

        m = len(keep)
        if m == 0:
            raise LieError("quotient by the whole algebra is zero-dimensional")
        c = [[project(self.c[i][j]) for j in keep] for i in keep]
        h = LieAlgebra(c, self.prime, [self.names[i] for i in keep])
        if h.report.lattice:
            raise LieError("quotient structure constants are not p-integral")
        P = [[project(unit_vec(self.dim, j))[r] for j in range(self.dim)] for r in range(m)]
        return h, P, keep

    # -- lattice data --------------------------------------------------

    def min_constant_valuation(self):
        vals = [vp(x, self.prime) for row in self.c for v in row for x in v if x]
        return min(vals) if vals else INF

    def is_powerful(self):
        self.check()
        return self.min_constant_valuation() >= 1

    def deform(self, n):
        """Rebase on p^n e_i: every structure constant is multiplied by p^n."""
        self.check()
        if n < 0:
            raise LieError("deformation level must be non-negative")
        f = Fraction(self.prime) ** n
        c = [[scale(f, self.c[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        return LieAlgebra(c, self.prime, self.names)

    def is_metabelian(self):
        D = self.derived_algebra()
        return self.bracket_space(D, D).dim == 0

    def nonzero_brackets(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not is_zero(self.c[i][j]):
                    yield i, j, self.c[i][j]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.c == other.c and self.prime == other.prime

    def __hash__(self):
        return hash((self.c, self.prime))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, p={self.prime})"


def _refine(V, W):
    """Chain from V to W (V <= W) adding one vector at a time.

    The vector added next is the reduced one with the largest pivot, so the
    most central coordinates come first in the usual presentations.
    """
    n = V.n
    residues = [V.reduce(b) for b in W.basis]
    extra = Subspace(n, [r for r in residues if not is_zero(r)])
    chain = [V]
    for b in reversed(extra.basis):
        chain.append(chain[-1] + Subspace(n, [b]))
    return chain


def pullback(P, keep, sub, kernel):
    """Preimage in g of a subspace of the quotient (coordinates on ``keep``)."""
    n = kernel.n
    lifted = []
    for b in sub.basis:
        v = [ZERO] * n
        for r, i in enumerate(keep):
            v[i] = b[r]
        lifted.append(tuple(v))
    return Subspace(n, lifted) + kernel


def lift(keep, v, n):
    out = [ZERO] * n
    for r, i in enumerate(keep):
        out[i] = v[r]
    return tuple(out)
