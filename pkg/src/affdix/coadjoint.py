"""Adjoint-group automorphisms exp(ad u), the coadjoint action on linear
forms, the lattice-scaling bound for exp(ad u), and orbit-level kernel
comparisons.
"""

from dataclasses import dataclass
from fractions import Fraction

from .dixmier import kernel_truncated
from .enveloping import Enveloping
from .forms import stabilizer, vergne_polarisation
from .linalg import Subspace, identity, inverse, matmul, matvec, vec
from .scalars import INF, vp, vp_factorial


@dataclass
class Automorphism:
    matrix: list
    generator: tuple = None

    def apply(self, v):
        return matvec(self.matrix, v)

    def inverse(self):
        gen = None if self.generator is None else tuple(-a for a in self.generator)
        return Automorphism(inverse(self.matrix), gen)

    def compose(self, other):
        """self o other."""
        return Automorphism(matmul(self.matrix, other.matrix))


def exp_ad(g, u):
    """sum_k (1/k!) ad(u)^k with the usual ad(u)(w) = [u, w]; finite by nilpotency."""
    g.check()
    u = vec(u)
    A = g.ad_left(u)
    total = identity(g.dim)
    term = identity(g.dim)
    k = 0
    while True:
        k += 1
        term = [[a / k for a in row] for row in matmul(A, term)]
        if all(a == 0 for row in term for a in row):
            break
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, term)]
    return Automorphism(total, u)


def is_lie_automorphism(g, sigma):
    """First basis pair (i, j) where sigma[e_i, e_j] != [sigma e_i, sigma e_j], or None."""
    cols = [sigma.apply(g.e(i)) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if sigma.apply(g.c[i][j]) != g.bracket(cols[i], cols[j]):
                return (i, j)
    return None


def coad(sigma, lam):
    """(sigma . lam)(v) = lam(sigma^{-1} v), as a coordinate row."""
    inv = inverse(sigma.matrix)
    lam = vec(lam)
    n = len(lam)
    return tuple(sum((lam[i] * inv[i][j] for i in range(n)), Fraction(0)) for j in range(n))


def form_is_integral(lam, p):
    return all(a == 0 or vp(a, p) >= 0 for a in lam)


def twist_stabilizer_check(g, sigma, lam):
    """g^{sigma.lam} == sigma(g^lam)."""
    lhs = stabilizer(g, coad(sigma, lam))
    rhs = Subspace(g.dim, [sigma.apply(v) for v in stabilizer(g, lam).basis])
    return lhs == rhs


def lattice_bound(N, c, p):
    """n0 = cN + vp(c!): p^n L <= sigma L and p^n sigma L <= L for n >= n0."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return c * N + vp_factorial(c, p)


def min_scale(u, p):
    """Smallest N >= 0 with u in p^{-N} L."""
    vals = [vp(a, p) for a in u if a]
    return max([0] + [-v for v in vals])


def lattice_containment(sigma, n, p):
    """p^n sigma and p^n sigma^{-1} both have p-integral entries."""
    for M in (sigma.matrix, inverse(sigma.matrix)):
        for row in M:
            for a in row:
                if a and vp(a, p) + n < 0:
                    return False
    return True


def matrix_min_vp(M, p):
    return min((vp(a, p) for row in M for a in row if a), default=INF)


def deformation_valuation(elem, n, p):
    """w_n(sum c_alpha e^alpha) = min (vp(c_alpha) - n |alpha|)."""
    return min((vp(c, p) - n * sum(m) for m, c in elem.items() if c), default=INF)


def level_integral(elem, n, p):
    """Membership in the level-n lattice U(p^n L): vp(c_alpha) >= n |alpha| for all alpha."""
    return deformation_valuation(elem, n, p) >= 0


def monic(elem):
    """Scale so the last monomial in degree-then-lex order has coefficient 1."""
    from .enveloping import word
    lead = max(elem, key=lambda m: (sum(m), word(m)))
    c = elem[lead]
    return {m: a / c for m, a in elem.items()}


@dataclass
class OrbitComparison:
    equal: bool
    degree: int
    kernel_dims: tuple
    report: list


def orbit_kernel_compare(g, lam, mu, D, levels=None, b1=None, b2=None):
    """Compare truncated kernels for lam and mu in the standard PBW basis.

    The report lists, for each kernel basis element of lam (made monic), the
    valuations w_n for n = 0..levels and the largest such n at which it is
    level-n integral (None when it is not even integral).
    """
    p = g.prime
    lam, mu = vec(lam), vec(mu)
    env = Enveloping(g)
    b1 = b1 or vergne_polarisation(g, lam)
    b2 = b2 or vergne_polarisation(g, mu)
    K1 = kernel_truncated(g, lam, b1, D).in_basis(env)
    K2 = kernel_truncated(g, mu, b2, D).in_basis(env)
    levels = D if levels is None else levels
    report = []
    for e in K1.elements():
        m = monic(e)
        ws = [deformation_valuation(m, n, p) for n in range(levels + 1)]
        ok = [n for n in range(levels + 1) if ws[n] >= 0]
        report.append({"element": m, "w": ws, "max_integral_level": max(ok) if ok else None})
    return OrbitComparison(K1.space == K2.space, D, (K1.dim, K2.dim), report)
