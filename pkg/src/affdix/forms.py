"""Linear forms on a Lie algebra: the bilinear form B(u, v) = lam([u, v]),
stabilisers, polarisations, reducing quadruples and the induction that
produces a polarisation one codimension-1 ideal at a time.
"""

from dataclasses import dataclass
from fractions import Fraction

from .lie import LieAlgebra, LieError, pullback
from .linalg import Subspace, dot, lincomb, nullspace, unit_vec, vec
from .scalars import vp


class FormError(LieError):
    pass


def as_form(g, coords):
    """Validate a linear form: length d and p-integral coordinates."""
    lam = vec(coords)
    if len(lam) != g.dim:
        raise FormError(f"linear form has {len(lam)} coordinates, algebra has dimension {g.dim}")
    for i, a in enumerate(lam):
        if a and vp(a, g.prime) < 0:
            raise FormError(f"linear form is not integral at {g.names[i]} ({a})")
    return lam


def pair(g, lam, u, v):
    return dot(lam, g.bracket(u, v))


def gram(g, lam):
    return [[dot(lam, g.c[i][j]) for j in range(g.dim)] for i in range(g.dim)]


def stabilizer(g, lam):
    return Subspace(g.dim, nullspace(gram(g, lam), g.dim))


def a_perp(g, lam, a):
    """{u : lam([u, a]) = 0}."""
    rows = [[pair(g, lam, unit_vec(g.dim, i), w) for i in range(g.dim)] for w in a.basis]
    return Subspace(g.dim, nullspace(rows, g.dim))


def isotropy_witness(g, lam, V, W=None):
    """First basis pair (v, w) of V x W with lam([v, w]) != 0, or None."""
    W = V if W is None else W
    for v in V.basis:
        for w in W.basis:
            if pair(g, lam, v, w):
                return v, w
    return None


def is_character(g, lam):
    return all(dot(lam, g.c[i][j]) == 0 for i in range(g.dim) for j in range(g.dim))


def relative_stabilizer(g, lam, h):
    """{u in h : lam([u, h]) = 0}."""
    B = h.basis
    rows = [[pair(g, lam, B[k], B[l]) for k in range(len(B))] for l in range(len(B))]
    return Subspace(g.dim, [lincomb(c, B, g.dim) for c in nullspace(rows, len(B))])


@dataclass
class Diagnosis:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_polarisation(g, lam, b):
    if not g.is_subalgebra(b):
        return Diagnosis(False, "not a subalgebra")
    w = isotropy_witness(g, lam, b)
    if w is not None:
        return Diagnosis(False, "lam([b,b]) != 0")
    s = stabilizer(g, lam).dim
    if 2 * b.dim != g.dim + s:
        return Diagnosis(False, f"dimension {b.dim} != (dim g + dim g^lam)/2 = {Fraction(g.dim + s, 2)}")
    return Diagnosis(True)


def vergne_polarisation(g, lam, through=None):
    """Sum of the stabilisers of lam restricted to each step of a central flag."""
    g.check()
    if through is not None:
        if not g.is_ideal(through):
            raise FormError("through-subspace is not an ideal")
        w = isotropy_witness(g, lam, through)
        if w is not None:
            raise FormError(f"lam([a,a]) != 0 on the pair {_fmt(w[0])}, {_fmt(w[1])}")
    if is_character(g, lam):
        return g.full
    b = g.zero
    for h in g.central_flag(through)[1:]:
        b = b + relative_stabilizer(g, lam, h)
    return b


def max_ideal_in_kernel(g, lam):
    V = Subspace(g.dim, nullspace([list(lam)], g.dim))
    while True:
        W = V.intersect(g.centralizer_into(V))
        if W == V:
            return V
        V = W


@dataclass
class ReducingQuadruple:
    x: tuple
    y: tuple
    z: tuple
    gprime: Subspace
    alpha: Fraction

    def verify(self, g):
        """Return the list of failed invariants (empty when valid)."""
        bad = []
        gp = self.gprime
        if gp.dim != g.dim - 1 or not g.is_ideal(gp):
            bad.append("g' is not a codimension-1 ideal")
        if self.y not in gp or self.z not in gp:
            bad.append("y or z outside g'")
        if self.x in gp:
            bad.append("x lies in g'")
        if any(any(g.bracket(self.z, g.e(j))) for j in range(g.dim)):
            bad.append("z not central")
        if any(any(g.bracket(self.y, v)) for v in gp.basis):
            bad.append("y not central in g'")
        if not self.alpha or g.bracket(self.x, self.y) != tuple(self.alpha * a for a in self.z):
            bad.append("[x,y] != alpha z with alpha != 0")
        return bad


def require_faithful(g, lam):
    t = max_ideal_in_kernel(g, lam)
    if t.dim:
        raise FormError(f"hypothesis violated: lam kills a nonzero ideal of dimension {t.dim}")


def reducing_quadruple(g, lam):
    g.check()
    if g.dim <= 1:
        raise FormError("reducing quadruple needs dim g > 1")
    require_faithful(g, lam)
    Z1 = g.center()
    if Z1.dim != 1:
        raise FormError(f"hypothesis violated: dim Z(g) = {Z1.dim}, expected 1")
    z = Z1.basis[0]
    Z2 = g.centralizer_into(Z1)
    # lowest-index x first, then the first echelon vector y of Z_2 it fails to commute with
    for i in range(g.dim):
        x = g.e(i)
        for y in Z2.basis:
            br = g.bracket(x, y)
            if any(br):
                alpha = Z1.coords(br)[0] / z[Z1.pivots[0]]
                gprime = Subspace(g.dim, nullspace(g.ad_right(y), g.dim))
                q = ReducingQuadruple(x, y, z, gprime, alpha)
                assert not q.verify(g), q.verify(g)
                return q
    raise FormError("hypothesis violated: no element of Z_2(g) outside the centre")


def shrink_polarisation(g, lam, b, q):
    """Return (b', t) with b' a polarisation inside g' and b, b' <= t proper."""
    if g.dim <= 3:
        raise FormError("shrinking needs dim g > 3")
    require_faithful(g, lam)
    diag = is_polarisation(g, lam, b)
    if not diag:
        raise FormError(f"b is not a polarisation: {diag.reason}")
    if b.issubset(q.gprime):
        return b, q.gprime
    Ky = Subspace(g.dim, [q.y])
    return b.intersect(q.gprime) + Ky, b + Ky


def subalgebra(g, V):
    """The subalgebra V as a LieAlgebra on a saturated lattice basis.

    Returns (h, B) where B[k] is the vector of g corresponding to h's k-th basis vector.
    """
    if not g.is_subalgebra(V):
        raise FormError("subspace is not a subalgebra")
    B, pivots = g.saturated_basis(V)
    c = []
    for u in B:
        row = []
        for w in B:
            br = g.bracket(u, w)
            row.append(tuple(br[pc] for pc in pivots))
        c.append(row)
    return LieAlgebra(c, g.prime, [g.names[pc] for pc in pivots]), B


def irreducible_polarisation(g, lam):
    """Polarisation built by quotienting away killed ideals and recursing into g'."""
    g.check()
    lam = vec(lam)
    if g.dim == 1 or is_character(g, lam):
        return g.full
    t = max_ideal_in_kernel(g, lam)
    if t.dim:
        h, _P, keep = g.quotient(t)
        b_h = irreducible_polarisation(h, [lam[i] for i in keep])
        return pullback(None, keep, b_h, t)
    q = reducing_quadruple(g, lam)
    h, B = subalgebra(g, q.gprime)
    b_h = irreducible_polarisation(h, [dot(lam, u) for u in B])
    b = Subspace(g.dim, [lincomb(v, B, g.dim) for v in b_h.basis])
    assert b.issubset(q.gprime)
    return b


def is_special(g, lam):
    """(True, None) when lam([a,a]) = 0 for a the ideal generated by g^lam; else (False, pair)."""
    a = g.ideal_closure(stabilizer(g, lam))
    w = isotropy_witness(g, lam, a)
    return w is None, w


def _fmt(v):
    return "(" + ",".join(str(a) for a in v) + ")"
