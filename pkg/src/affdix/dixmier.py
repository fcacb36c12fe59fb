"""The Dixmier module D(lam) = U(g) (x)_{U(b)} K_lam as a module over the
Weyl algebra: the differential-operator representation rho, an independent
PBW straightening oracle, and degree-truncated annihilator computations.

Module elements are polynomials in t_1..t_r, where t^beta stands for
u_1^beta_1 ... u_r^beta_r (x) v with u_1 leftmost.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .enveloping import Enveloping
from .forms import FormError, a_perp, is_polarisation, isotropy_witness, pair
from .linalg import (
    Subspace, add, dot, inverse, is_zero, lincomb, matvec, nullspace, scale, solve, vec,
)
from .weyl import Poly, WeylElement, divided_derivative_apply


class DixmierError(ValueError):
    pass


# -- adapted bases ----------------------------------------------------

@dataclass
class AdaptedBasis:
    g: object
    lam: tuple
    b: Subspace
    complement: list
    jumps: list
    flag: list = field(repr=False)

    def __post_init__(self):
        d = self.g.dim
        cols = list(self.complement) + list(self.b.basis)
        M = [[cols[k][i] for k in range(d)] for i in range(d)]
        self._inv = inverse(M)
        self._cols = cols

    @property
    def r(self):
        return len(self.complement)

    def split(self, u):
        """u = v_u + sum alpha_i u_i; returns (alphas, v_u)."""
        c = matvec(self._inv, vec(u))
        alphas = c[:self.r]
        v = lincomb(c[self.r:], self._cols[self.r:], self.g.dim)
        return alphas, v

    def certificate_failures(self):
        """Pairs (i, j) with [u_i, e_j] outside b + span{u_{i+1}..u_r}."""
        bad = []
        for i, u in enumerate(self.complement):
            S = self.b + Subspace(self.g.dim, self.complement[i + 1:])
            for j in range(self.g.dim):
                if not S.contains(self.g.bracket(u, self.g.e(j))):
                    bad.append((i, j))
        return bad


def adapted_basis(g, lam, b):
    """Complement u_1..u_r of b with [u_i, g] <= b + span{u_{i+1}..u_r}.

    u_i is taken from the flag ideal at the i-th jump of dim(b + a_j),
    counted from the top of a central flag.
    """
    lam = vec(lam)
    diag = is_polarisation(g, lam, b)
    if not diag:
        raise FormError(f"not a polarisation: {diag.reason}")
    flag = g.central_flag()
    jumps = [j for j in range(1, g.dim + 1) if (b + flag[j]).dim > (b + flag[j - 1]).dim]
    us = []
    for j in reversed(jumps):
        base = b + flag[j - 1]
        us.append(next(v for v in flag[j].basis if not base.contains(v)))
    ab = AdaptedBasis(g, lam, b, us, list(reversed(jumps)), flag)
    bad = ab.certificate_failures()
    if bad:
        raise DixmierError(f"adapted basis certificate failed at {bad}")
    return ab


# -- the representation ----------------------------------------------

def mu(ab, u):
    """lam(v_u) + sum alpha_i x_i."""
    r = ab.r
    alphas, v = ab.split(u)
    out = WeylElement.const(r, dot(ab.lam, v))
    for i, a in enumerate(alphas):
        if a:
            out = out + WeylElement.x(r, i).scale(a)
    return out


def _d(r, alpha, c):
    return WeylElement(r, {((0,) * r, tuple(alpha)): c})


def rho(ab, u):
    """Action of u on the Dixmier module as a normal-ordered Weyl element.

    Expands u along ad(u_1), ..., ad(u_r) with ad(x)(y) = [y, x].  At step i the
    u_i-coordinate of the current word contributes x_i and is removed before
    ad(u_i)^k is applied, so the expansion is
        rho(w) = a_i x_i + sum_k (1/k!) rho_{>i}(ad(u_i)^k (w - a_i u_i)) d_i^k.
    """
    g, r = ab.g, ab.r
    total = [WeylElement.zero(r)]

    def rec(level, w, alpha, fact):
        alphas, v = ab.split(w)
        if level == r:
            c = dot(ab.lam, v)
            if c:
                total[0] = total[0] + _d(r, alpha, c / fact)
            return
        a = alphas[level]
        if a:
            xs = tuple(1 if k == level else 0 for k in range(r))
            total[0] = total[0] + WeylElement(r, {(xs, tuple(alpha)): a / fact})
        cur = add(w, scale(-a, ab.complement[level]))
        k = 0
        while not is_zero(cur):
            al = list(alpha)
            al[level] = k
            rec(level + 1, cur, al, fact * factorial(k))
            cur = g.bracket(cur, ab.complement[level])
            k += 1

    rec(0, vec(u), [0] * r, 1)
    return total[0]


def rho_printed(ab, u):
    """sum_alpha (1/alpha!) mu(ad(u_r)^a_r ... ad(u_1)^a_1 (u)) d^alpha, taken literally.

    Agrees with ``rho`` when no ad-word picks up lower complement coordinates
    (for instance r <= 1); in general it is not a representation.
    """
    g, r = ab.g, ab.r
    total = [WeylElement.zero(r)]

    def rec(level, w, alpha, fact):
        if level == r:
            total[0] = total[0] + mu(ab, w) * _d(r, alpha, Fraction(1, fact))
            return
        cur, k = w, 0
        while not is_zero(cur):
            al = list(alpha)
            al[level] = k
            rec(level + 1, cur, al, fact * factorial(k))
            cur = g.bracket(cur, ab.complement[level])
            k += 1

    rec(0, vec(u), [0] * r, 1)
    return total[0]


class RhoMap:
    def __init__(self, ab, formula=rho):
        self.adapted = ab
        self.g = ab.g
        self.r = ab.r
        self.images = [formula(ab, ab.g.e(i)) for i in range(ab.g.dim)]

    def of_vector(self, u):
        out = WeylElement.zero(self.r)
        for a, img in zip(u, self.images):
            if a:
                out = out + img.scale(a)
        return out

    def homomorphism_failures(self):
        """Pairs (i, j) where [rho(e_i), rho(e_j)] != rho([e_i, e_j])."""
        bad = []
        for i in range(self.g.dim):
            for j in range(i + 1, self.g.dim):
                lhs = self.images[i].commutator(self.images[j])
                if lhs != self.of_vector(self.g.c[i][j]):
                    bad.append((i, j))
        return bad

    def rho_element(self, env, elem, max_degree=None):
        """Multiplicative extension to an element of U(g) in the PBW basis ``env``."""
        gen_imgs = [self.of_vector(v) for v in env.gens]
        cache = {}

        def mono(m):
            if m in cache:
                return cache[m]
            if not any(m):
                res = WeylElement.one(self.r)
            else:
                i = next(k for k in range(len(m)) if m[k])
                rest = list(m)
                rest[i] -= 1
                res = gen_imgs[i] * mono(tuple(rest))
            cache[m] = res
            return res

        out = WeylElement.zero(self.r)
        for m, c in elem.items():
            if max_degree is not None and sum(m) > max_degree:
                raise DixmierError(f"element degree {sum(m)} exceeds bound {max_degree}")
            out = out + mono(m).scale(c)
        return out


def rho_map(g, lam, b, formula=rho):
    return RhoMap(adapted_basis(g, lam, b), formula)


# -- straightening oracle --------------------------------------------

class StraighteningOracle:
    """u . (u_1^m_1 ... u_r^m_r (x) v) computed in U(g) (x)_{U(b)} K_lam by
    commuting u leftward with the bracket; shares no code with ``rho``."""

    def __init__(self, ab):
        self.ab = ab
        self.r = ab.r
        self._act = lru_cache(maxsize=None)(self._act_raw)

    def _act_raw(self, w, m):
        ab, r = self.ab, self.r
        alphas, v = ab.split(w)
        if not any(m):
            out = Poly.const(r, dot(ab.lam, v))
            for i, a in enumerate(alphas):
                if a:
                    out = out + Poly.monomial(tuple(1 if k == i else 0 for k in range(r)), a)
            return out
        # w u_i X = u_i (w X) + [w, u_i] X with u_i the leftmost factor
        i = next(k for k in range(r) if m[k])
        rest = list(m)
        rest[i] -= 1
        rest = tuple(rest)
        head = self._left(i, self._act(w, rest))
        tail = self._act(ab.g.bracket(w, ab.complement[i]), rest)
        return head + tail

    def _left(self, i, f):
        out = Poly(self.r)
        for mono, c in f.terms.items():
            if all(mono[k] == 0 for k in range(i)):
                out = out + Poly.monomial(tuple(mono[k] + (k == i) for k in range(self.r)), c)
            else:
                out = out + self._act(self.ab.complement[i], mono).scale(c)
        return out

    def act(self, u, m):
        return self._act(vec(u), tuple(m))

    def act_poly(self, u, f):
        out = Poly(self.r)
        for m, c in f.terms.items():
            out = out + self.act(u, m).scale(c)
        return out


def brute_force_action(ab, u, m):
    return StraighteningOracle(ab).act(u, m)


def oracle_mismatches(ab, max_degree, rm=None):
    """All (basis index, monomial) where rho disagrees with straightening."""
    rm = rm or RhoMap(ab)
    orc = StraighteningOracle(ab)
    bad = []
    for m in _monomials(ab.r, max_degree):
        f = Poly.monomial(m)
        for i in range(ab.g.dim):
            if rm.images[i].apply(f) != orc.act(ab.g.e(i), m):
                bad.append((i, m))
    return bad


def _monomials(r, D):
    return [m for m in product(range(D + 1), repeat=r) if sum(m) <= D]


# -- truncated kernels -----------------------------------------------

class TruncatedKernel:
    """ker(rho) cap U(g)_{<=D} in the PBW basis of ``env``."""

    def __init__(self, env, degree, space):
        self.env = env
        self.degree = degree
        self.monomials = env.monomials(degree)
        self.space = space

    @property
    def dim(self):
        return self.space.dim

    def elements(self):
        return [self.env.from_coeffs(v, self.monomials) for v in self.space.basis]

    def contains(self, elem):
        return self.space.contains(self.env.to_vector(elem, self.monomials))

    def in_basis(self, env):
        """The same subspace written in another PBW basis of g."""
        if env is self.env:
            return self
        monos = env.monomials(self.degree)
        vecs = [env.to_vector(env.convert(e, self.env), monos) for e in self.elements()]
        return TruncatedKernel(env, self.degree, Subspace(len(monos), vecs))

    def restrict(self, D):
        """Intersection with U(g)_{<=D}, in the same basis."""
        monos = self.env.monomials(D)
        keep = set(monos)
        n = len(self.monomials)
        low = Subspace(n, [[1 if k == j else 0 for k in range(n)]
                           for j, m in enumerate(self.monomials) if m in keep])
        inter = self.space.intersect(low)
        index = {m: k for k, m in enumerate(self.monomials)}
        vecs = [[v[index[m]] for m in monos] for v in inter.basis]
        return TruncatedKernel(self.env, D, Subspace(len(monos), vecs))

    def __eq__(self, other):
        if not isinstance(other, TruncatedKernel):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return self.space == other.in_basis(self.env).space

    def format(self):
        return [self.env.format(e, _gen_names(self.env)) for e in self.elements()]


def _gen_names(env):
    names = []
    g = env.g
    for v in env.gens:
        nz = [i for i, a in enumerate(v) if a]
        if len(nz) == 1 and v[nz[0]] == 1:
            names.append(g.names[nz[0]])
        else:
            names.append("(" + " + ".join(f"{a}*{g.names[i]}" for i, a in enumerate(v) if a) + ")")
    return names


def pbw_env(ab):
    """PBW basis with the complement first (adapted order), then b."""
    return Enveloping(ab.g, list(ab.complement) + list(ab.b.basis))


def kernel_truncated(g, lam, b, D, env=None, rm=None):
    if D < 1:
        raise DixmierError("truncation degree must be at least 1")
    rm = rm or rho_map(g, lam, b)
    env = env or pbw_env(rm.adapted)
    monos = env.monomials(D)
    images = [rm.rho_element(env, {m: 1}) for m in monos]
    keys = sorted({k for img in images for k in img.terms})
    M = [[img.terms.get(k, 0) for img in images] for k in keys]
    space = Subspace(len(monos), nullspace(M, len(monos)) if keys else
                     [[1 if i == j else 0 for i in range(len(monos))] for j in range(len(monos))])
    return TruncatedKernel(env, D, space)


def ideal_generated_truncated(g, gens, D, env=None):
    """Span of all m * gen * m' with deg m + deg gen + deg m' <= D."""
    env = env or Enveloping(g)
    monos = env.monomials(D)
    vecs = []
    for gen in gens:
        gd = max((sum(m) for m in gen), default=0)
        if gd > D:
            raise DixmierError("generator degree exceeds truncation")
        left = [m for m in monos if sum(m) <= D - gd]
        for m in left:
            lg = env.mul({m: 1}, gen)
            for m2 in left:
                if sum(m) + sum(m2) + gd > D:
                    continue
                vecs.append(env.to_vector(env.mul(lg, {m2: 1}), monos))
    return TruncatedKernel(env, D, Subspace(len(monos), vecs))


def control_check(g, ker, q):
    """Split each kernel element as sum_i x^i c_i with c_i in U(g') and test c_i in ker.

    Returns (True, None) or (False, (element, i, c_i)) for the first failure.
    """
    env = Enveloping(g, [q.x] + list(q.gprime.basis))
    K = ker.in_basis(env)
    for elem in K.elements():
        parts = {}
        for m, c in elem.items():
            parts.setdefault(m[0], {})[(0,) + m[1:]] = c
        for i in sorted(parts):
            if not K.contains(parts[i]):
                return False, (elem, i, parts[i])
    return True, None


# -- perp extraction --------------------------------------------------

def perp_basis(g, lam, a, b):
    """Pairs (u_i, y_i) with y_i in a, lam([y_i, u_i]) != 0 and lam([y_j, u_i]) = 0 for j < i."""
    lam = vec(lam)
    if not a.issubset(b):
        raise FormError("a must lie inside the polarisation b")
    w = isotropy_witness(g, lam, a)
    if w is not None:
        raise FormError("lam([a,a]) != 0")
    perp = a_perp(g, lam, a)
    V = perp.complement_units()
    Z = g.upper_central_series()
    us, ys = [], []
    while V:
        y = None
        for Zm in Z:
            for cand in a.intersect(Zm).basis:
                if any(pair(g, lam, cand, v) for v in V):
                    y = cand
                    break
            if y is not None:
                break
        if y is None:
            raise DixmierError("no witness found; a^perp complement is inconsistent")
        k = next(k for k, v in enumerate(V) if pair(g, lam, y, v))
        u = V[k]
        cu = pair(g, lam, y, u)
        rest = [add(v, scale(-pair(g, lam, y, v) / cu, u)) for j, v in enumerate(V) if j != k]
        V = list(Subspace(g.dim, rest).basis)
        us.append(u)
        ys.append(y)
    return us, ys


def perp_certificate(g, lam, us, ys):
    for i, u in enumerate(us):
        if not pair(g, lam, ys[i], u):
            return False
        for j in range(i):
            if pair(g, lam, ys[j], u):
                return False
    return True


def perp_partials_in_image(g, lam, a, D, b=None, rm=None):
    """Check that the first-order parts of rho(y_i) lie in rho(U(a)_{<=D}).

    For y in a, rho(y) = lam(y) + sum_j lam([y, u_j]) d_j + (higher order in d).
    The linear forms l_i = sum_j lam([y_i, u_j]) d_j are the derivatives along
    the perp basis.  Returns (ok, report dict).
    """
    from .forms import vergne_polarisation
    lam = vec(lam)
    if b is None:
        b = vergne_polarisation(g, lam, a) if g.is_ideal(a) else None
        if b is None:
            raise FormError("a must be an ideal when no polarisation is given")
    rm = rm or rho_map(g, lam, b)
    ab = rm.adapted
    us, ys = perp_basis(g, lam, a, b)
    r = ab.r
    env = Enveloping(g, list(a.basis) + list(a.complement_units()))
    s = a.dim
    monos = [m for m in env.monomials(D) if not any(m[s:])]
    images = [rm.rho_element(env, {m: 1}) for m in monos]
    targets = []
    for y in ys:
        t = WeylElement.zero(r)
        for j, u in enumerate(ab.complement):
            c = pair(g, lam, y, u)
            if c:
                t = t + WeylElement.d(r, j).scale(c)
        targets.append(t)
    keys = sorted({k for w in images + targets for k in w.terms})
    cols = [[w.terms.get(k, 0) for k in keys] for w in images]
    found = []
    for t in targets:
        rhs = [t.terms.get(k, 0) for k in keys]
        found.append(solve(cols, rhs, len(keys)) is not None if keys else True)
    plain = []
    for j in range(r):
        t = WeylElement.d(r, j)
        ks = sorted(set(keys) | set(t.terms))
        c2 = [[w.terms.get(k, 0) for k in ks] for w in images]
        plain.append(solve(c2, [t.terms.get(k, 0) for k in ks], len(ks)) is not None)
    ok = all(found) and perp_certificate(g, lam, us, ys)
    return ok, {"s": len(ys), "u": us, "y": ys, "targets": targets,
                "in_image": found, "plain_partials_in_image": plain}


# -- rank-one induction ------------------------------------------------

def induce_rank1(beta_y, beta_z, alpha, D):
    """Operators for x, y, z on K[t] = U(g) (x)_{U(h)} K, with [y, x] = alpha z,
    [x, z] = 0, and y, z acting on K by beta_y, beta_z.

    Returns (op_x, op_y, op_z, mismatches) where the mismatches list compares
    op_y against direct straightening y x^{n+1} = [y, x] x^n + x y x^n for n <= D.
    """
    beta_y, beta_z, alpha = Fraction(beta_y), Fraction(beta_z), Fraction(alpha)
    op_x = WeylElement.x(1, 0)
    op_y = WeylElement.d(1, 0).scale(alpha * beta_z) + WeylElement.const(1, beta_y)
    op_z = WeylElement.const(1, beta_z)
    bad = []
    straight = Poly.const(1, beta_y)          # y . t^0
    for n in range(D + 1):
        if op_y.apply(Poly.monomial((n,))) != straight:
            bad.append(n)
        if op_z.apply(Poly.monomial((n,))) != Poly.monomial((n,), beta_z):
            bad.append(n)
        # y t^{n+1} = alpha z t^n + t (y t^n), and z t^n = beta_z t^n
        straight = Poly.monomial((n,), alpha * beta_z) + straight.shift(0, 1)
    return op_x, op_y, op_z, bad


def reduce_to_bottom(f):
    """Reach a nonzero constant from f using divided derivatives and t-multiplication.

    First shift by d^[m0] (m0 = lowest exponent present) so the constant term is
    nonzero, then r_i = r_{i-1} - t^i d^[i](r_{i-1}).  Returns (constant, steps).
    """
    if f.rank != 1:
        raise DixmierError("reduce_to_bottom works with one variable")
    if f.is_zero():
        raise DixmierError("cannot reduce the zero polynomial")
    m0 = min(m[0] for m in f.terms)
    r = divided_derivative_apply(0, m0, f)
    steps = 0
    i = 1
    while r.degree() > 0:
        r = r - divided_derivative_apply(0, i, r).shift(0, i)
        steps += 1
        i += 1
    return r, steps
