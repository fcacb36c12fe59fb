from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affdix import catalog
from affdix.dixmier import (
    DixmierError, RhoMap, TruncatedKernel, adapted_basis,
    brute_force_action, control_check, ideal_generated_truncated, induce_rank1, kernel_truncated,
    mu, oracle_mismatches, perp_basis, perp_partials_in_image, reduce_to_bottom, rho_map,
    rho_printed,
)
from affdix.enveloping import Enveloping
from affdix.forms import reducing_quadruple, vergne_polarisation
from affdix.lie import LieAlgebra
from affdix.linalg import Subspace
from affdix.weyl import Poly, WeylElement

from corpus import F, corpus, polarisations

H3 = catalog.heisenberg(1)
H5 = catalog.heisenberg(2)
F4 = catalog.filiform4()
AB2 = catalog.abelian(2)
LH3 = F(0, 0, 1)
LH5 = F(0, 0, 0, 0, 1)
LF4 = F(0, 0, 0, 1)

CORPUS = corpus()
CASES = [(name, g, lam, b) for name, g, lam in CORPUS for b in polarisations(g, lam)]
IDS = [f"{c[0]}-{k}" for k, c in enumerate(CASES)]


def span(g, *idx):
    return g.span([g.e(i) for i in idx])


def x(r, i):
    return WeylElement.x(r, i)


def d(r, i, n=1):
    return WeylElement.d(r, i, n)


def one(r, c=1):
    return WeylElement.const(r, c)


# -- adapted bases and rho --------------------------------------------

def test_adapted_basis_examples():
    assert adapted_basis(H3, LH3, span(H3, 1, 2)).complement == [H3.e(0)]
    ab = adapted_basis(H5, LH5, span(H5, 1, 3, 4))
    assert ab.complement == [H5.e(0), H5.e(2)]
    for u in ab.complement:
        for j in range(5):
            assert span(H5, 4).contains(H5.bracket(u, H5.e(j)))
    assert adapted_basis(AB2, F(1, 2), AB2.full).complement == []


def test_adapted_basis_requires_polarisation():
    with pytest.raises(Exception):
        adapted_basis(H3, LH3, H3.full)


def test_mu_examples():
    ab = adapted_basis(H3, LH3, span(H3, 1, 2))
    assert mu(ab, H3.e(2)) == one(1)
    assert mu(ab, H3.e(1)) == WeylElement.zero(1)
    assert mu(ab, H3.e(0)) == x(1, 0)
    assert mu(ab, F(1, 0, 1)) == x(1, 0) + one(1)


def test_rho_examples():
    rm = rho_map(H3, LH3, span(H3, 1, 2))
    assert rm.images == [x(1, 0), -d(1, 0), one(1)]
    rm = rho_map(F4, LF4, vergne_polarisation(F4, LF4))
    assert rm.images == [x(1, 0), d(1, 0, 2).scale(Fraction(1, 2)), -d(1, 0), one(1)]
    rm = rho_map(H5, LH5, span(H5, 1, 3, 4))
    assert rm.images == [x(2, 0), -d(2, 0), x(2, 1), -d(2, 1), one(2)]


def test_brute_force_examples():
    ab = adapted_basis(H3, LH3, span(H3, 1, 2))
    for n in range(6):
        assert brute_force_action(ab, H3.e(1), (n,)) == (Poly.monomial((n - 1,), -n) if n else Poly(1))
        assert brute_force_action(ab, H3.e(0), (n,)) == Poly.monomial((n + 1,))
    assert brute_force_action(ab, F(0, 3, 5), (0,)) == Poly.const(1, 5)


def test_rho_element_examples():
    rm = rho_map(H3, LH3, span(H3, 1, 2))
    U = Enveloping(H3)
    assert rm.rho_element(U, {(0, 0, 1): 1}) == one(1)
    assert rm.rho_element(U, {(0, 0, 0): 1}) == one(1)
    assert rm.rho_element(U, {(1, 1, 0): 1}) == (x(1, 0) * d(1, 0)).scale(-1)


def test_printed_formula_counterexample():
    g = LieAlgebra.from_brackets(5, {
        (0, 1): {2: -1, 3: 2, 4: -2}, (0, 2): {3: -2, 4: -2}, (0, 3): {4: -2}, (1, 2): {4: 2},
    }, 3)
    lam = F(-2, 1, -1, 1, -2)
    b = span(g, 2, 3, 4)
    ab = adapted_basis(g, lam, b)
    printed = RhoMap(ab, rho_printed)
    assert printed.images[0] == x(2, 0) + d(2, 1).scale(7) + d(2, 1, 2).scale(-2)
    assert printed.homomorphism_failures()
    fixed = RhoMap(ab)
    assert fixed.homomorphism_failures() == []
    assert oracle_mismatches(ab, 4, fixed) == []
    assert oracle_mismatches(ab, 4, printed)


def test_printed_formula_agrees_in_rank_one():
    ab = adapted_basis(F4, LF4, vergne_polarisation(F4, LF4))
    assert RhoMap(ab, rho_printed).images == RhoMap(ab).images


@pytest.mark.parametrize("name,g,lam,b", CASES, ids=IDS)
def test_homomorphism_and_oracle(name, g, lam, b):
    ab = adapted_basis(g, lam, b)
    assert ab.certificate_failures() == []
    rm = RhoMap(ab)
    assert rm.homomorphism_failures() == []
    assert oracle_mismatches(ab, 4, rm) == []


@pytest.mark.parametrize("name,g,lam,b", CASES, ids=IDS)
def test_ideal_elements_have_no_x(name, g, lam, b):
    rm = rho_map(g, lam, b)
    for Z in g.upper_central_series():
        a = Z.intersect(b)
        if not g.is_ideal(a):
            continue
        for v in a.basis:
            assert not rm.of_vector(v).has_x()


@pytest.mark.parametrize("name,g,lam,b", CASES, ids=IDS)
def test_powerful_integrality(name, g, lam, b):
    h = g.deform(1)
    assert h.is_powerful()
    rm = rho_map(h, lam, b)
    assert all(img.min_vp(h.prime) >= 0 for img in rm.images)


# -- kernels ----------------------------------------------------------

def test_kernel_examples():
    b = span(H3, 1, 2)
    U = Enveloping(H3)
    K = kernel_truncated(H3, LH3, b, 1).in_basis(U)
    assert K.dim == 1 and K.contains({(0, 0, 1): 1, (0, 0, 0): -1})
    lam = F(3, -2)
    K = kernel_truncated(AB2, lam, AB2.full, 1)
    U2 = Enveloping(AB2)
    expected = ideal_generated_truncated(AB2, [{(1, 0): 1, (0, 0): -3}, {(0, 1): 1, (0, 0): 2}], 1, U2)
    assert K == expected and K.dim == 2
    for D in (2, 3):
        K = kernel_truncated(H3, LH3, b, D)
        assert K == ideal_generated_truncated(H3, [{(0, 0, 1): 1, (0, 0, 0): -1}], D, U)
    assert [kernel_truncated(H3, LH3, b, D).dim for D in (1, 2, 3)] == [1, 4, 10]


def test_kernel_dimensions_frozen():
    assert [kernel_truncated(F4, LF4, vergne_polarisation(F4, LF4), D).dim for D in (1, 2, 3)] == [1, 6, 19]
    assert [kernel_truncated(H5, LH5, span(H5, 1, 3, 4), D).dim for D in (1, 2, 3)] == [1, 6, 21]


def test_ideal_generated_trivial_cases():
    U = Enveloping(H3)
    assert ideal_generated_truncated(H3, [], 2, U).dim == 0
    assert ideal_generated_truncated(H3, [{(0, 0, 0): 1}], 2, U).dim == len(U.monomials(2))


def test_kernel_degree_must_be_positive():
    with pytest.raises(DixmierError):
        kernel_truncated(H3, LH3, span(H3, 1, 2), 0)


@pytest.mark.parametrize("name,g,lam,b", CASES[:20], ids=IDS[:20])
def test_kernel_filtration_consistency(name, g, lam, b):
    rm = rho_map(g, lam, b)
    K3 = kernel_truncated(g, lam, b, 3, rm=rm)
    K2 = kernel_truncated(g, lam, b, 2, rm=rm)
    assert K3.restrict(2) == K2
    U = Enveloping(g)
    for e in K3.in_basis(U).elements():
        assert rm.rho_element(U, e).is_zero()


def test_independence_degree_four():
    for g, lam, ideals in ((F4, LF4, [span(F4, 3), span(F4, 2, 3)]),
                           (H3, LH3, [span(H3, 2), span(H3, 1, 2)])):
        bs = [vergne_polarisation(g, lam, a) for a in ideals]
        kernels = [kernel_truncated(g, lam, b, 4) for b in bs]
        assert kernels[0] == kernels[1]


# -- control ----------------------------------------------------------

def test_control_examples():
    q = reducing_quadruple(H3, LH3)
    K = kernel_truncated(H3, LH3, span(H3, 1, 2), 2)
    assert control_check(H3, K, q) == (True, None)
    U = Enveloping(H3)
    fake = {(1, 0, 1): 1, (1, 0, 0): -1, (0, 1, 0): 1}
    bad = TruncatedKernel(U, 2, Subspace(len(U.monomials(2)), [U.to_vector(fake, U.monomials(2))]))
    ok, witness = control_check(H3, bad, q)
    assert not ok and witness[1] == 0 and list(witness[2]) == [(0, 1, 0)]
    zero = TruncatedKernel(U, 2, Subspace(len(U.monomials(2)), []))
    assert control_check(H3, zero, q) == (True, None)


# -- perp -------------------------------------------------------------

def test_perp_basis_examples():
    assert perp_basis(H3, LH3, span(H3, 2), span(H3, 1, 2)) == ([], [])
    us, ys = perp_basis(H3, LH3, span(H3, 1, 2), span(H3, 1, 2))
    assert us == [H3.e(0)] and ys == [H3.e(1)]
    us, ys = perp_basis(H5, LH5, span(H5, 1, 3, 4), span(H5, 1, 3, 4))
    assert us == [H5.e(0), H5.e(2)] and ys == [H5.e(1), H5.e(3)]


def test_perp_examples():
    ok, rep = perp_partials_in_image(H3, LH3, span(H3, 1, 2), 1)
    assert ok and rep["targets"] == [-d(1, 0)]
    ok, rep = perp_partials_in_image(H3, LH3, span(H3, 2), 1)
    assert ok and rep["s"] == 0
    ok, rep = perp_partials_in_image(F4, LF4, span(F4, 1, 2, 3), 2)
    assert ok and rep["plain_partials_in_image"] == [True]


# -- rank-one induction and reduction ----------------------------------

def test_induce_rank1_examples():
    _, op_y, _, bad = induce_rank1(0, 1, 1, 6)
    assert op_y == d(1, 0) and bad == []
    _, op_y, _, bad = induce_rank1(5, 2, 0, 6)
    assert op_y == one(1, 5) and bad == []
    _, op_y, _, bad = induce_rank1(2, 3, Fraction(1, 3), 6)
    assert op_y == d(1, 0) + one(1, 2) and bad == []


def test_induce_rank1_matches_h3_module():
    # H3 with x = e1, y = e2, z = e3: [e2, e1] = -e3
    _, op_y, op_z, _ = induce_rank1(0, 1, -1, 4)
    rm = rho_map(H3, LH3, span(H3, 1, 2))
    assert op_y == rm.images[1] and op_z == rm.images[2]


@given(st.fractions(max_denominator=5), st.fractions(max_denominator=5),
       st.fractions(max_denominator=5))
def test_induce_rank1_is_module(by, bz, alpha):
    op_x, op_y, op_z, bad = induce_rank1(by, bz, alpha, 6)
    assert bad == []
    assert op_y.commutator(op_x) == op_z.scale(alpha)
    assert op_x.commutator(op_z).is_zero()


def test_reduce_examples():
    c, steps = reduce_to_bottom(Poly.monomial((3,)))
    assert c == Poly.const(1, 1)
    assert reduce_to_bottom(Poly.const(1, 5)) == (Poly.const(1, 5), 0)
    f = Poly.monomial((2,), 2) + Poly.monomial((1,))
    c, steps = reduce_to_bottom(f)
    assert c.degree() == 0 and not c.is_zero() and steps <= 2
    with pytest.raises(DixmierError):
        reduce_to_bottom(Poly(1))


@given(st.dictionaries(st.integers(0, 8), st.integers(-5, 5).filter(bool), min_size=1))
def test_reduce_reaches_nonzero_constant(terms):
    c, _ = reduce_to_bottom(Poly(1, {(k,): Fraction(v) for k, v in terms.items()}))
    assert c.degree() == 0 and not c.is_zero()
