import random
from fractions import Fraction

import pytest

from affdix import catalog
from affdix.coadjoint import (
    coad, deformation_valuation, exp_ad, is_lie_automorphism, lattice_bound, lattice_containment,
    level_integral, min_scale, orbit_kernel_compare, twist_stabilizer_check,
)
from affdix.linalg import identity

from corpus import F, corpus

H3 = catalog.heisenberg(1)
F4 = catalog.filiform4()
LH3 = F(0, 0, 1)
LF4 = F(0, 0, 0, 1)
CORPUS = corpus()


def test_exp_ad_examples():
    assert exp_ad(H3, (0, 0, 0)).matrix == identity(3)
    s = exp_ad(H3, H3.e(0))
    assert s.apply(H3.e(1)) == (0, 1, 1)
    assert s.apply(H3.e(0)) == H3.e(0) and s.apply(H3.e(2)) == H3.e(2)
    s = exp_ad(F4, F4.e(0))
    assert s.apply(F4.e(1)) == (0, 1, 1, Fraction(1, 2))


def test_coad_examples():
    assert coad(exp_ad(H3, (0, 0, 0)), LH3) == LH3
    s = exp_ad(H3, H3.e(0))
    assert coad(s, LH3) == F(0, -1, 1)
    assert coad(s.inverse(), coad(s, LH3)) == LH3


def test_twist_examples():
    assert twist_stabilizer_check(H3, exp_ad(H3, (0, 0, 0)), LH3)
    assert twist_stabilizer_check(H3, exp_ad(H3, H3.e(0)), LH3)
    assert twist_stabilizer_check(F4, exp_ad(F4, F4.e(1)), LF4)


def test_lattice_bound_examples():
    assert lattice_bound(1, 2, 2) == 3
    assert lattice_bound(1, 2, 5) == 2
    assert lattice_bound(0, 1, 3) == 0
    with pytest.raises(ValueError):
        lattice_bound(-1, 2, 3)


def test_lattice_containment_examples():
    for p in (2, 3, 5):
        g = catalog.heisenberg(1, p)
        u = (Fraction(1, p), 0, 0)
        assert lattice_containment(exp_ad(g, u), lattice_bound(1, 2, p), p)
    g = catalog.heisenberg(1, 3)
    assert not lattice_containment(exp_ad(g, (Fraction(1, 9), 0, 0)), 0, 3)


def test_lattice_bound_sharper_threshold():
    # threshold (c-1)N + vp((c-1)!) instead of cN + vp(c!)
    g = catalog.filiform4(p=2)
    s = exp_ad(g, (Fraction(1, 2), 0, 0, 0))
    assert lattice_bound(1, 3, 2) == 4
    assert not lattice_containment(s, 2, 2)
    assert lattice_containment(s, 3, 2)


def test_lattice_bound_strict_at_level_zero():
    s = exp_ad(H3, H3.e(0))
    n0 = lattice_bound(0, 2, 3)
    assert lattice_containment(s, n0, 3) and not lattice_containment(s, n0 - 1, 3)


def test_deformation_valuation_examples():
    assert deformation_valuation({(0, 0, 0): 1}, 5, 3) == 0
    assert deformation_valuation({(1, 1, 0): 1}, 1, 3) == -2
    for p in (2, 3, 7):
        assert deformation_valuation({(1, 1, 0): p * p}, 1, p) == 0
        assert level_integral({(1, 1, 0): p * p}, 1, p)


def test_orbit_compare_examples():
    mu = coad(exp_ad(H3, H3.e(0)), LH3)
    assert orbit_kernel_compare(H3, LH3, mu, 3).equal
    res = orbit_kernel_compare(H3, LH3, F(0, 0, 2), 1)
    assert not res.equal and res.kernel_dims == (1, 1)
    assert orbit_kernel_compare(H3, LH3, LH3, 2).equal


def test_orbit_report_levels():
    res = orbit_kernel_compare(H3, LH3, LH3, 1, levels=2)
    (entry,) = res.report
    assert entry["element"] == {(0, 0, 1): 1, (0, 0, 0): -1}
    assert entry["w"] == [0, -1, -2]
    assert entry["max_integral_level"] == 0


def random_u(g, rng, N):
    p = g.prime
    return tuple(Fraction(rng.randint(-p ** 2, p ** 2), p ** rng.randint(0, N)) for _ in range(g.dim))


@pytest.mark.parametrize("name,g,lam", CORPUS, ids=[c[0] for c in CORPUS])
def test_automorphism_and_twist(name, g, lam):
    rng = random.Random(name)
    u = random_u(g, rng, 2)
    s = exp_ad(g, u)
    assert is_lie_automorphism(g, s) is None
    assert s.compose(exp_ad(g, tuple(-a for a in u))).matrix == identity(g.dim)
    assert twist_stabilizer_check(g, s, lam)


@pytest.mark.parametrize("name,g,lam", CORPUS, ids=[c[0] for c in CORPUS])
def test_coad_is_left_action(name, g, lam):
    rng = random.Random(name + "/action")
    s, t = exp_ad(g, random_u(g, rng, 1)), exp_ad(g, random_u(g, rng, 1))
    assert coad(s, coad(t, lam)) == coad(s.compose(t), lam)


@pytest.mark.parametrize("name,g,lam", CORPUS, ids=[c[0] for c in CORPUS])
def test_lattice_bound_holds(name, g, lam):
    rng = random.Random(name + "/bound")
    for p in (2, 3, 5):
        h = type(g)(g.c, p, g.names)
        if not h.validate().ok:
            continue
        c = h.nilpotency_class()
        for N in (0, 1, 2):
            u = random_u(h, rng, N)
            assert min_scale(u, p) <= N
            assert lattice_containment(exp_ad(h, u), lattice_bound(N, c, p), p)


@pytest.mark.parametrize("name,g,lam", [c for c in CORPUS if c[1].dim <= 4][:12])
def test_orbit_invariance(name, g, lam):
    rng = random.Random(name + "/orbit")
    mu = coad(exp_ad(g, tuple(Fraction(rng.randint(-2, 2)) for _ in range(g.dim))), lam)
    for D in (1, 2, 3):
        assert orbit_kernel_compare(g, lam, mu, D).equal
