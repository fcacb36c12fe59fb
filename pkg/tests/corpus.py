"""Shared corpus of (algebra, form) pairs for the property and acceptance suites."""

import random
from fractions import Fraction

from affdix import catalog
from affdix.forms import irreducible_polarisation, isotropy_witness, vergne_polarisation

CATALOG_NAMES = list(catalog.CATALOG)


def catalog_pairs():
    return [(name,) + catalog.load(name) for name in CATALOG_NAMES]


def random_pairs(count, seed=2024, dims=(3, 6), p=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(*dims)
        g = catalog.random_nilpotent(d, rng, p=p)
        if not g.report.ok:
            continue
        out.append((f"random{len(out)}", g, catalog.random_form(g, rng)))
    return out


def catalog_random_forms(per_algebra=3, seed=7):
    rng = random.Random(seed)
    out = []
    for name in CATALOG_NAMES:
        g, _ = catalog.load(name)
        for k in range(per_algebra):
            out.append((f"{name}/form{k}", g, catalog.random_form(g, rng)))
    return out


def corpus(n_random=40):
    """Catalog with default forms, catalog with random forms, random central extensions."""
    return catalog_pairs() + catalog_random_forms() + random_pairs(n_random)


def polarisations(g, lam):
    """Distinct polarisations: Vergne (plain and through isotropic ideals) and irreducible."""
    out = [vergne_polarisation(g, lam), irreducible_polarisation(g, lam)]
    for a in g.central_flag()[1:-1] + list(g.lower_central_series()[1:]):
        if a.dim and g.is_ideal(a) and isotropy_witness(g, lam, a) is None:
            out.append(vergne_polarisation(g, lam, a))
    distinct = []
    for b in out:
        if b not in distinct:
            distinct.append(b)
    return distinct


def F(*xs):
    return tuple(Fraction(x) for x in xs)
