"""Command line front end.

Exit codes: 0 success (a verdict was computed), 1 input error, 2 invariant
violation.
"""

import argparse
import os
import random
import sys

from . import catalog
from .coadjoint import (
    coad, exp_ad, form_is_integral, is_lie_automorphism, lattice_bound, lattice_containment,
    min_scale, orbit_kernel_compare, twist_stabilizer_check,
)
from .dixmier import (
    DixmierError, RhoMap, adapted_basis, control_check, ideal_generated_truncated,
    kernel_truncated, oracle_mismatches, perp_partials_in_image,
)
from .enveloping import Enveloping
from .forms import (
    FormError, as_form, irreducible_polarisation, is_polarisation, is_special,
    max_ideal_in_kernel, reducing_quadruple, stabilizer, vergne_polarisation,
)
from .io import SCHEMA, InputError, algebra_to_doc, dumps, load_algebra, parse_vector, rat_list
from .lie import InvalidAlgebra, LieError
from .linalg import Subspace
from .scalars import ScalarError, fmt_rat, fmt_val

DEGREE_ENV = "AFFDIX_DEGREE"


class Violation(Exception):
    """An invariant check failed; carries the report to print."""

    def __init__(self, report):
        super().__init__("invariant violation")
        self.report = report


def fmt_vec(g, v):
    terms = [f"({fmt_rat(a)})*{g.names[i]}" for i, a in enumerate(v) if a]
    return " + ".join(terms) if terms else "0"


def fmt_space(g, S):
    return "span{" + ", ".join(fmt_vec(g, v) for v in S.basis) + "}"


def space_json(S):
    return [rat_list(v) for v in S.basis]


# -- subcommands -------------------------------------------------------

def cmd_check(g, lam, args):
    rep = g.validate()
    out = {"validation": rep.as_dict(), "failures": rep.failures()}
    if rep.ok:
        out["nilpotency_class"] = g.nilpotency_class()
        out["powerful"] = g.is_powerful()
        out["metabelian"] = g.is_metabelian()
        out["upper_central_series"] = [space_json(Z) for Z in g.upper_central_series()]
        out["lower_central_series"] = [space_json(C) for C in g.lower_central_series()]
    lines = ["validation: " + ("ok" if rep.ok else "FAILED")] + ["  " + f for f in rep.failures()]
    if rep.ok:
        lines.append(f"nilpotency class: {out['nilpotency_class']}")
        lines.append(f"powerful: {out['powerful']}  metabelian: {out['metabelian']}")
    if not rep.ok:
        raise Violation((out, lines))
    return out, lines


def cmd_polarize(g, lam, args):
    b = vergne_polarisation(g, lam)
    bi = irreducible_polarisation(g, lam)
    st = stabilizer(g, lam)
    diag = [is_polarisation(g, lam, x) for x in (b, bi)]
    out = {
        "stabilizer": space_json(st),
        "vergne": space_json(b),
        "irreducible": space_json(bi),
        "codimension": g.dim - b.dim,
        "checks": {"vergne": diag[0].ok, "irreducible": diag[1].ok},
    }
    lines = [
        f"g^lambda    = {fmt_space(g, st)}",
        f"vergne      = {fmt_space(g, b)}  [{'ok' if diag[0] else diag[0].reason}]",
        f"irreducible = {fmt_space(g, bi)}  [{'ok' if diag[1] else diag[1].reason}]",
    ]
    if not all(diag):
        raise Violation((out, lines))
    return out, lines


def cmd_reduce(g, lam, args):
    t = max_ideal_in_kernel(g, lam)
    out = {"max_ideal_in_kernel": space_json(t)}
    lines = [f"largest ideal killed by lambda: {fmt_space(g, t)}"]
    q = reducing_quadruple(g, lam)
    out["quadruple"] = {"x": rat_list(q.x), "y": rat_list(q.y), "z": rat_list(q.z),
                        "gprime": space_json(q.gprime), "alpha": fmt_rat(q.alpha)}
    lines += [f"x = {fmt_vec(g, q.x)}", f"y = {fmt_vec(g, q.y)}", f"z = {fmt_vec(g, q.z)}",
              f"g' = {fmt_space(g, q.gprime)}", f"alpha = {fmt_rat(q.alpha)}"]
    bad = q.verify(g)
    out["invariant_failures"] = bad
    if bad:
        raise Violation((out, lines + bad))
    return out, lines


def _rho_setup(g, lam):
    b = vergne_polarisation(g, lam)
    ab = adapted_basis(g, lam, b)
    return b, ab, RhoMap(ab)


def cmd_rho(g, lam, args):
    b, ab, rm = _rho_setup(g, lam)
    bad = rm.homomorphism_failures()
    out = {
        "polarisation": space_json(b),
        "complement": [rat_list(u) for u in ab.complement],
        "images": {g.names[i]: img.to_json() for i, img in enumerate(rm.images)},
        "homomorphism_failures": [[i + 1, j + 1] for i, j in bad],
    }
    lines = [f"b = {fmt_space(g, b)}"]
    lines += [f"u{i + 1} = {fmt_vec(g, u)}" for i, u in enumerate(ab.complement)]
    lines += [f"rho({g.names[i]}) = {img}" for i, img in enumerate(rm.images)]
    lines.append("homomorphism law: " + ("ok" if not bad else f"FAILED at {bad}"))
    if bad:
        raise Violation((out, lines))
    return out, lines


def _kernel_json(K):
    return {"degree": K.degree, "dimension": K.dim, "basis": K.format()}


def cmd_kernel(g, lam, args):
    b = vergne_polarisation(g, lam)
    env = Enveloping(g)
    K = kernel_truncated(g, lam, b, args.degree).in_basis(env)
    K1 = kernel_truncated(g, lam, b, 1).in_basis(env)
    span = ideal_generated_truncated(g, K1.elements(), args.degree, env)
    generated = span.space == K.space
    out = {"kernel": _kernel_json(K), "degree1_generators": K1.format(),
           "ideal_span_dimension": span.dim, "generated_by_degree1": generated}
    lines = [f"kernel of rho on U(g)_<={args.degree}: dimension {K.dim}"]
    lines += ["  " + s for s in K.format()]
    lines.append("degree-1 generators: " + ", ".join(K1.format()))
    lines.append(f"two-sided ideal they span up to degree {args.degree}: dimension {span.dim}"
                 f" ({'equal to' if generated else 'smaller than'} the kernel)")
    return out, lines


def _oracle_one(g, lam, M):
    b = vergne_polarisation(g, lam)
    ab = adapted_basis(g, lam, b)
    rm = RhoMap(ab)
    return rm.homomorphism_failures(), oracle_mismatches(ab, M, rm)


def cmd_oracle(g, lam, args):
    cases = []
    if g is None:
        for name in catalog.CATALOG:
            h, mu = catalog.load(name)
            cases.append((name, h, mu))
    else:
        cases.append(("input", g, lam))
    rng = random.Random(args.seed)
    for k in range(args.random):
        h = catalog.random_nilpotent(rng.randint(3, 6), rng)
        cases.append((f"random{k + 1}", h, catalog.random_form(h, rng)))
    results, lines, failed = [], [], False
    for name, h, mu in cases:
        hom, mis = _oracle_one(h, mu, args.max_degree)
        ok = not hom and not mis
        failed |= not ok
        results.append({"name": name, "dimension": h.dim, "ok": ok,
                         "homomorphism_failures": len(hom), "oracle_mismatches": len(mis)})
        lines.append(f"{name:10s} dim {h.dim}: {'ok' if ok else 'MISMATCH'}"
                     f" (homomorphism failures {len(hom)}, oracle mismatches {len(mis)})")
    out = {"max_degree": args.max_degree, "cases": results}
    if failed:
        raise Violation((out, lines))
    return out, lines


def cmd_orbit(g, lam, args):
    if args.u is not None:
        u = parse_vector(args.u, g.dim, "--u")
    else:
        rng = random.Random(args.seed)
        u = tuple(rng.randint(-2, 2) for _ in range(g.dim))
    sigma = exp_ad(g, u)
    if is_lie_automorphism(g, sigma) is not None:
        raise Violation(({"error": "exp_ad is not an automorphism"}, ["exp_ad is not an automorphism"]))
    mu = coad(sigma, lam)
    N = min_scale(u, g.prime)
    c = g.nilpotency_class()
    n0 = lattice_bound(N, c, g.prime)
    contained = lattice_containment(sigma, n0, g.prime)
    twist = twist_stabilizer_check(g, sigma, lam)
    out = {
        "u": rat_list(u),
        "sigma": [rat_list(row) for row in sigma.matrix],
        "coad_lambda": rat_list(mu),
        "coad_lambda_integral": form_is_integral(mu, g.prime),
        "twist_check": twist,
        "N": N, "class": c, "bound": n0, "containment_at_bound": contained,
    }
    lines = [f"u = {fmt_vec(g, u)}", "sigma ="]
    lines += ["  [" + ", ".join(fmt_rat(a) for a in row) + "]" for row in sigma.matrix]
    lines += [f"sigma.lambda = ({', '.join(rat_list(mu))})"
              + ("" if out["coad_lambda_integral"] else "  (not integral)"),
              f"twist check: {'ok' if twist else 'FAILED'}",
              f"N = {N}, class = {c}, bound n0 = {n0}, containment at n0: {contained}"]
    if not twist or not contained:
        raise Violation((out, lines))
    return out, lines


def cmd_compare(g, lam, args):
    if args.lambda2 is None:
        raise InputError("compare needs --lambda2")
    mu = as_form(g, parse_vector(args.lambda2, g.dim, "--lambda2"))
    res = orbit_kernel_compare(g, lam, mu, args.degree)
    env = Enveloping(g)
    rep = [{"element": env.format(r["element"], list(g.names)), "w": [fmt_val(w) for w in r["w"]],
            "max_integral_level": r["max_integral_level"]} for r in res.report]
    out = {"verdict": "equal" if res.equal else "different", "degree": args.degree,
           "kernel_dimensions": list(res.kernel_dims), "deformation_report": rep}
    lines = [f"verdict up to degree {args.degree}: {out['verdict']}"
             f" (kernel dimensions {res.kernel_dims[0]}, {res.kernel_dims[1]})"]
    for r in rep:
        lines.append(f"  {r['element']}: w_n = {', '.join(r['w'])}; "
                     f"max integral level {r['max_integral_level']}")
    return out, lines


def cmd_special(g, lam, args):
    ok, w = is_special(g, lam)
    meta = g.is_metabelian()
    out = {"special": ok, "witness": None if w is None else [rat_list(w[0]), rat_list(w[1])],
           "metabelian": meta}
    lines = [f"special: {ok}", f"metabelian: {meta}"]
    if w is not None:
        lines.append(f"witness pair: {fmt_vec(g, w[0])}, {fmt_vec(g, w[1])}")
    if meta and not ok:
        raise Violation((out, lines + ["metabelian algebra with a non-special form"]))
    return out, lines


def cmd_control(g, lam, args):
    q = reducing_quadruple(g, lam)
    b = vergne_polarisation(g, lam)
    K = kernel_truncated(g, lam, b, args.degree)
    ok, wit = control_check(g, K, q)
    out = {"controlled": ok, "degree": args.degree, "gprime": space_json(q.gprime),
           "x": rat_list(q.x)}
    lines = [f"x = {fmt_vec(g, q.x)}, g' = {fmt_space(g, q.gprime)}",
             f"kernel up to degree {args.degree} controlled by g': {ok}"]
    if not ok:
        env = Enveloping(g, [q.x] + list(q.gprime.basis))
        out["witness"] = {"power": wit[1], "coefficient": env.format(wit[2])}
        lines.append(f"  coefficient of x^{wit[1]} outside the kernel: {env.format(wit[2])}")
        raise Violation((out, lines))
    return out, lines


def cmd_perp(g, lam, args):
    if args.ideal:
        idx = {n: i for i, n in enumerate(g.names)}
        try:
            a = Subspace.span_units(g.dim, [idx[s.strip()] for s in args.ideal.split(",")])
        except KeyError as exc:
            raise InputError(f"--ideal: unknown basis element {exc}") from exc
    else:
        a = g.center()
    if not g.is_ideal(a):
        raise InputError("--ideal must name an ideal")
    D = args.degree
    ok, rep = perp_partials_in_image(g, lam, a, D)
    out = {"ok": ok, "s": rep["s"], "u": [rat_list(u) for u in rep["u"]],
           "y": [rat_list(y) for y in rep["y"]], "in_image": rep["in_image"],
           "degree": D}
    lines = [f"a = {fmt_space(g, a)}, s = {rep['s']}"]
    for u, y, t, f in zip(rep["u"], rep["y"], rep["targets"], rep["in_image"]):
        lines.append(f"  u = {fmt_vec(g, u)}, y = {fmt_vec(g, y)}: {t} in image: {f}")
    lines.append(f"partials in image of U(a)_<={D}: {ok}")
    if not ok:
        raise Violation((out, lines))
    return out, lines


def cmd_catalog(g, lam, args):
    entries = []
    lines = []
    for name, (_build, form, desc) in catalog.CATALOG.items():
        h, mu = catalog.load(name)
        entries.append({"name": name, "description": desc, "algebra": algebra_to_doc(h, mu)})
        lines.append(f"{name:10s} dim {h.dim}  {desc}")
    return {"algebras": entries}, lines


COMMANDS = {
    "check": cmd_check, "polarize": cmd_polarize, "reduce": cmd_reduce, "rho": cmd_rho,
    "kernel": cmd_kernel, "oracle": cmd_oracle, "orbit": cmd_orbit, "compare": cmd_compare,
    "special": cmd_special, "control": cmd_control, "perp": cmd_perp, "catalog": cmd_catalog,
}
NEEDS_ALGEBRA = set(COMMANDS) - {"catalog", "oracle"}


def _default_degree():
    raw = os.environ.get(DEGREE_ENV)
    if raw is None:
        return 3
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{DEGREE_ENV} must be an integer, got {raw!r}")


def build_parser():
    ap = argparse.ArgumentParser(prog="affdix", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--file", help="algebra JSON file")
        sp.add_argument("--algebra", help="bundled catalog algebra instead of --file")
        sp.add_argument("--lambda", dest="lam", help="linear form, comma-separated rationals")
        sp.add_argument("--degree", type=int, default=None, help="truncation degree D (default 3)")
        sp.add_argument("--level", type=int, default=0, help="deformation level n (default 0)")
        sp.add_argument("--lambda2", help="second linear form for compare")
        sp.add_argument("--u", help="vector u for orbit")
        sp.add_argument("--ideal", help="ideal for perp, as comma-separated basis names")
        sp.add_argument("--max-degree", type=int, default=5, help="monomial bound for oracle")
        sp.add_argument("--random", type=int, default=0, help="extra random algebras for oracle")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
    return ap


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    status, out, lines = 0, None, []
    try:
        if args.degree is None:
            args.degree = _default_degree()
        if args.degree < 1:
            raise InputError("--degree must be at least 1")
        if args.level < 0:
            raise InputError("--level must be non-negative")
        if args.max_degree < 0:
            raise InputError("--max-degree must be non-negative")
        g = lam = None
        if args.file and args.algebra:
            raise InputError("give either --file or --algebra, not both")
        if args.file:
            g, lam = load_algebra(args.file)
        elif args.algebra:
            try:
                g, lam = catalog.load(args.algebra)
            except KeyError as exc:
                raise InputError(str(exc.args[0])) from exc
        elif args.command in NEEDS_ALGEBRA:
            raise InputError(f"{args.command} needs --file or --algebra")
        if g is not None:
            if args.command != "check":
                g.check()
            if args.level:
                g = g.check().deform(args.level)
            if args.lam is not None:
                lam = parse_vector(args.lam, g.dim, "--lambda")
            if lam is None:
                lam = (0,) * g.dim
            lam = as_form(g, lam)
        out, lines = COMMANDS[args.command](g, lam, args)
    except Violation as v:
        status = 2
        out, lines = v.report
    except InvalidAlgebra as exc:
        status = 2
        out = {"validation": exc.report.as_dict(), "failures": exc.report.failures()}
        lines = ["invalid algebra:"] + ["  " + f for f in exc.report.failures()]
    except (InputError, LieError, FormError, DixmierError, ScalarError) as exc:
        status = 1
        out = {"error": str(exc)}
        lines = []
        print(f"error: {exc}", file=stderr)
    doc = {"schema": SCHEMA, "command": args.command, "status": status, "result": out}
    if args.json:
        print(dumps(doc), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
