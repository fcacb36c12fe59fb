"""JSON algebra files and rational-string serialisation."""

import json
import re

from .lie import LieAlgebra, LieError
from .scalars import ScalarError, fmt_rat, parse_rat

SCHEMA = "affdix-report/1"

_PAIR = re.compile(r"^\s*\[\s*([^,\[\]\s]+)\s*,\s*([^,\[\]\s]+)\s*\]\s*$")


class InputError(ValueError):
    pass


def parse_algebra(text, source="<input>"):
    """Parse an algebra document; returns (LieAlgebra, form or None)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("prime", "dimension", "basis"):
        if key not in doc:
            raise InputError(f"{source}: missing field {key!r}")
    p, d, names = doc["prime"], doc["dimension"], doc["basis"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InputError(f"{source}: dimension must be a positive integer")
    if not isinstance(names, list) or len(names) != d or not all(isinstance(n, str) for n in names):
        raise InputError(f"{source}: basis must list {d} names")
    if len(set(names)) != d:
        raise InputError(f"{source}: basis names must be distinct")
    index = {n: i for i, n in enumerate(names)}
    brackets = {}
    for key, image in (doc.get("brackets") or {}).items():
        m = _PAIR.match(key)
        if not m:
            raise InputError(f"{source}: brackets[{key!r}]: expected \"[x,y]\"")
        a, b = m.groups()
        for nm in (a, b):
            if nm not in index:
                raise InputError(f"{source}: brackets[{key!r}]: unknown basis element {nm!r}")
        if not isinstance(image, dict):
            raise InputError(f"{source}: brackets[{key!r}] must map names to rationals")
        vec = {}
        for nm, val in image.items():
            if nm not in index:
                raise InputError(f"{source}: brackets[{key!r}]: unknown basis element {nm!r}")
            try:
                vec[index[nm]] = parse_rat(val)
            except ScalarError as exc:
                raise InputError(f"{source}: brackets[{key!r}][{nm!r}]: {exc}") from exc
        brackets[(index[a], index[b])] = vec
    try:
        g = LieAlgebra.from_brackets(d, brackets, p, names)
    except (LieError, ScalarError) as exc:
        raise InputError(f"{source}: {exc}") from exc
    lam = None
    if doc.get("lambda") is not None:
        lam_doc = doc["lambda"]
        if not isinstance(lam_doc, dict):
            raise InputError(f"{source}: lambda must map names to rationals")
        lam = [parse_rat(0)] * d
        for nm, val in lam_doc.items():
            if nm not in index:
                raise InputError(f"{source}: lambda: unknown basis element {nm!r}")
            try:
                lam[index[nm]] = parse_rat(val)
            except ScalarError as exc:
                raise InputError(f"{source}: lambda[{nm!r}]: {exc}") from exc
        lam = tuple(lam)
    return g, lam


def load_algebra(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return parse_algebra(text, str(path))


def algebra_to_doc(g, lam=None):
    doc = {
        "prime": g.prime,
        "dimension": g.dim,
        "basis": list(g.names),
        "brackets": {
            f"[{g.names[i]},{g.names[j]}]": {g.names[k]: fmt_rat(a) for k, a in enumerate(v) if a}
            for i, j, v in g.nonzero_brackets()
        },
    }
    if lam is not None:
        doc["lambda"] = {g.names[i]: fmt_rat(a) for i, a in enumerate(lam) if a}
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True)


def rat_list(v):
    return [fmt_rat(a) for a in v]


def parse_vector(text, d, what="vector"):
    parts = [s for s in text.split(",")]
    if len(parts) != d:
        raise InputError(f"{what} needs {d} comma-separated rationals, got {len(parts)}")
    try:
        return tuple(parse_rat(s) for s in parts)
    except ScalarError as exc:
        raise InputError(f"{what}: {exc}") from exc
