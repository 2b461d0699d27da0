"""JSON encoding of the exact types.

Rationals are encoded as ``[numerator, denominator]`` pairs so round-trips
are lossless; every encoder sorts keys through :func:`canonical_json`, which
makes digests and CLI output byte-stable for fixed inputs.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .arrangements import Configuration, WeightVector
from .binforms import BinaryForm
from .exactgeom import LinearSubspace, Projectivity, ProjPoint
from .rnc import ParamCurve, RationalCurve, is_rnc


def enc_fraction(x) -> list[int]:
    f = Fraction(x)
    return [f.numerator, f.denominator]


def dec_fraction(v) -> Fraction:
    return Fraction(int(v[0]), int(v[1]))


def enc_point(p: ProjPoint) -> dict:
    return {"ambient_dim": p.n, "coords": [enc_fraction(c) for c in p.coords]}


def dec_point(d) -> ProjPoint:
    return ProjPoint(int(d["ambient_dim"]), tuple(dec_fraction(c) for c in d["coords"]))


def enc_subspace(s: LinearSubspace) -> dict:
    return {
        "ambient_dim": s.n,
        "dim": s.dim,
        "basis": [[enc_fraction(x) for x in row] for row in s.basis],
    }


def dec_subspace(d) -> LinearSubspace:
    n = int(d["ambient_dim"])
    rows = [[dec_fraction(x) for x in row] for row in d["basis"]]
    return LinearSubspace.from_rows(n, rows)


def enc_curve(c: ParamCurve) -> dict:
    return {
        "ambient_dim": c.ambient,
        "degree": c.degree,
        "coefficients": [[enc_fraction(x) for x in f.coeffs] for f in c.forms],
    }


def dec_curve(d) -> ParamCurve:
    n = int(d["ambient_dim"])
    deg = int(d["degree"])
    forms = tuple(BinaryForm(deg, tuple(dec_fraction(x) for x in row)) for row in d["coefficients"])
    candidate = ParamCurve(n, forms)
    if is_rnc(candidate):
        return RationalCurve(n, forms)
    return candidate


def enc_config(cfg: Configuration) -> dict:
    return {
        "ambient_dim": cfg.n,
        "components": [
            {"dim": s.dim, "mult": m, "basis": [[enc_fraction(x) for x in row] for row in s.basis]}
            for s, m in cfg.components
        ],
    }


def dec_config(d) -> Configuration:
    n = int(d["ambient_dim"])
    comps = []
    for c in d["components"]:
        rows = [[dec_fraction(x) for x in row] for row in c["basis"]]
        comps.append((LinearSubspace.from_rows(n, rows), int(c.get("mult", 1))))
    return Configuration(n, tuple(comps))


def enc_projectivity(g: Projectivity) -> dict:
    return {"matrix": [[enc_fraction(x) for x in row] for row in g.matrix]}


def enc_weights(w: WeightVector) -> dict:
    return {"ambient_dim": w.n, "counts": list(w.counts)}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    """Short stable fingerprint of a JSON-encodable object."""
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]
